/** Wire types for the debugger remote protocol (newline-delimited JSON
 *  over TCP, or one JSON object per WebSocket text message).  Every reply
 *  carries `ok` and echoes the request's `seq`. */

export interface Request {
  cmd: string;
  seq?: number;
  [key: string]: unknown;
}

export interface RegsSnapshot {
  pc: string;
  acc: string;
  p: string;
  t: string;
  arp: number;
  arb: number;
  dp: string;
  ar: string[];
  st0: string;
  st1: string;
  imr: string;
  cycles: number;
  stack: string[];
}

export interface Reply {
  ok: boolean;
  seq?: number;
  err?: string;
  regs?: RegsSnapshot;
  running?: boolean;
  last_stop?: string | null;
  words?: number[];
  addr?: number;
  lines?: string[];
  samples?: number[];
  bps?: { id: number; addr: number; enabled: boolean }[];
  global?: boolean;
  id?: number;
  info?: string;
  steps?: number;
  cycles?: number;
}

/** A request/reply channel.  Implementations serialize writes; replies are
 *  matched by `seq`, so pipelining is safe. */
export interface Transport {
  request(req: Request): Promise<Reply>;
  close(): void;
}
