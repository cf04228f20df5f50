/** Front-panel state and the action dispatcher.
 *
 *  Panel state is a pure function of protocol replies: every field below
 *  is copied from the last consistent reply, never computed by local
 *  simulation.  One request is in flight at a time per session; during a
 *  free run the panel polls registers and the DAC tail on a fixed
 *  interval (the protocol is request/reply, there is no server push).
 */

import type { RegsSnapshot, Reply, Transport } from "./protocol.js";

export type Space = "P" | "D";

export interface MemoryView {
  space: Space;
  start: number;
  words: number[];
}

export interface DisasmView {
  start: number;
  lines: string[];
}

export interface BreakpointRow {
  id: number;
  addr: number;
  enabled: boolean;
}

export interface PanelState {
  connected: boolean;
  lastError: string | null;
  regs: RegsSnapshot | null;
  running: boolean;
  lastStop: string | null;
  memory: MemoryView;
  disasm: DisasmView;
  breakpoints: BreakpointRow[];
  bpGlobal: boolean;
  waveform: number[];
}

export type Action =
  | { kind: "step"; n?: number }
  | { kind: "run"; addr?: number; resume?: boolean }
  | { kind: "stop" }
  | { kind: "reset" }
  | { kind: "set_bp"; addr: number }
  | { kind: "clear_bp"; id: number | "*" }
  | { kind: "toggle_bp"; id: number; enabled: boolean }
  | { kind: "bp_global"; on: boolean }
  | { kind: "edit_reg"; name: string; value: number }
  | { kind: "edit_mem"; space: Space; addr: number; value: number }
  | { kind: "set_view"; space?: Space; start?: number; disasmStart?: number }
  | { kind: "load"; path: string };

export const MEM_WINDOW_WORDS = 64;
export const DISASM_LINES = 16;
export const RUN_POLL_MS = 100;

export function initialState(): PanelState {
  return {
    connected: false,
    lastError: null,
    regs: null,
    running: false,
    lastStop: null,
    memory: { space: "P", start: 0, words: [] },
    disasm: { start: 0, lines: [] },
    breakpoints: [],
    bpGlobal: true,
    waveform: [],
  };
}

export class PanelSession {
  state: PanelState = initialState();
  onUpdate: (s: PanelState) => void = () => {};
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private chain: Promise<unknown> = Promise.resolve();

  constructor(private transport: Transport) {}

  /** Serialize all requests: one in flight at a time per session. */
  private send(req: Record<string, unknown>): Promise<Reply> {
    const next = this.chain.then(() =>
      this.transport.request(req as { cmd: string }),
    );
    this.chain = next.catch(() => undefined);
    return next;
  }

  private applyStatus(reply: Reply): void {
    if (reply.regs) this.state.regs = reply.regs;
    if (reply.running !== undefined) this.state.running = reply.running;
    if (reply.last_stop !== undefined) this.state.lastStop = reply.last_stop;
  }

  private fail(err: string): PanelState {
    this.state.lastError = err; // toast text; machine state untouched
    this.onUpdate(this.state);
    return this.state;
  }

  async connect(): Promise<PanelState> {
    const reply = await this.send({ cmd: "regs" });
    if (!reply.ok) return this.fail(reply.err ?? "handshake failed");
    this.state.connected = true;
    this.state.lastError = null;
    this.applyStatus(reply);
    await this.refreshViews();
    this.onUpdate(this.state);
    return this.state;
  }

  disconnected(): void {
    this.state.connected = false;
    this.stopPolling();
    this.onUpdate(this.state);
  }

  /** Re-read everything the panel renders from the machine. */
  async refreshViews(): Promise<PanelState> {
    const mem = await this.send({
      cmd: "readmem",
      space: this.state.memory.space,
      addr: this.state.memory.start,
      count: MEM_WINDOW_WORDS,
    });
    if (mem.ok && mem.words) this.state.memory.words = mem.words;
    const dis = await this.send({
      cmd: "disasm",
      addr: this.state.disasm.start,
      count: DISASM_LINES,
    });
    if (dis.ok && dis.lines) this.state.disasm.lines = dis.lines;
    const bps = await this.send({ cmd: "bps" });
    if (bps.ok && bps.bps) {
      this.state.breakpoints = bps.bps;
      this.state.bpGlobal = bps.global ?? true;
    }
    const dac = await this.send({ cmd: "dump_dac", count: 4096 });
    if (dac.ok && dac.samples) this.state.waveform = dac.samples;
    this.onUpdate(this.state);
    return this.state;
  }

  /** One poll tick while running: registers plus the DAC tail. */
  async pollOnce(): Promise<PanelState> {
    const regs = await this.send({ cmd: "regs" });
    if (regs.ok) this.applyStatus(regs);
    const dac = await this.send({ cmd: "dump_dac", count: 1024 });
    if (dac.ok && dac.samples) this.state.waveform = dac.samples;
    if (!this.state.running) {
      this.stopPolling();
      await this.refreshViews();
    }
    this.onUpdate(this.state);
    return this.state;
  }

  private startPolling(): void {
    if (this.pollTimer === null) {
      this.pollTimer = setInterval(() => void this.pollOnce(), RUN_POLL_MS);
    }
  }

  private stopPolling(): void {
    if (this.pollTimer !== null) {
      clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
  }

  async dispatch(action: Action): Promise<PanelState> {
    let reply: Reply;
    switch (action.kind) {
      case "step":
        reply = await this.send({ cmd: "step", n: action.n ?? 1 });
        break;
      case "run": {
        // the run reply arrives when the machine stops; poll meanwhile
        this.state.running = true;
        this.startPolling();
        const req: Record<string, unknown> = { cmd: "run" };
        if (action.addr !== undefined) req.addr = action.addr;
        if (action.resume) req.resume = true;
        reply = await this.send(req);
        this.state.running = false;
        this.stopPolling();
        break;
      }
      case "stop":
        reply = await this.send({ cmd: "stop" });
        break;
      case "reset":
        reply = await this.send({ cmd: "reset" });
        break;
      case "set_bp":
        reply = await this.send({ cmd: "bp_set", addr: action.addr });
        break;
      case "clear_bp":
        reply = await this.send({ cmd: "bp_clear", id: action.id });
        break;
      case "toggle_bp":
        reply = await this.send({
          cmd: action.enabled ? "bp_enable" : "bp_disable",
          id: action.id,
        });
        break;
      case "bp_global":
        reply = await this.send({ cmd: "bp_global", on: action.on });
        break;
      case "edit_reg":
        reply = await this.send({
          cmd: "writereg",
          name: action.name,
          value: action.value,
        });
        break;
      case "edit_mem":
        reply = await this.send({
          cmd: "writemem",
          space: action.space,
          addr: action.addr,
          words: [action.value],
        });
        break;
      case "set_view":
        if (action.space !== undefined) this.state.memory.space = action.space;
        if (action.start !== undefined) this.state.memory.start = action.start;
        if (action.disasmStart !== undefined)
          this.state.disasm.start = action.disasmStart;
        return this.refreshViews();
      case "load":
        reply = await this.send({ cmd: "load", path: action.path });
        break;
    }
    if (!reply.ok) return this.fail(reply.err ?? "request failed");
    this.state.lastError = null;
    this.applyStatus(reply);
    return this.refreshViews();
  }
}

/** Hex rows for the memory view: `AAAA  WWWW ... (8 per row)`. */
export function formatMemoryRows(view: MemoryView): string[] {
  const rows: string[] = [];
  for (let i = 0; i < view.words.length; i += 8) {
    const addr = (view.start + i) & 0xffff;
    const cells = view.words
      .slice(i, i + 8)
      .map((w) => w.toString(16).toUpperCase().padStart(4, "0"))
      .join(" ");
    rows.push(`${addr.toString(16).toUpperCase().padStart(4, "0")}  ${cells}`);
  }
  return rows;
}

/** Scale DAC codes (-2048..2047) into polyline points for a w*h canvas. */
export function waveformPoints(
  samples: number[],
  width: number,
  height: number,
): [number, number][] {
  if (samples.length === 0) return [];
  const n = samples.length;
  return samples.map((code, i) => {
    const x = n === 1 ? 0 : (i / (n - 1)) * (width - 1);
    const y = ((2047 - code) / 4095) * (height - 1);
    return [x, y];
  });
}
