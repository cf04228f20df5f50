/** Browser transport: the remote protocol over a WebSocket. */

import type { Reply, Request, Transport } from "./protocol.js";

export class WebSocketTransport implements Transport {
  private seq = 0;
  private pending = new Map<number, (r: Reply) => void>();

  private constructor(private ws: WebSocket) {
    ws.onmessage = (ev) => {
      const reply = JSON.parse(String(ev.data)) as Reply;
      if (reply.seq !== undefined) {
        const resolve = this.pending.get(reply.seq);
        if (resolve) {
          this.pending.delete(reply.seq);
          resolve(reply);
        }
      }
    };
  }

  static connect(url: string, timeoutMs = 4000): Promise<WebSocketTransport> {
    return new Promise((resolve, reject) => {
      const ws = new WebSocket(url);
      const timer = setTimeout(() => {
        ws.close();
        reject(new Error("connect timeout"));
      }, timeoutMs);
      ws.onopen = () => {
        clearTimeout(timer);
        resolve(new WebSocketTransport(ws));
      };
      ws.onerror = () => {
        clearTimeout(timer);
        reject(new Error("connect failed"));
      };
    });
  }

  request(req: Request): Promise<Reply> {
    const seq = ++this.seq;
    const line = JSON.stringify({ ...req, seq });
    return new Promise((resolve, reject) => {
      this.pending.set(seq, resolve);
      try {
        this.ws.send(line);
      } catch (err) {
        this.pending.delete(seq);
        reject(err);
      }
    });
  }

  onClose(handler: () => void): void {
    this.ws.onclose = handler;
  }

  close(): void {
    this.ws.close();
  }
}
