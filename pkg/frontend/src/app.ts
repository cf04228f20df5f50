/** Browser entry point: wires the panel session to the DOM. */

import {
  PanelSession,
  PanelState,
  formatMemoryRows,
  waveformPoints,
} from "./panel.js";
import { WebSocketTransport } from "./transport.js";

const $ = (id: string) => document.getElementById(id)!;

function wsUrl(): string {
  const proto = location.protocol === "https:" ? "wss" : "ws";
  return `${proto}://${location.host}/ws`;
}

function renderRegs(state: PanelState): void {
  const r = state.regs;
  if (!r) return;
  $("reg-pc").textContent = r.pc;
  $("reg-acc").textContent = r.acc;
  $("reg-p").textContent = r.p;
  $("reg-t").textContent = r.t;
  $("reg-arp").textContent = String(r.arp);
  $("reg-dp").textContent = r.dp;
  $("reg-st0").textContent = r.st0;
  $("reg-st1").textContent = r.st1;
  $("reg-imr").textContent = r.imr;
  $("reg-cyc").textContent = String(r.cycles);
  $("reg-ar").textContent = r.ar
    .map((v, i) => `AR${i}=${v}`)
    .join("  ");
  $("reg-stack").textContent = r.stack
    .map((v, i) => `S${i}=${v}`)
    .join("  ");
}

function renderScope(state: PanelState): void {
  const canvas = $("scope") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  ctx.fillStyle = "#081408";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#2b6";
  ctx.beginPath();
  const pts = waveformPoints(state.waveform, canvas.width, canvas.height);
  pts.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
  ctx.stroke();
}

function render(state: PanelState): void {
  $("status").textContent = state.connected
    ? state.running
      ? "running"
      : `stopped${state.lastStop ? ` (${state.lastStop})` : ""}`
    : "disconnected";
  $("status").className = state.connected ? "ok" : "bad";
  $("toast").textContent = state.lastError ?? "";
  renderRegs(state);
  $("memory").textContent = formatMemoryRows(state.memory).join("\n");
  $("disasm").textContent = state.disasm.lines.join("\n");
  $("bps").textContent = state.breakpoints
    .map(
      (b) =>
        `#${b.id} @ ${b.addr.toString(16).toUpperCase().padStart(4, "0")} ` +
        (b.enabled ? "on" : "off"),
    )
    .join("\n");
  renderScope(state);
}

function hexInput(id: string): number {
  return parseInt(($(id) as HTMLInputElement).value || "0", 16) & 0xffff;
}

async function boot(retryMs = 1000): Promise<void> {
  let transport: WebSocketTransport;
  try {
    transport = await WebSocketTransport.connect(wsUrl());
  } catch {
    $("status").textContent = "disconnected (retrying)";
    $("status").className = "bad";
    setTimeout(() => void boot(Math.min(retryMs * 2, 10000)), retryMs);
    return;
  }
  const session = new PanelSession(transport);
  session.onUpdate = render;
  transport.onClose(() => {
    session.disconnected();
    setTimeout(() => void boot(1000), 1000);
  });
  await session.connect();

  $("btn-step").onclick = () => void session.dispatch({ kind: "step" });
  $("btn-run").onclick = () => void session.dispatch({ kind: "run" });
  $("btn-resume").onclick = () =>
    void session.dispatch({ kind: "run", resume: true });
  $("btn-stop").onclick = () => void session.dispatch({ kind: "stop" });
  $("btn-reset").onclick = () => void session.dispatch({ kind: "reset" });
  $("btn-bp").onclick = () =>
    void session.dispatch({ kind: "set_bp", addr: hexInput("bp-addr") });
  $("btn-bp-clear").onclick = () =>
    void session.dispatch({ kind: "clear_bp", id: "*" });
  $("btn-reg").onclick = () =>
    void session.dispatch({
      kind: "edit_reg",
      name: ($("reg-name") as HTMLInputElement).value.toUpperCase(),
      value: hexInput("reg-value"),
    });
  $("btn-mem").onclick = () =>
    void session.dispatch({
      kind: "edit_mem",
      space: ($("mem-space") as HTMLSelectElement).value as "P" | "D",
      addr: hexInput("mem-addr"),
      value: hexInput("mem-value"),
    });
  $("btn-view").onclick = () =>
    void session.dispatch({
      kind: "set_view",
      space: ($("mem-space") as HTMLSelectElement).value as "P" | "D",
      start: hexInput("mem-addr"),
      disasmStart: hexInput("dis-addr"),
    });
  $("btn-load").onclick = () =>
    void session.dispatch({
      kind: "load",
      path: ($("load-path") as HTMLInputElement).value,
    });
}

void boot();
