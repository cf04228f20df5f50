/** Differential acceptance: a scripted sequence of panel actions leaves
 *  the machine in a state identical to the equivalent console script,
 *  and the panel renders register values equal to protocol replies.
 *
 *  Spawns the python CLI twice: once serving the remote protocol for the
 *  panel, once replaying the console script; then compares the register
 *  block and memory dumps word for word.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { PanelSession } from "../src/panel.js";
import { TcpTransport } from "./tcpTransport.js";

const PY = process.env.PYTHON ?? "python3";
const DEMO_SRC = "LACK 18\nSACL 20h\nB $\n";

const CONSOLE_SCRIPT = [
  "L demo.dpx",
  "BP 0002",
  "G 0000",
  "T 1",
  "R PC 0100",
  "S D 0040 BEEF",
  "R",
  "D P 0000 8",
  "D D 0040 8",
  "Q",
].join("\n");

interface ConsoleState {
  pc: string;
  acc: string;
  p: string;
  t: string;
  arp: number;
  dp: string;
  ar: string[];
  st0: string;
  st1: string;
  cycles: number;
  progWords: number[];
  dataWords: number[];
}

function parseTranscript(text: string): ConsoleState {
  const lines = text.split("\n");
  // the R block printed after "> R" (the bare R command)
  const rIdx = lines.lastIndexOf("> R");
  const l1 = lines[rIdx + 1];
  const l2 = lines[rIdx + 2];
  const m1 = /PC=(\w+) ACC=(\w+) P=(\w+) T=(\w+) ARP=(\d) DP=(\w+)/.exec(l1)!;
  const ars = [...l2.matchAll(/AR\d=(\w{4})/g)].map((m) => m[1]);
  const m2 = /ST0=(\w{4}) ST1=(\w{4}) CYC=(\d+)/.exec(l2)!;
  const words = (after: string): number[] => {
    const idx = lines.findIndex((l) => l.startsWith(after));
    return lines[idx + 1]
      .split(/\s+/)
      .slice(1)
      .filter((t) => /^[0-9A-F]{4}$/.test(t))
      .map((t) => parseInt(t, 16));
  };
  return {
    pc: m1[1],
    acc: m1[2],
    p: m1[3],
    t: m1[4],
    arp: Number(m1[5]),
    dp: m1[6],
    ar: ars,
    st0: m2[1],
    st1: m2[2],
    cycles: Number(m2[3]),
    progWords: words("> D P 0000 8"),
    dataWords: words("> D D 0040 8"),
  };
}

describe("panel vs console differential", () => {
  let dir: string;
  let server: ChildProcess;
  let port = 0;

  beforeAll(async () => {
    dir = mkdtempSync(join(tmpdir(), "dspx25-panel-"));
    writeFileSync(join(dir, "demo.asm"), DEMO_SRC);
    const asm = spawnSync(
      PY,
      ["-m", "dspx25.cli", "asm", "demo.asm", "-o", "demo.dpx"],
      { cwd: dir },
    );
    expect(asm.status).toBe(0);

    server = spawn(
      PY,
      ["-m", "dspx25.cli", "debug", "--serve", "tcp://127.0.0.1:0"],
      { cwd: dir, stdio: ["ignore", "pipe", "inherit"] },
    );
    port = await new Promise<number>((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("server start timeout")), 15000);
      let buf = "";
      server.stdout!.on("data", (chunk) => {
        buf += chunk.toString();
        const m = /serving tcp:\/\/[\d.]+:(\d+)/.exec(buf);
        if (m) {
          clearTimeout(timer);
          resolve(Number(m[1]));
        }
      });
      server.on("exit", () => reject(new Error("server exited early")));
    });
  }, 30000);

  afterAll(() => {
    server?.kill();
  });

  it("identical machine state after equivalent action sequences", async () => {
    // console twin first (separate process, same inputs)
    writeFileSync(join(dir, "script.txt"), CONSOLE_SCRIPT + "\n");
    const consoleRun = spawnSync(
      PY,
      ["-m", "dspx25.cli", "debug", "--script", "script.txt"],
      { cwd: dir, encoding: "utf8" },
    );
    expect(consoleRun.status).toBe(0);
    const want = parseTranscript(consoleRun.stdout);

    // panel side: the equivalent action sequence over the protocol
    const transport = await TcpTransport.connect("127.0.0.1", port);
    const session = new PanelSession(transport);
    const st0 = await session.connect();
    expect(st0.connected).toBe(true);
    expect(st0.regs?.pc).toBe("0000"); // fresh machine after reset

    await session.dispatch({ kind: "load", path: "demo.dpx" });
    await session.dispatch({ kind: "set_bp", addr: 0x0002 });
    const afterRun = await session.dispatch({ kind: "run", addr: 0 });
    expect(afterRun.lastStop).toBe("BREAKPOINT");
    expect(afterRun.regs?.pc).toBe("0002");
    await session.dispatch({ kind: "step", n: 1 });
    await session.dispatch({ kind: "edit_reg", name: "PC", value: 0x0100 });
    await session.dispatch({
      kind: "edit_mem",
      space: "D",
      addr: 0x0040,
      value: 0xbeef,
    });

    // the panel renders exactly what the last protocol reply said
    const finalReply = await transport.request({ cmd: "regs" });
    expect(finalReply.ok).toBe(true);
    expect(session.state.regs).toEqual(finalReply.regs);

    const got = session.state.regs!;
    expect(got.pc).toBe(want.pc);
    expect(got.acc).toBe(want.acc);
    expect(got.p).toBe(want.p);
    expect(got.t).toBe(want.t);
    expect(got.arp).toBe(want.arp);
    expect(got.dp).toBe(want.dp);
    expect(got.ar).toEqual(want.ar);
    expect(got.st0).toBe(want.st0);
    expect(got.st1).toBe(want.st1);
    expect(got.cycles).toBe(want.cycles);

    const prog = await transport.request({
      cmd: "readmem",
      space: "P",
      addr: 0,
      count: 8,
    });
    const data = await transport.request({
      cmd: "readmem",
      space: "D",
      addr: 0x40,
      count: 8,
    });
    expect(prog.words).toEqual(want.progWords);
    expect(data.words).toEqual(want.dataWords);

    transport.close();
  }, 30000);
});
