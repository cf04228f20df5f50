"""DEPC25-style interactive debugger: command interpreter over a board.

Command set (addresses, words, counts, ports and register values in hex;
step counts and breakpoint ids in decimal):

    D P|D addr [count]     memory display, 8 words per row (default 64)
    U addr [count]         unassemble program memory (default 16 instructions)
    M P|D src dst count    memory move (overlap-safe)
    S P|D addr w [w...]    memory substitution, ascending
    F P|D addr count w     constant fill
    I port                 input from a port (prints the word)
    O port w               output a word to a port
    L file [P|D]           load a DPX25 file (optional space override)
    R                      register block plus stack/IMR line
    R reg value            set PC ACC P T AR0..AR7 ARP DP ST0 ST1 IMR
    BP addr                set breakpoint (dedupes; returns id)
    BC id|*                clear breakpoint(s)
    BE id / BD id          enable / disable one breakpoint
    BG ON|OFF              global breakpoint toggle
    G [addr]               run (breakpoints honored when globally enabled)
    T [n]                  single-step n instructions (default 1)
    X                      resume without re-triggering the current breakpoint
    RS                     DSP reset (cycle counter survives)
    Q                      end session

Errors: `?syntax` (malformed command), `?range` (bad address/count/id),
`?nofile` (load failure).  Errors never mutate state.

The register block print format is normative for transcript tests:

    PC=hhhh ACC=hhhhhhhh P=hhhhhhhh T=hhhh ARP=n DP=hhh
    AR0=hhhh ... AR7=hhhh ST0=hhhh ST1=hhhh CYC=d
"""

from __future__ import annotations

import queue
from dataclasses import dataclass
from typing import Optional

from .. import isa
from ..asm.disasm import disassemble
from ..board import (HALT_BREAKPOINT, HALT_CYCLE_LIMIT, HALT_IDLE,
                     HALT_ILLEGAL, HALT_INTERRUPTED, HALT_TRAP, Board)
from ..objfmt import read_object

DEFAULT_CYCLE_GUARD = 10_000_000


@dataclass
class Breakpoint:
    id: int
    address: int
    enabled: bool = True


class CommandError(Exception):
    def __init__(self, kind: str):
        self.kind = kind            # "syntax" | "range" | "nofile"
        super().__init__(f"?{kind}")


class Session:
    def __init__(self, board: Optional[Board] = None,
                 cycle_guard: int = DEFAULT_CYCLE_GUARD):
        self.board = board if board is not None else Board()
        self.breakpoints: list[Breakpoint] = []
        self.bp_global = True
        self.last_stop: Optional[str] = None
        self.last_stop_bp: Optional[int] = None
        self.cycle_guard = cycle_guard
        self.finished = False
        self.mailbox: "queue.Queue" = queue.Queue()
        self.running = False         # true while G/X/remote run is stepping
        self._stop_requested = False

    # ------------------------------------------------------------------
    # formatting

    def reg_block(self) -> str:
        c = self.board.cpu
        l1 = (f"PC={c.pc:04X} ACC={c.acc:08X} P={c.preg:08X} "
              f"T={c.treg:04X} ARP={c.arp} DP={c.dp:03X}")
        ars = " ".join(f"AR{i}={c.ar[i]:04X}" for i in range(8))
        l2 = f"{ars} ST0={c.st0():04X} ST1={c.st1():04X} CYC={c.cycles}"
        return l1 + "\n" + l2

    def _stack_line(self) -> str:
        c = self.board.cpu
        s = " ".join(f"S{i}={v:04X}" for i, v in enumerate(c.stack))
        return f"{s} IMR={c.imr:02X}"

    def _disasm_line(self, addr: int) -> str:
        text, width = disassemble(self.board.prog, addr)
        w1 = f"{self.board.prog[addr & 0xFFFF]:04X}"
        w2 = f"{self.board.prog[(addr + 1) & 0xFFFF]:04X}" if width == 2 else "    "
        return f"{addr:04X}  {w1} {w2}  {text}"

    # ------------------------------------------------------------------
    # numeric parsing (hex by default)

    @staticmethod
    def _hex(tok: str, limit: int = 0xFFFF) -> int:
        try:
            v = int(tok, 16)
        except ValueError:
            raise CommandError("syntax") from None
        if not 0 <= v <= limit:
            raise CommandError("range")
        return v

    @staticmethod
    def _dec(tok: str) -> int:
        try:
            return int(tok, 10)
        except ValueError:
            raise CommandError("syntax") from None

    def _space(self, tok: str) -> list[int]:
        t = tok.upper()
        if t == "P":
            return self.board.prog
        if t == "D":
            return self.board.data
        raise CommandError("syntax")

    # ------------------------------------------------------------------
    # command execution

    def execute_command(self, line: str) -> str:
        """Run one console command; returns its output text (no prompt)."""
        toks = line.split()
        if not toks:
            return ""
        cmd = toks[0].upper()
        args = toks[1:]
        try:
            handler = getattr(self, f"_cmd_{cmd}", None)
            if handler is None:
                raise CommandError("syntax")
            out = handler(args)
            return out if out is not None else ""
        except CommandError as e:
            return f"?{e.kind}"
        except Exception:
            # the interpreter is total: anything unexpected is a syntax error
            return "?syntax"

    # -- memory -----------------------------------------------------------

    def _cmd_D(self, args) -> str:
        if not 2 <= len(args) <= 3:
            raise CommandError("syntax")
        mem = self._space(args[0])
        addr = self._hex(args[1])
        count = self._hex(args[2]) if len(args) == 3 else 64
        if count < 1 or addr + count > 0x10000:
            raise CommandError("range")
        rows = []
        for base in range(addr, addr + count, 8):
            words = mem[base:min(base + 8, addr + count)]
            g1 = " ".join(f"{w:04X}" for w in words[:4])
            g2 = " ".join(f"{w:04X}" for w in words[4:])
            rows.append(f"{base:04X}  {g1}" + (f"  {g2}" if g2 else ""))
        return "\n".join(rows)

    def _cmd_U(self, args) -> str:
        if not 1 <= len(args) <= 2:
            raise CommandError("syntax")
        addr = self._hex(args[0])
        count = self._hex(args[1]) if len(args) == 2 else 16
        if count < 1:
            raise CommandError("range")
        rows = []
        for _ in range(count):
            rows.append(self._disasm_line(addr))
            _, width = disassemble(self.board.prog, addr)
            addr = (addr + width) & 0xFFFF
        return "\n".join(rows)

    def _cmd_M(self, args) -> str:
        if len(args) != 4:
            raise CommandError("syntax")
        mem = self._space(args[0])
        src = self._hex(args[1])
        dst = self._hex(args[2])
        count = self._hex(args[3])
        if count < 1 or src + count > 0x10000 or dst + count > 0x10000:
            raise CommandError("range")
        mem[dst:dst + count] = mem[src:src + count]    # buffered: overlap-safe
        return ""

    def _cmd_S(self, args) -> str:
        if len(args) < 3:
            raise CommandError("syntax")
        mem = self._space(args[0])
        addr = self._hex(args[1])
        words = [self._hex(t) for t in args[2:]]
        if addr + len(words) > 0x10000:
            raise CommandError("range")
        mem[addr:addr + len(words)] = words
        return ""

    def _cmd_F(self, args) -> str:
        if len(args) != 4:
            raise CommandError("syntax")
        mem = self._space(args[0])
        addr = self._hex(args[1])
        count = self._hex(args[2])
        word = self._hex(args[3])
        if count < 1 or addr + count > 0x10000:
            raise CommandError("range")
        mem[addr:addr + count] = [word] * count
        return ""

    # -- ports --------------------------------------------------------------

    def _cmd_I(self, args) -> str:
        if len(args) != 1:
            raise CommandError("syntax")
        port = self._hex(args[0], 15)
        return f"{self.board.io_in(port):04X}"

    def _cmd_O(self, args) -> str:
        if len(args) != 2:
            raise CommandError("syntax")
        port = self._hex(args[0], 15)
        self.board.io_out(port, self._hex(args[1]))
        return ""

    # -- load -----------------------------------------------------------------

    def _cmd_L(self, args) -> str:
        if not 1 <= len(args) <= 2:
            raise CommandError("syntax")
        override = None
        if len(args) == 2:
            if args[1].upper() not in ("P", "D"):
                raise CommandError("syntax")
            override = args[1].upper()
        try:
            with open(args[0], "r", encoding="utf-8") as fh:
                img = read_object(fh.read())
        except OSError:
            raise CommandError("nofile") from None
        except Exception:
            raise CommandError("nofile") from None
        if override is not None:
            for rec in img.records:
                rec.space = override
        self.board.load(img)
        return (f"loaded {args[0]}: {img.total_words()} words, "
                f"entry {img.entry:04X}")

    # -- registers ---------------------------------------------------------------

    _REG_SETTERS = {
        "PC": ("pc", 0xFFFF), "ACC": ("acc", 0xFFFFFFFF),
        "P": ("preg", 0xFFFFFFFF), "T": ("treg", 0xFFFF),
        "ARP": ("arp", 7), "DP": ("dp", 0x1FF), "IMR": ("imr", 0x3F),
    }

    def _cmd_R(self, args) -> str:
        if not args:
            return self.reg_block() + "\n" + self._stack_line()
        if len(args) != 2:
            raise CommandError("syntax")
        name = args[0].upper()
        cpu = self.board.cpu
        if name in self._REG_SETTERS:
            attr, limit = self._REG_SETTERS[name]
            setattr(cpu, attr, self._hex(args[1], limit))
        elif name.startswith("AR") and len(name) == 3 and name[2] in "01234567":
            cpu.ar[int(name[2])] = self._hex(args[1])
        elif name == "ST0":
            v = self._hex(args[1])
            cpu.set_st0(v)
            cpu.intm = (v >> 9) & 1       # direct poke loads INTM too
        elif name == "ST1":
            cpu.set_st1(self._hex(args[1]))
        else:
            raise CommandError("syntax")  # S0..S7 are read-only
        return ""

    # -- breakpoints -----------------------------------------------------------

    def add_breakpoint(self, addr: int) -> int:
        for bp in self.breakpoints:
            if bp.address == addr:
                return bp.id
        next_id = max((bp.id for bp in self.breakpoints), default=0) + 1
        self.breakpoints.append(Breakpoint(next_id, addr))
        return next_id

    def _find_bp(self, bp_id: int) -> Breakpoint:
        for bp in self.breakpoints:
            if bp.id == bp_id:
                return bp
        raise CommandError("range")

    def _cmd_BP(self, args) -> str:
        if len(args) != 1:
            raise CommandError("syntax")
        addr = self._hex(args[0])
        return f"breakpoint {self.add_breakpoint(addr)} at {addr:04X}"

    def _cmd_BC(self, args) -> str:
        if len(args) != 1:
            raise CommandError("syntax")
        if args[0] == "*":
            self.breakpoints.clear()
            return ""
        bp = self._find_bp(self._dec(args[0]))
        self.breakpoints.remove(bp)
        return ""

    def _cmd_BE(self, args) -> str:
        if len(args) != 1:
            raise CommandError("syntax")
        self._find_bp(self._dec(args[0])).enabled = True
        return ""

    def _cmd_BD(self, args) -> str:
        if len(args) != 1:
            raise CommandError("syntax")
        self._find_bp(self._dec(args[0])).enabled = False
        return ""

    def _cmd_BG(self, args) -> str:
        if len(args) != 1 or args[0].upper() not in ("ON", "OFF"):
            raise CommandError("syntax")
        self.bp_global = args[0].upper() == "ON"
        return ""

    # -- execution ----------------------------------------------------------------

    def _active_bps(self):
        if not self.bp_global:
            return None
        addrs = {bp.address for bp in self.breakpoints if bp.enabled}
        return addrs or None

    def _bp_id_at(self, addr: int) -> Optional[int]:
        for bp in self.breakpoints:
            if bp.address == addr and bp.enabled:
                return bp.id
        return None

    def _run(self, skip_bp_pc: Optional[int] = None) -> str:
        board = self.board
        self._stop_requested = False
        self.running = True
        try:
            rep = board.run(max_cycles=self.cycle_guard,
                            breakpoints=self._active_bps(),
                            skip_bp_pc=skip_bp_pc, stop_on_trap=True,
                            poll=self._poll_mailbox,
                            stop_flag=lambda: self._stop_requested)
        finally:
            self.running = False
        reason = rep.halt_reason
        self.last_stop = reason
        self.last_stop_bp = None
        if reason == HALT_BREAKPOINT:
            self.last_stop_bp = self._bp_id_at(rep.stop_pc)
            stop = f"STOP: breakpoint {self.last_stop_bp} at {rep.stop_pc:04X}"
        elif reason == HALT_IDLE:
            stop = "STOP: idle"
        elif reason == HALT_CYCLE_LIMIT:
            stop = "STOP: cycle limit"
        elif reason == HALT_ILLEGAL:
            stop = f"STOP: illegal opcode at {rep.stop_pc:04X}"
        elif reason == HALT_TRAP:
            stop = f"STOP: trap at {rep.stop_pc:04X}"
        else:
            stop = "STOP: interrupted"
        return self.reg_block() + "\n" + stop

    def _cmd_G(self, args) -> str:
        if len(args) > 1:
            raise CommandError("syntax")
        if self.board.held:
            raise CommandError("range")
        if args:
            self.board.cpu.pc = self._hex(args[0])
        return self._run()

    def _cmd_X(self, args) -> str:
        if args:
            raise CommandError("syntax")
        if self.board.held:
            raise CommandError("range")
        return self._run(skip_bp_pc=self.board.cpu.pc)

    def _cmd_T(self, args) -> str:
        if len(args) > 1:
            raise CommandError("syntax")
        n = self._dec(args[0]) if args else 1
        if n < 1:
            raise CommandError("range")
        lines = []
        for _ in range(n):
            pc0 = self.board.cpu.pc
            rep = self.board.step()
            if rep.event == isa.EV_INT:
                name = isa.defs.INT_NAMES[rep.int_line]
                lines.append(f"---- interrupt {name} -> {rep.pc_after:04X}")
            elif rep.event == isa.EV_ILLEGAL:
                lines.append(f"{pc0:04X}  {rep.illegal_word:04X}       "
                             "??? illegal opcode")
            else:
                lines.append(self._disasm_line(pc0))
        self.last_stop = "STEP"
        return "\n".join(lines) + "\n" + self.reg_block()

    def _cmd_RS(self, args) -> str:
        if args:
            raise CommandError("syntax")
        self.board.cpu.reset()
        return ""

    def _cmd_Q(self, args) -> str:
        self.finished = True
        return ""

    # ------------------------------------------------------------------
    # remote mailbox (shared with the TCP/WebSocket servers)

    def _poll_mailbox(self):
        while True:
            try:
                req, reply = self.mailbox.get_nowait()
            except queue.Empty:
                return
            reply(self._dispatch_remote(req, during_run=True))

    def serve_loop(self):
        """Headless executor: consume remote requests until shutdown."""
        while not self.finished:
            try:
                req, reply = self.mailbox.get(timeout=0.2)
            except queue.Empty:
                continue
            reply(self._dispatch_remote(req, during_run=False))

    def submit(self, req: dict) -> dict:
        """Thread-safe request entry point used by the transport servers."""
        box: "queue.Queue" = queue.Queue()
        self.mailbox.put((req, box.put))
        return box.get()

    # remote protocol -------------------------------------------------------

    def _regs_dict(self) -> dict:
        c = self.board.cpu
        return {
            "pc": f"{c.pc:04X}", "acc": f"{c.acc:08X}", "p": f"{c.preg:08X}",
            "t": f"{c.treg:04X}", "arp": c.arp, "arb": c.arb,
            "dp": f"{c.dp:03X}", "ar": [f"{v:04X}" for v in c.ar],
            "st0": f"{c.st0():04X}", "st1": f"{c.st1():04X}",
            "imr": f"{c.imr:02X}", "cycles": c.cycles,
            "stack": [f"{v:04X}" for v in c.stack],
        }

    def _dispatch_remote(self, req, during_run: bool) -> dict:
        """Serve one protocol request; echoes any client "seq" tag so
        pipelined clients can match replies arriving out of order."""
        resp = self._dispatch_remote_inner(req, during_run)
        if isinstance(req, dict) and "seq" in req:
            resp["seq"] = req["seq"]
        return resp

    def _dispatch_remote_inner(self, req, during_run: bool) -> dict:
        if not isinstance(req, dict) or "cmd" not in req:
            return {"ok": False, "err": "syntax"}
        cmd = req.get("cmd")
        status = {"running": self.running, "last_stop": self.last_stop}
        try:
            if cmd == "regs":
                return {"ok": True, "regs": self._regs_dict(), **status}
            if cmd == "readmem":
                mem = self._space(str(req["space"]))
                addr = int(req["addr"])
                count = int(req.get("count", 16))
                if not (0 <= addr <= 0xFFFF and 1 <= count <= 4096
                        and addr + count <= 0x10000):
                    return {"ok": False, "err": "range"}
                return {"ok": True, "addr": addr, "words": mem[addr:addr + count]}
            if cmd == "writemem":
                mem = self._space(str(req["space"]))
                addr = int(req["addr"])
                words = [int(w) & 0xFFFF for w in req["words"]]
                if not (0 <= addr <= 0xFFFF and addr + len(words) <= 0x10000):
                    return {"ok": False, "err": "range"}
                mem[addr:addr + len(words)] = words
                return {"ok": True}
            if cmd == "dump_dac":
                count = min(int(req.get("count", 4096)), 4096)
                tail = list(self.board.codec.dac_tail)[-count:]
                return {"ok": True, "samples": tail}
            if cmd == "bps":
                return {"ok": True, "global": self.bp_global,
                        "bps": [{"id": b.id, "addr": b.address,
                                 "enabled": b.enabled}
                                for b in self.breakpoints]}
            if cmd == "stop":
                self._stop_requested = True
                return {"ok": True}
            if during_run:
                return {"ok": False, "err": "busy"}
            if cmd == "step":
                n = int(req.get("n", 1))
                if not 1 <= n <= 10000:
                    return {"ok": False, "err": "range"}
                lines = []
                cycles0 = self.board.cpu.cycles
                for _ in range(n):
                    pc0 = self.board.cpu.pc
                    rep = self.board.step()
                    if rep.event == isa.EV_INT:
                        lines.append(f"---- interrupt -> {rep.pc_after:04X}")
                    else:
                        lines.append(self._disasm_line(pc0))
                self.last_stop = "STEP"
                return {"ok": True, "steps": n,
                        "cycles": self.board.cpu.cycles - cycles0,
                        "lines": lines, "regs": self._regs_dict(),
                        "running": False, "last_stop": self.last_stop}
            if cmd == "run":
                if self.board.held:
                    return {"ok": False, "err": "range"}
                if "addr" in req:
                    self.board.cpu.pc = int(req["addr"]) & 0xFFFF
                skip = self.board.cpu.pc if req.get("resume") else None
                # runs inline; the mailbox is polled between steps, so
                # pipelined reads and "stop" stay responsive meanwhile
                self._run(skip_bp_pc=skip)
                return {"ok": True, "running": False,
                        "last_stop": self.last_stop,
                        "regs": self._regs_dict()}
            if cmd == "reset":
                self.board.cpu.reset()
                return {"ok": True, "regs": self._regs_dict(), **status}
            if cmd == "writereg":
                # same semantics as the console R command
                self._cmd_R([str(req["name"]), f"{int(req['value']):X}"])
                return {"ok": True, "regs": self._regs_dict(), **status}
            if cmd == "bp_set":
                addr = int(req["addr"])
                if not 0 <= addr <= 0xFFFF:
                    return {"ok": False, "err": "range"}
                return {"ok": True, "id": self.add_breakpoint(addr)}
            if cmd == "bp_clear":
                ident = req.get("id", "*")
                if ident == "*":
                    self.breakpoints.clear()
                    return {"ok": True}
                bp = self._find_bp(int(ident))
                self.breakpoints.remove(bp)
                return {"ok": True}
            if cmd == "bp_enable" or cmd == "bp_disable":
                bp = self._find_bp(int(req["id"]))
                bp.enabled = cmd == "bp_enable"
                return {"ok": True}
            if cmd == "bp_global":
                self.bp_global = bool(req.get("on", True))
                return {"ok": True}
            if cmd == "load":
                out = self._cmd_L([str(req["path"])]
                                  + ([req["space"]] if "space" in req else []))
                return {"ok": True, "info": out}
            if cmd == "disasm":
                addr = int(req["addr"]) & 0xFFFF
                count = min(int(req.get("count", 16)), 256)
                lines = []
                for _ in range(count):
                    lines.append(self._disasm_line(addr))
                    _, width = disassemble(self.board.prog, addr)
                    addr = (addr + width) & 0xFFFF
                return {"ok": True, "lines": lines}
            return {"ok": False, "err": "syntax"}
        except CommandError as e:
            return {"ok": False, "err": e.kind}
        except (KeyError, TypeError, ValueError):
            return {"ok": False, "err": "syntax"}


def run_script(session: Session, lines) -> str:
    """Replay commands, producing a transcript (prompt + echo + output)."""
    out = []
    for raw in lines:
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith(";"):
            continue
        out.append(f"> {line}")
        text = session.execute_command(line)
        if text:
            out.append(text)
        if session.finished:
            break
    return "\n".join(out) + "\n"
