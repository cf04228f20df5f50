"""DSPxx25 coprocessor board: shared 64KW+64KW memory, host window with
8 KB paging, control port, wait states, clock, and the ADDA2 codec.

The host sees DSP memory through a 4096-word window; a 5-bit page-port
latch supplies the high-order address bits: bit 4 selects the space
(0 = program, 1 = data) and bits 3..0 one of sixteen 4KW slices per space.
Host window and control-port accesses are legal at any time, including
while the DSP runs (single memory, per-word atomic interleaving, no
contention penalty modeled).

Control port bits: 0 RESET level (falling edge resets the CPU), 1 HOLD
level (DSP stalled, memory still host-accessible), 2 INT (rising edge
queues INT2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import isa
from .codec import MODE_INTERRUPT, Codec
from .isa import defs

HALT_IDLE = "IDLE"
HALT_CYCLE_LIMIT = "CYCLE_LIMIT"
HALT_BREAKPOINT = "BREAKPOINT"
HALT_ILLEGAL = "ILLEGAL_OPCODE"
HALT_TRAP = "TRAP"
HALT_INTERRUPTED = "INTERRUPTED"


@dataclass
class RunReport:
    cycles_run: int
    samples_processed: int
    halt_reason: str
    steps: int = 0
    stop_pc: Optional[int] = None


class Board:
    def __init__(self, clock_mhz: float = 40.0, wait_states: int = 0,
                 sample_rate: int = 25000):
        if not 0 <= wait_states <= 2:
            raise ValueError("wait states maximum 2")
        if clock_mhz <= 0:
            raise ValueError("clock must be positive")
        self.clock_mhz = clock_mhz
        self.prog = [0] * 0x10000
        self.data = [0] * 0x10000
        self.page = 0
        self.reset_level = False
        self.hold_level = False
        self.int_level = False
        self.codec = Codec(sample_rate=sample_rate, clock_mhz=clock_mhz)
        self.cpu = isa.Cpu(self.prog, self.data, io=self)
        self.cpu.set_wait_states(wait_states)
        self.codec.irq = self.cpu.request_interrupt

    @property
    def wait_states(self) -> int:
        return self.cpu.wait_states

    # -- DSP I/O bus (ADDA2 at ports 0-3, the rest unmapped) -------------

    def io_in(self, port: int) -> int:
        return self.codec.io_in(port) if port < 4 else 0

    def io_out(self, port: int, word: int) -> None:
        if port < 4:
            self.codec.io_out(port, word)

    # -- host window -------------------------------------------------------

    def _window_mem(self):
        mem = self.data if self.page & 0x10 else self.prog
        return mem, (self.page & 0xF) << 12

    def host_window_read(self, word_offset: int) -> int:
        if not 0 <= word_offset < 4096:
            raise ValueError("window offset outside 0..4095")
        mem, base = self._window_mem()
        return mem[base | word_offset]

    def host_window_write(self, word_offset: int, word: int) -> None:
        if not 0 <= word_offset < 4096:
            raise ValueError("window offset outside 0..4095")
        mem, base = self._window_mem()
        mem[base | word_offset] = word & 0xFFFF

    def write_page_port(self, value: int) -> None:
        self.page = value & 0x1F

    def write_control_port(self, bits: int) -> None:
        new_reset = bool(bits & 1)
        new_int = bool(bits & 4)
        if self.reset_level and not new_reset:
            self.cpu.reset()
        if new_int and not self.int_level:
            self.cpu.request_interrupt(defs.INT2)
        self.reset_level = new_reset
        self.hold_level = bool(bits & 2)
        self.int_level = new_int

    # -- loading ------------------------------------------------------------

    def load(self, img) -> None:
        img.load_into(self.prog, self.data)
        self.cpu.pc = img.entry

    # -- stepping ------------------------------------------------------------

    @property
    def held(self) -> bool:
        return self.reset_level or self.hold_level

    def step(self) -> isa.StepReport:
        """One instruction plus codec clocking; no-progress report if held."""
        if self.held:
            return isa.StepReport(None, self.cpu.pc, self.cpu.pc, 0, isa.EV_OK)
        c0 = self.cpu.cycles
        report = isa.step(self.cpu)
        self.codec.tick(self.cpu.cycles - c0)
        return report

    def run(self, max_cycles: Optional[int] = None, *,
            breakpoints=None, skip_bp_pc: Optional[int] = None,
            stop_on_trap: bool = False, poll=None, poll_interval: int = 64,
            stop_flag=None) -> RunReport:
        """Step until a halt condition.

        Autonomous halts: IDLE with no wake-up source, cycle limit, illegal
        opcode.  The debugger additionally passes breakpoints (checked
        before fetch, break-before-execute), a trap stop, a stop flag, and
        a mailbox poll callback invoked between steps.
        """
        if self.held:
            raise RuntimeError("board is held in reset/hold")
        cpu = self.cpu
        codec = self.codec
        start_cycles = cpu.cycles
        start_events = codec.events
        bps = frozenset(breakpoints) if breakpoints else None
        steps = 0
        first = True
        reason = None
        stop_pc = None

        while True:
            if poll is not None and steps % poll_interval == 0:
                poll()
            if stop_flag is not None and stop_flag():
                reason = HALT_INTERRUPTED
                stop_pc = cpu.pc
                break
            if bps is not None and cpu.pc in bps and \
                    not (first and cpu.pc == skip_bp_pc):
                reason = HALT_BREAKPOINT
                stop_pc = cpu.pc
                break
            first = False
            c0 = cpu.cycles
            ev = cpu.exec_next()
            codec.tick(cpu.cycles - c0)
            steps += 1
            if ev == isa.EV_IDLE:
                if not self._idle_wait(max_cycles, start_cycles):
                    reason = HALT_IDLE
                    stop_pc = cpu.pc
                    break
            elif ev == isa.EV_ILLEGAL:
                reason = HALT_ILLEGAL
                stop_pc = cpu.pc
                break
            elif ev == isa.EV_TRAP and stop_on_trap:
                reason = HALT_TRAP
                stop_pc = cpu.pc
                break
            if max_cycles is not None and cpu.cycles - start_cycles >= max_cycles:
                reason = HALT_CYCLE_LIMIT
                stop_pc = cpu.pc
                break

        return RunReport(cpu.cycles - start_cycles,
                         codec.events - start_events, reason,
                         steps=steps, stop_pc=stop_pc)

    def _idle_wait(self, max_cycles, start_cycles) -> bool:
        """Sleep through an IDLE: fast-forward the clock to the next codec
        event when one can wake the CPU.  Returns False when nothing can."""
        cpu = self.cpu
        codec = self.codec
        if cpu.intm:
            return False
        if cpu.pending & cpu.imr & 0x3F:
            return True
        if not (codec.running and codec.mode == MODE_INTERRUPT
                and cpu.imr & (1 << defs.INT0)):
            return False
        wait = codec.phase
        if max_cycles is not None:
            remaining = max_cycles - (cpu.cycles - start_cycles)
            if remaining <= 0:
                return True          # outer loop reports the cycle limit
            wait = min(wait, remaining)
        cpu.cycles += wait
        codec.tick(wait)
        return True
