"""Bit-exact TMS320C25-subset core: state, decode/encode, stepping.

The execution engine has two interchangeable builds: the pure-Python
`engine` module and its Cython-compiled twin `_engine_c` (same source,
built by setup.py when Cython is available).  The compiled one is selected
automatically; `ENGINE` records which is active.
"""

from dataclasses import dataclass
from typing import Optional

from . import defs

try:
    from . import _engine_c as _impl
    ENGINE = "compiled"
except ImportError:          # pragma: no cover - depends on build environment
    from . import engine as _impl
    ENGINE = "pure"

from . import engine as engine_pure
from .code import (Direct, Immediate, Indirect, Instruction, IllegalOpcode,
                   OperandRange, decode, encode)

Cpu = _impl.Cpu
EV_OK = _impl.EV_OK
EV_IDLE = _impl.EV_IDLE
EV_TRAP = _impl.EV_TRAP
EV_ILLEGAL = _impl.EV_ILLEGAL
EV_INT = _impl.EV_INT

INT0, INT1, INT2, TINT, RINT, XINT = (defs.INT0, defs.INT1, defs.INT2,
                                      defs.TINT, defs.RINT, defs.XINT)

EVENT_NAMES = {EV_OK: "None", EV_IDLE: "Idle", EV_TRAP: "Trap",
               EV_ILLEGAL: "IllegalOpcode", EV_INT: "InterruptTaken"}


@dataclass
class StepReport:
    """Outcome of one step: what ran, where the pc went, what it cost."""
    executed: Optional[Instruction]
    pc_before: int
    pc_after: int
    cycles: int
    event: int
    int_line: Optional[int] = None
    illegal_word: Optional[int] = None

    @property
    def event_name(self) -> str:
        return EVENT_NAMES[self.event]


def step(cpu) -> StepReport:
    """Single-step with a full report (debugger-facing wrapper)."""
    pc0 = cpu.pc
    cyc0 = cpu.cycles
    ev = cpu.exec_next()
    executed = None
    line = None
    bad = None
    if ev == EV_INT:
        line = cpu.last_int_line
    elif ev == EV_ILLEGAL:
        bad = cpu.last_illegal_word
    else:
        try:
            executed = decode(cpu.prog, pc0)
        except IllegalOpcode:      # pragma: no cover - engine/decoder agree
            executed = None
    return StepReport(executed, pc0, cpu.pc, cpu.cycles - cyc0, ev,
                      int_line=line, illegal_word=bad)


__all__ = [
    "Cpu", "ENGINE", "StepReport", "step", "decode", "encode",
    "Instruction", "Direct", "Indirect", "Immediate", "IllegalOpcode",
    "OperandRange", "defs", "engine_pure",
    "EV_OK", "EV_IDLE", "EV_TRAP", "EV_ILLEGAL", "EV_INT",
    "INT0", "INT1", "INT2", "TINT", "RINT", "XINT",
]
