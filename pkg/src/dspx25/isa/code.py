"""Instruction objects plus the word-level decoder and encoder.

`decode` and `encode` are exact inverses over the supported subset:
``decode(encode(i)) == i`` for every well-formed Instruction, and any word
outside the subset raises IllegalOpcode.  The execution engine dispatches on
raw words directly; this module exists for the assembler, disassembler and
debugger, and as the round-trip test surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import defs


class IllegalOpcode(Exception):
    """Word (or word pair) matches no supported encoding."""

    def __init__(self, word, addr=None):
        self.word = word
        self.addr = addr
        at = f" at {addr:04X}" if addr is not None else ""
        super().__init__(f"illegal opcode {word:04X}{at}")


class OperandRange(Exception):
    """Instruction field outside its encodable range."""


# addressing modes
@dataclass(frozen=True)
class Direct:
    dma: int            # 7-bit in-page offset


@dataclass(frozen=True)
class Indirect:
    code: int           # defs.IND_* update code
    next_arp: Optional[int] = None


@dataclass(frozen=True)
class Immediate:
    value: int
    bits: int           # 8, 9, 13 or 16


@dataclass(frozen=True)
class Instruction:
    mnemonic: str
    mode: object = None            # Direct | Indirect | Immediate | None
    shift: int = 0                 # shift/product-mode field where defined
    reg: Optional[int] = None      # AR number or port number where defined
    extra: Optional[int] = None    # second word (pma / 16-bit immediate)

    @property
    def width(self) -> int:
        return 2 if self.extra is not None else 1


def _mode_from_low(low: int):
    if low & 0x80 == 0:
        return Direct(low & 0x7F)
    code = (low >> 4) & 7
    if code == 3:
        return None
    next_arp = (low & 7) if low & 0x08 else None
    return Indirect(code, next_arp)


def _low_from_mode(mode) -> int:
    if isinstance(mode, Direct):
        if not 0 <= mode.dma <= 0x7F:
            raise OperandRange(f"direct address {mode.dma} outside 0..127")
        return mode.dma
    if isinstance(mode, Indirect):
        if mode.code not in defs.IND_NAMES:
            raise OperandRange(f"bad indirect code {mode.code}")
        low = 0x80 | (mode.code << 4)
        if mode.next_arp is not None:
            if not 0 <= mode.next_arp <= 7:
                raise OperandRange(f"next ARP {mode.next_arp} outside 0..7")
            low |= 0x08 | mode.next_arp
        return low
    raise OperandRange(f"not a memory addressing mode: {mode!r}")


def _need(mem: Sequence[int], addr: int, word: int):
    """Fetch the second word of a two-word instruction."""
    return mem[(addr + 1) & 0xFFFF] & 0xFFFF


def decode(mem: Sequence[int], addr: int = 0) -> Instruction:
    """Decode the instruction starting at mem[addr].

    Reads the second word only when the first decodes to a two-word opcode.
    Raises IllegalOpcode for anything outside the supported subset.
    """
    word = mem[addr & 0xFFFF] & 0xFFFF
    hi = word >> 8
    low = word & 0xFF

    def memmode():
        m = _mode_from_low(low)
        if m is None:
            raise IllegalOpcode(word, addr)
        return m

    if hi < 0x30:                               # ADD / SUB / LAC with shift
        mn = ("ADD", "SUB", "LAC")[hi >> 4]
        return Instruction(mn, memmode(), shift=hi & 0xF)
    if 0x30 <= hi <= 0x37:
        return Instruction("LAR", memmode(), reg=hi & 7)
    if hi in defs.MEM_PLAIN:
        return Instruction(defs.MEM_PLAIN[hi], memmode())
    if hi == defs.OP_MPY:
        return Instruction("MPY", memmode())
    if hi == defs.OP_MAR:
        mode = memmode()
        if isinstance(mode, Direct):
            # direct MAR performs nothing; dma 0 is the canonical NOP
            return Instruction("NOP") if mode.dma == 0 else Instruction("MAR", mode)
        if mode.code == defs.IND_NONE and mode.next_arp is not None:
            return Instruction("LARP", reg=mode.next_arp)
        return Instruction("MAR", mode)
    if hi in (defs.OP_MACD, defs.OP_MAC):
        mn = "MACD" if hi == defs.OP_MACD else "MAC"
        return Instruction(mn, memmode(), extra=_need(mem, addr, word))
    if 0x60 <= hi <= 0x6F:
        mn = "SACL" if hi < 0x68 else "SACH"
        return Instruction(mn, memmode(), shift=hi & 7)
    if 0x70 <= hi <= 0x77:
        return Instruction("SAR", memmode(), reg=hi & 7)
    if hi in (defs.OP_SST, defs.OP_SST1):
        return Instruction(defs.MEM_PLAIN[hi], memmode())
    if 0x80 <= hi <= 0x8F:
        return Instruction("IN", memmode(), reg=hi & 0xF)
    if 0xE0 <= hi <= 0xEF:
        return Instruction("OUT", memmode(), reg=hi & 0xF)
    if 0xA0 <= hi <= 0xBF:
        return Instruction("MPYK", Immediate(word & 0x1FFF, 13))
    if 0xC0 <= hi <= 0xC7:
        return Instruction("LARK", Immediate(low, 8), reg=hi & 7)
    if hi in (0xC8, 0xC9):
        return Instruction("LDPK", Immediate(word & 0x1FF, 9))
    if hi in defs.IMM8:
        if hi == defs.OP_LACK and low == 0:
            return Instruction("ZAC")
        return Instruction(defs.IMM8[hi], Immediate(low, 8))
    if hi == defs.OP_FIXED:
        if low in defs.CE_FIXED:
            return Instruction(defs.CE_FIXED[low])
        if defs.CE_SPM <= low <= defs.CE_SPM + 3:
            return Instruction("SPM", shift=low & 3)
        raise IllegalOpcode(word, addr)
    if 0xD0 <= hi <= 0xDF:
        sub = low
        nib = hi & 0xF
        if sub == defs.IMM16_LRLK:
            if nib > 7:
                raise IllegalOpcode(word, addr)
            return Instruction("LRLK", Immediate(_need(mem, addr, word), 16),
                               reg=nib, extra=_need(mem, addr, word))
        if sub in defs.IMM16_SUBOPS:
            return Instruction(defs.IMM16_SUBOPS[sub],
                               Immediate(_need(mem, addr, word), 16),
                               shift=nib, extra=_need(mem, addr, word))
        raise IllegalOpcode(word, addr)
    if hi in defs.BRANCHES:
        if low & 0x80 == 0:
            raise IllegalOpcode(word, addr)
        mode = _mode_from_low(low)
        if mode is None:
            raise IllegalOpcode(word, addr)
        return Instruction(defs.BRANCHES[hi], mode, extra=_need(mem, addr, word))
    raise IllegalOpcode(word, addr)


def _imm(instr: Instruction, bits: int) -> int:
    m = instr.mode
    if not isinstance(m, Immediate):
        raise OperandRange(f"{instr.mnemonic} needs a {bits}-bit immediate")
    lo = -(1 << (bits - 1))
    if not lo <= m.value < (1 << bits):
        raise OperandRange(
            f"{instr.mnemonic} immediate {m.value} outside {lo}..{(1 << bits) - 1}")
    return m.value & ((1 << bits) - 1)


def _shift(instr: Instruction, limit: int) -> int:
    if not 0 <= instr.shift <= limit:
        raise OperandRange(f"{instr.mnemonic} shift {instr.shift} outside 0..{limit}")
    return instr.shift


def _ar(instr: Instruction) -> int:
    if instr.reg is None or not 0 <= instr.reg <= 7:
        raise OperandRange(f"{instr.mnemonic} needs an AR number 0..7")
    return instr.reg


def _port(instr: Instruction) -> int:
    if instr.reg is None or not 0 <= instr.reg <= 15:
        raise OperandRange(f"{instr.mnemonic} needs a port number 0..15")
    return instr.reg


def _pma(instr: Instruction) -> int:
    if instr.extra is None or not 0 <= instr.extra <= 0xFFFF:
        raise OperandRange(f"{instr.mnemonic} needs a 16-bit program address")
    return instr.extra


def encode(instr: Instruction) -> list[int]:
    """Encode an Instruction into 1-2 words (inverse of decode)."""
    mn = instr.mnemonic.upper()
    mode = instr.mode

    if mn in ("ADD", "SUB", "LAC"):
        base = {"ADD": defs.OP_ADD, "SUB": defs.OP_SUB, "LAC": defs.OP_LAC}[mn]
        return [((base | _shift(instr, 15)) << 8) | _low_from_mode(mode)]
    if mn == "LAR":
        return [((defs.OP_LAR | _ar(instr)) << 8) | _low_from_mode(mode)]
    if mn == "SAR":
        return [((defs.OP_SAR | _ar(instr)) << 8) | _low_from_mode(mode)]
    if mn == "SACL":
        return [((defs.OP_SACL | _shift(instr, 7)) << 8) | _low_from_mode(mode)]
    if mn == "SACH":
        return [((defs.OP_SACH | _shift(instr, 7)) << 8) | _low_from_mode(mode)]
    if mn in defs.MEM_PLAIN_BY_NAME:
        return [(defs.MEM_PLAIN_BY_NAME[mn] << 8) | _low_from_mode(mode)]
    if mn == "MPY":
        return [(defs.OP_MPY << 8) | _low_from_mode(mode)]
    if mn in ("MAC", "MACD"):
        hi = defs.OP_MAC if mn == "MAC" else defs.OP_MACD
        return [(hi << 8) | _low_from_mode(mode), _pma(instr)]
    if mn == "IN":
        return [((defs.OP_IN | _port(instr)) << 8) | _low_from_mode(mode)]
    if mn == "OUT":
        return [((defs.OP_OUT | _port(instr)) << 8) | _low_from_mode(mode)]
    if mn == "NOP":
        return [defs.OP_MAR << 8]
    if mn == "MAR":
        return [(defs.OP_MAR << 8) | _low_from_mode(mode)]
    if mn == "LARP":
        return [(defs.OP_MAR << 8) | 0x88 | _ar(instr)]
    if mn == "MPYK":
        return [(defs.OP_MPYK << 8) | _imm(instr, 13)]
    if mn == "LARK":
        return [((defs.OP_LARK | _ar(instr)) << 8) | _imm(instr, 8)]
    if mn == "LDPK":
        return [(defs.OP_LDPK << 8) | _imm(instr, 9)]
    if mn == "ZAC":
        return [defs.OP_LACK << 8]
    if mn in defs.IMM8_BY_NAME:
        return [(defs.IMM8_BY_NAME[mn] << 8) | _imm(instr, 8)]
    if mn == "SPM":
        return [(defs.OP_FIXED << 8) | defs.CE_SPM | _shift(instr, 3)]
    if mn in defs.CE_BY_NAME:
        return [(defs.OP_FIXED << 8) | defs.CE_BY_NAME[mn]]
    if mn == "LRLK":
        if instr.extra is not None and isinstance(instr.mode, Immediate) \
                and instr.extra != (instr.mode.value & 0xFFFF):
            raise OperandRange("LRLK immediate/extra mismatch")
        return [(defs.OP_IMM16 | _ar(instr)) << 8, _imm(instr, 16)]
    if mn in defs.IMM16_BY_NAME:
        return [((defs.OP_IMM16 | _shift(instr, 15)) << 8) | defs.IMM16_BY_NAME[mn],
                _imm(instr, 16)]
    if mn in defs.BRANCH_BY_NAME:
        low = 0x80 if mode is None else _low_from_mode(mode)
        if low & 0x80 == 0:
            raise OperandRange(f"{mn} does not take a direct operand")
        return [(defs.BRANCH_BY_NAME[mn] << 8) | low, _pma(instr)]
    raise OperandRange(f"unknown mnemonic {mn!r}")
