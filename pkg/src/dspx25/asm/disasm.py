"""Disassembler: words back to canonical assembler syntax.

The emitted text re-assembles to the original words (round-trip property),
so operand spelling here and operand parsing in the assembler must stay in
lock step.  Default AR-update fields (``*`` generally, ``*-`` for BANZ) are
omitted; the shift is omitted when zero unless a next-ARP operand needs the
position.
"""

from __future__ import annotations

from ..isa import code as icode
from ..isa import defs


def _ind_text(mode: icode.Indirect, shift=None, with_shift=False) -> str:
    parts = [defs.IND_NAMES[mode.code]]
    if with_shift and (shift or mode.next_arp is not None):
        parts.append(str(shift))
    if mode.next_arp is not None:
        parts.append(f"AR{mode.next_arp}")
    return ",".join(parts)


def _addr_text(mode, shift=None, with_shift=False) -> str:
    if isinstance(mode, icode.Direct):
        out = f"0x{mode.dma:02X}"
        if with_shift and shift:
            out += f",{shift}"
        return out
    return _ind_text(mode, shift, with_shift)


def format_instruction(instr: icode.Instruction) -> str:
    """Render one Instruction as canonical source text."""
    mn = instr.mnemonic
    mode = instr.mode

    if mn in ("ADD", "SUB", "LAC", "SACL", "SACH"):
        return f"{mn} {_addr_text(mode, instr.shift, with_shift=True)}"
    if mn in ("LAR", "SAR"):
        return f"{mn} AR{instr.reg},{_addr_text(mode)}"
    if mn in defs.MEM_PLAIN_BY_NAME or mn in ("MPY", "MAR"):
        return f"{mn} {_addr_text(mode)}"
    if mn in ("MAC", "MACD"):
        return f"{mn} 0x{instr.extra:04X},{_addr_text(mode)}"
    if mn in ("IN", "OUT"):
        if isinstance(mode, icode.Indirect) and mode.next_arp is not None:
            base = defs.IND_NAMES[mode.code]
            return f"{mn} {base},{instr.reg},AR{mode.next_arp}"
        return f"{mn} {_addr_text(mode)},{instr.reg}"
    if mn == "LARP":
        return f"LARP AR{instr.reg}"
    if mn == "LARK":
        return f"LARK AR{instr.reg},0x{instr.mode.value:02X}"
    if mn == "LRLK":
        return f"LRLK AR{instr.reg},0x{instr.mode.value:04X}"
    if mn in ("LACK", "ADDK", "SUBK", "RPTK"):
        return f"{mn} 0x{instr.mode.value:02X}"
    if mn == "LDPK":
        return f"LDPK 0x{instr.mode.value:03X}"
    if mn == "MPYK":
        v = instr.mode.value
        if v & 0x1000:
            v -= 0x2000
        return f"MPYK {v}"
    if mn == "SPM":
        return f"SPM {instr.shift}"
    if mn in ("LALK", "ADLK", "SBLK"):
        out = f"{mn} 0x{instr.mode.value:04X}"
        if instr.shift:
            out += f",{instr.shift}"
        return out
    if mn in defs.BRANCH_BY_NAME:
        out = f"{mn} 0x{instr.extra:04X}"
        default = defs.IND_DEC if mn == "BANZ" else defs.IND_NONE
        if isinstance(mode, icode.Indirect) and (
                mode.code != default or mode.next_arp is not None):
            out += f",{defs.IND_NAMES[mode.code]}"
            if mode.next_arp is not None:
                out += f",AR{mode.next_arp}"
        return out
    return mn           # NOP, ZAC and the fixed CE group


def disassemble(mem, addr: int = 0) -> tuple[str, int]:
    """Disassemble one instruction; returns (text, width).

    Unsupported words render as a .word directive of width 1 so memory
    dumps stay readable (such text is not part of the round-trip contract).
    """
    try:
        instr = icode.decode(mem, addr)
    except icode.IllegalOpcode:
        return f".word 0x{mem[addr & 0xFFFF]:04X}", 1
    return format_instruction(instr), instr.width
