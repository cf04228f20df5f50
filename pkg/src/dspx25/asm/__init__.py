"""ASMC25-style two-pass assembler, expression parser and disassembler."""

from .assembler import (AsmResult, Assembler, Diagnostic, Listing,
                        ListingRow, assemble, assemble_file,
                        build_instruction)
from .disasm import disassemble, format_instruction
from .parser import SourceLine, eval_expr, parse_line

__all__ = [
    "AsmResult", "Assembler", "Diagnostic", "Listing", "ListingRow",
    "assemble", "assemble_file", "build_instruction", "disassemble",
    "format_instruction", "SourceLine", "eval_expr", "parse_line",
]
