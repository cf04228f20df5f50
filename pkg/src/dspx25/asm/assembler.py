"""Two-pass symbolic assembler: source text to ObjectImage plus listing.

Pass 1 builds the symbol table and location counters (separate counters
for the PROG and DATA spaces); pass 2 encodes and emits.  Every error is a
line-numbered diagnostic and any Error prevents object emission.

Directives: .org <expr>, .pseg/.dseg, .word <expr{,expr}>, .bss <n>,
<label> .equ <expr>, .end [entry], .list/.nolist/.title "t",
.include "file".  Mnemonics and directives are case-insensitive; symbols
are case-sensitive.  Directive operands (.org/.bss/.equ) must not contain
forward references.

Port names PA0..PA15 are predefined absolute symbols (values 0..15).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from ..isa import code as icode
from ..isa import defs
from ..objfmt.image import ObjectImage, Record, Symbol
from .parser import (DIRECTIVES, ExprError, SourceLine, eval_expr,
                     parse_line, parse_number)

SPACE_PROG = "P"
SPACE_DATA = "D"
SPACE_ABS = "A"

_BUILTINS = {f"PA{n}": n for n in range(16)}


@dataclass
class Diagnostic:
    line: int
    severity: str              # "Error" | "Warning"
    message: str
    code: str = "Syntax"       # UndefinedSymbol, DuplicateSymbol,
    file: Optional[str] = None  # OperandRange, UnknownMnemonic,
                                # DirectiveMisuse, Syntax

    def render(self) -> str:
        return f"***** ERROR {self.line}: {self.message}" \
            if self.severity == "Error" \
            else f"***** WARNING {self.line}: {self.message}"


@dataclass
class SymbolEntry:
    value: int
    space: str
    line: int


@dataclass
class ListingRow:
    line: Optional[int]
    addr: Optional[int]
    words: list[int]
    source: str
    space: str = SPACE_PROG      # carried for verification, not rendered

    def render(self) -> str:
        num = f"{self.line:05d}" if self.line is not None else "     "
        addr = f"{self.addr:04X}" if self.addr is not None else "    "
        w = [f"{x:04X}" for x in self.words[:2]]
        while len(w) < 2:
            w.append("    ")
        return f"{num} {addr} {w[0]} {w[1]}  {self.source}"


@dataclass
class Listing:
    rows: list = field(default_factory=list)    # ListingRow | Diagnostic
    title: Optional[str] = None
    symbols: list[Symbol] = field(default_factory=list)

    def render(self) -> str:
        out = []
        if self.title:
            out.append(f"TITLE: {self.title}")
        for row in self.rows:
            out.append(row.render())
        for sym in self.symbols:
            out.append(f"SYM {sym.name} {sym.space} {sym.value:04X}")
        return "\n".join(out) + "\n"

    def payload_words(self, space: str) -> list[int]:
        """All emitted words for one space, in address order."""
        words = []
        for row in self.rows:
            if isinstance(row, ListingRow) and row.addr is not None \
                    and row.space == space:
                for i, w in enumerate(row.words):
                    words.append(((row.addr + i) & 0xFFFF, w))
        return [w for _, w in sorted(words, key=lambda t: t[0])]


@dataclass
class AsmResult:
    object: Optional[ObjectImage]
    listing: Optional[Listing]
    diagnostics: list[Diagnostic]

    @property
    def errors(self) -> int:
        return sum(1 for d in self.diagnostics if d.severity == "Error")


class _AsmError(Exception):
    def __init__(self, message: str, code: str = "Syntax"):
        self.code = code
        super().__init__(message)


_IND_FORMS = {name.upper(): c for c, name in defs.IND_NAMES.items()}


def _ind_form(tok: str) -> Optional[int]:
    return _IND_FORMS.get(tok.replace(" ", "").upper())


def _is_ar(tok: str) -> bool:
    t = tok.strip().upper()
    return len(t) == 3 and t.startswith("AR") and t[2] in "01234567"


def _ar_num(tok: str, ev) -> int:
    t = tok.strip().upper()
    if _is_ar(t):
        return int(t[2])
    v = ev(tok)
    if not 0 <= v <= 7:
        raise _AsmError(f"auxiliary register {tok!r} outside AR0..AR7",
                        "OperandRange")
    return v


def _too_many(mn: str):
    raise _AsmError(f"too many operands for {mn}", "Syntax")


def _mem_mode(mn: str, operands: list[str], idx: int, ev,
              with_shift: bool) -> tuple[object, int]:
    """Parse `addr [,shift] [,ARn]` starting at operands[idx].

    Returns (mode, shift).  The next-ARP operand is only legal with the
    indirect forms.
    """
    if idx >= len(operands):
        raise _AsmError(f"{mn} needs an address operand", "Syntax")
    tok = operands[idx]
    ind = _ind_form(tok)
    j = idx + 1
    shift = 0
    if with_shift and j < len(operands) and not _is_ar(operands[j]):
        shift = ev(operands[j])
        j += 1
    next_arp = None
    if j < len(operands):
        if ind is None:
            raise _AsmError(
                f"{mn}: next ARP is only legal with indirect addressing",
                "Syntax")
        next_arp = _ar_num(operands[j], ev)
        j += 1
    if j != len(operands):
        _too_many(mn)
    if ind is not None:
        return icode.Indirect(ind, next_arp), shift
    v = ev(tok)
    if not 0 <= v <= 0x7F:
        raise _AsmError(f"direct address {v} outside 0..127 (dma > 127)",
                        "OperandRange")
    return icode.Direct(v), shift


def build_instruction(op: str, operands: list[str], ev) -> icode.Instruction:
    """Turn a mnemonic plus operand strings into an Instruction."""
    mn = op.upper()

    if mn in ("ADD", "SUB", "LAC", "SACL", "SACH"):
        mode, shift = _mem_mode(mn, operands, 0, ev, with_shift=True)
        return icode.Instruction(mn, mode, shift=shift)
    if mn in ("LAR", "SAR"):
        if len(operands) < 2:
            raise _AsmError(f"{mn} needs ARn and an address", "Syntax")
        ar = _ar_num(operands[0], ev)
        mode, _ = _mem_mode(mn, operands, 1, ev, with_shift=False)
        return icode.Instruction(mn, mode, reg=ar)
    if mn in defs.MEM_PLAIN_BY_NAME or mn in ("MPY", "MAR"):
        mode, _ = _mem_mode(mn, operands, 0, ev, with_shift=False)
        return icode.Instruction(mn, mode)
    if mn in ("MAC", "MACD"):
        if len(operands) < 2:
            raise _AsmError(f"{mn} needs a program address and a data operand",
                            "Syntax")
        pma = ev(operands[0]) & 0xFFFF
        mode, _ = _mem_mode(mn, operands, 1, ev, with_shift=False)
        return icode.Instruction(mn, mode, extra=pma)
    if mn in ("IN", "OUT"):
        if len(operands) < 2:
            raise _AsmError(f"{mn} needs an address and a port", "Syntax")
        port = ev(operands[1])
        if not 0 <= port <= 15:
            raise _AsmError(f"port {port} outside 0..15", "OperandRange")
        mode, _ = _mem_mode(mn, [operands[0]] + operands[2:], 0, ev,
                            with_shift=False)
        return icode.Instruction(mn, mode, reg=port)
    if mn == "LARP":
        if len(operands) != 1:
            raise _AsmError("LARP needs one operand", "Syntax")
        return icode.Instruction(mn, reg=_ar_num(operands[0], ev))
    if mn == "LARK":
        if len(operands) != 2:
            raise _AsmError("LARK needs ARn and a constant", "Syntax")
        return icode.Instruction(mn, icode.Immediate(ev(operands[1]), 8),
                                 reg=_ar_num(operands[0], ev))
    if mn == "LRLK":
        if len(operands) != 2:
            raise _AsmError("LRLK needs ARn and a constant", "Syntax")
        v = ev(operands[1]) & 0xFFFF
        return icode.Instruction(mn, icode.Immediate(v, 16),
                                 reg=_ar_num(operands[0], ev), extra=v)
    if mn in ("LACK", "ADDK", "SUBK", "RPTK"):
        if len(operands) != 1:
            raise _AsmError(f"{mn} needs one constant", "Syntax")
        return icode.Instruction(mn, icode.Immediate(ev(operands[0]), 8))
    if mn == "LDPK":
        if len(operands) != 1:
            raise _AsmError("LDPK needs one constant", "Syntax")
        return icode.Instruction(mn, icode.Immediate(ev(operands[0]), 9))
    if mn == "MPYK":
        if len(operands) != 1:
            raise _AsmError("MPYK needs one constant", "Syntax")
        return icode.Instruction(mn, icode.Immediate(ev(operands[0]), 13))
    if mn == "SPM":
        if len(operands) != 1:
            raise _AsmError("SPM needs one constant", "Syntax")
        return icode.Instruction(mn, shift=ev(operands[0]))
    if mn in ("LALK", "ADLK", "SBLK"):
        if not 1 <= len(operands) <= 2:
            raise _AsmError(f"{mn} needs a constant and optional shift",
                            "Syntax")
        v = ev(operands[0]) & 0xFFFF
        shift = ev(operands[1]) if len(operands) == 2 else 0
        return icode.Instruction(mn, icode.Immediate(v, 16), shift=shift,
                                 extra=v)
    if mn in defs.BRANCH_BY_NAME:
        if not operands:
            raise _AsmError(f"{mn} needs a program address", "Syntax")
        pma = ev(operands[0]) & 0xFFFF
        default = defs.IND_DEC if mn == "BANZ" else defs.IND_NONE
        mode = icode.Indirect(default, None)
        if len(operands) >= 2:
            ind = _ind_form(operands[1])
            if ind is None:
                raise _AsmError(f"{mn}: bad AR update form {operands[1]!r}",
                                "Syntax")
            next_arp = _ar_num(operands[2], ev) if len(operands) == 3 else None
            if len(operands) > 3:
                _too_many(mn)
            mode = icode.Indirect(ind, next_arp)
        return icode.Instruction(mn, mode, extra=pma)
    if mn in ("NOP", "ZAC") or mn in defs.CE_BY_NAME:
        if operands:
            _too_many(mn)
        return icode.Instruction(mn)
    raise _AsmError(f"unknown mnemonic {op!r}", "UnknownMnemonic")


def instruction_width(op: str, operands: list[str]) -> int:
    mn = op.upper()
    if mn in defs.BRANCH_BY_NAME or mn in ("MAC", "MACD", "LALK", "ADLK",
                                           "SBLK", "LRLK"):
        return 2
    return 1


class Assembler:
    def __init__(self, origin: int = 0, listing: bool = False,
                 name: str = "<source>", include_dirs=(), symbols=None):
        self.origin = origin
        self.want_listing = listing
        self.name = name
        self.include_dirs = list(include_dirs)
        self.seed_symbols = dict(symbols or {})
        self.symtab: dict[str, SymbolEntry] = {}
        self.diagnostics: list[Diagnostic] = []
        self.entry = 0

    # -- helpers ---------------------------------------------------------

    def _err(self, line: SourceLine, message: str, code: str = "Syntax"):
        self.diagnostics.append(Diagnostic(line.number, "Error", message,
                                           code, getattr(line, "file", None)))

    def _values(self) -> dict[str, int]:
        vals = dict(_BUILTINS)
        vals.update(self.seed_symbols)
        for name, ent in self.symtab.items():
            vals[name] = ent.value
        return vals

    def _define(self, line: SourceLine, name: str, value: int, space: str):
        if name in self.symtab:
            self._err(line, f"duplicate symbol {name!r} "
                            f"(first defined at line {self.symtab[name].line})",
                      "DuplicateSymbol")
            return
        if name in self.seed_symbols and self.seed_symbols[name] != (value & 0xFFFF):
            self._err(line, f"symbol {name!r} conflicts with seeded value",
                      "DuplicateSymbol")
            return
        self.symtab[name] = SymbolEntry(value & 0xFFFF, space, line.number)

    # -- include expansion ------------------------------------------------

    def _expand(self, source: str, name: str, depth: int = 0) -> list[SourceLine]:
        if depth > 16:
            raise _AsmError(f"include nesting too deep in {name}",
                            "DirectiveMisuse")
        out = []
        for i, raw in enumerate(source.splitlines(), 1):
            line = parse_line(raw, i)
            line.file = name
            if line.op and line.op.lower() == ".include":
                if len(line.operands) != 1 or not line.operands[0].startswith('"'):
                    self._err(line, '.include needs a quoted file name',
                              "DirectiveMisuse")
                    continue
                fname = line.operands[0].strip('"')
                path = self._find_include(fname, name)
                if path is None:
                    self._err(line, f"cannot open include file {fname!r}",
                              "DirectiveMisuse")
                    continue
                with open(path, "r", encoding="utf-8") as fh:
                    out.extend(self._expand(fh.read(), path, depth + 1))
            else:
                out.append(line)
        return out

    def _find_include(self, fname: str, current: str) -> Optional[str]:
        dirs = []
        if current and os.path.dirname(current):
            dirs.append(os.path.dirname(current))
        dirs.extend(self.include_dirs)
        dirs.append(".")
        for d in dirs:
            path = os.path.join(d, fname)
            if os.path.exists(path):
                return path
        return None

    # -- pass 1 ------------------------------------------------------------

    def _pass1(self, lines: list[SourceLine]):
        space = SPACE_PROG
        lc = {SPACE_PROG: self.origin, SPACE_DATA: 0}
        for line in lines:
            op = (line.op or "").lower()
            if line.label and op != ".equ":
                self._define(line, line.label, lc[space], space)
            if not line.op:
                continue
            if op in DIRECTIVES:
                try:
                    space = self._directive_pass1(line, op, space, lc)
                except ExprError as e:
                    self._err(line, f"{e} (directive operands must not "
                                    "forward-reference)", e.code)
                except _AsmError as e:
                    self._err(line, str(e), e.code)
                if op == ".end":
                    break
            else:
                lc[space] = (lc[space] + instruction_width(line.op,
                                                           line.operands)) & 0xFFFF

    def _directive_pass1(self, line, op, space, lc) -> str:
        ev = lambda t: eval_expr(t, self._values(), lc[space])
        if op == ".org":
            if len(line.operands) != 1:
                raise _AsmError(".org needs one expression", "DirectiveMisuse")
            v = ev(line.operands[0])
            if not 0 <= v <= 0xFFFF:
                raise _AsmError(f".org value {v:#x} outside 16 bits",
                                "OperandRange")
            lc[space] = v
        elif op == ".pseg":
            return SPACE_PROG
        elif op == ".dseg":
            return SPACE_DATA
        elif op == ".word":
            if not line.operands:
                raise _AsmError(".word needs at least one value",
                                "DirectiveMisuse")
            lc[space] = (lc[space] + len(line.operands)) & 0xFFFF
        elif op == ".bss":
            if len(line.operands) != 1:
                raise _AsmError(".bss needs a size", "DirectiveMisuse")
            n = ev(line.operands[0])
            if n < 0:
                raise _AsmError(".bss size must be non-negative",
                                "OperandRange")
            lc[space] = (lc[space] + n) & 0xFFFF
        elif op == ".equ":
            if not line.label:
                raise _AsmError(".equ needs a label", "DirectiveMisuse")
            if len(line.operands) != 1:
                raise _AsmError(".equ needs one expression", "DirectiveMisuse")
            self._define(line, line.label, ev(line.operands[0]), SPACE_ABS)
        elif op == ".end":
            if line.operands:
                self.entry = ev(line.operands[0]) & 0xFFFF
        # .list/.nolist/.title/.include: nothing for pass 1
        return space

    # -- pass 2 ------------------------------------------------------------

    def _pass2(self, lines: list[SourceLine]):
        space = SPACE_PROG
        lc = {SPACE_PROG: self.origin, SPACE_DATA: 0}
        emitted: dict[str, dict[int, int]] = {SPACE_PROG: {}, SPACE_DATA: {}}
        listing = Listing()
        show = True
        values = self._values()

        def emit(line, addr_space, addr, words):
            table = emitted[addr_space]
            for k, w in enumerate(words):
                a = (addr + k) & 0xFFFF
                if a in table:
                    self._err(line, f"overlapping emission at "
                                    f"{addr_space} {a:04X}", "DirectiveMisuse")
                    return
                table[a] = w & 0xFFFF

        for line in lines:
            op = (line.op or "").lower()
            ev = lambda t: eval_expr(t, values, lc[space])
            row_addr = None
            row_words: list[int] = []

            if line.op and op not in DIRECTIVES:
                row_addr = lc[space]
                try:
                    instr = build_instruction(line.op, line.operands, ev)
                    row_words = icode.encode(instr)
                    emit(line, space, lc[space], row_words)
                except (ExprError, _AsmError) as e:
                    self._err(line, str(e), e.code)
                    row_words = []
                except icode.OperandRange as e:
                    self._err(line, str(e), "OperandRange")
                    row_words = []
                lc[space] = (lc[space] + instruction_width(
                    line.op, line.operands)) & 0xFFFF
            elif op == ".word":
                row_addr = lc[space]
                for t in line.operands:
                    try:
                        row_words.append(ev(t) & 0xFFFF)
                    except ExprError as e:
                        self._err(line, str(e), e.code)
                        row_words.append(0)
                emit(line, space, lc[space], row_words)
                lc[space] = (lc[space] + len(line.operands)) & 0xFFFF
            elif op in DIRECTIVES:
                try:
                    if op == ".org":
                        lc[space] = eval_expr(line.operands[0], values,
                                              lc[space]) & 0xFFFF
                        row_addr = lc[space]
                    elif op == ".pseg":
                        space = SPACE_PROG
                    elif op == ".dseg":
                        space = SPACE_DATA
                    elif op == ".bss":
                        row_addr = lc[space]
                        lc[space] = (lc[space] + eval_expr(
                            line.operands[0], values, lc[space])) & 0xFFFF
                    elif op == ".title":
                        if len(line.operands) == 1 and \
                                line.operands[0].startswith('"'):
                            listing.title = line.operands[0].strip('"')
                        else:
                            raise _AsmError('.title needs a quoted string',
                                            "DirectiveMisuse")
                    elif op == ".list":
                        show = True
                    elif op == ".nolist":
                        show = False
                    # .equ handled in pass 1; .end below
                except (ExprError, _AsmError, IndexError):
                    pass    # already diagnosed in pass 1
            elif line.op:
                pass        # unreachable: non-directive ops handled above

            if show:
                listing.rows.append(ListingRow(line.number, row_addr,
                                               row_words[:2], line.text,
                                               space))
                for extra in range(2, len(row_words), 2):
                    listing.rows.append(ListingRow(
                        None, (row_addr + extra) & 0xFFFF,
                        row_words[extra:extra + 2], "", space))
            if op == ".end":
                break

        self._merge_diagnostics(listing)
        return emitted, listing

    def _merge_diagnostics(self, listing: Listing):
        """Insert error rows after the listing row they belong to."""
        by_line: dict[int, list[Diagnostic]] = {}
        for d in self.diagnostics:
            by_line.setdefault(d.line, []).append(d)
        rows = []
        for row in listing.rows:
            rows.append(row)
            if isinstance(row, ListingRow) and row.line in by_line:
                rows.extend(by_line.pop(row.line))
        for rest in by_line.values():       # diagnostics with no row
            rows.extend(rest)
        listing.rows = rows

    # -- public -----------------------------------------------------------

    def run(self, source: str) -> AsmResult:
        try:
            lines = self._expand(source, self.name)
        except _AsmError as e:
            self.diagnostics.append(Diagnostic(0, "Error", str(e), e.code))
            return AsmResult(None, None, self.diagnostics)

        self._pass1(lines)
        emitted, listing = self._pass2(lines)

        listing.symbols = [
            Symbol(name, ent.space, ent.value)
            for name, ent in sorted(self.symtab.items())
        ]

        obj = None
        if not any(d.severity == "Error" for d in self.diagnostics):
            obj = ObjectImage(entry=self.entry)
            for sp in (SPACE_PROG, SPACE_DATA):
                table = emitted[sp]
                run_start = None
                run_words: list[int] = []
                for addr in sorted(table):
                    if run_start is not None and addr == run_start + len(run_words):
                        run_words.append(table[addr])
                    else:
                        if run_start is not None:
                            obj.records.append(Record(sp, run_start, run_words))
                        run_start = addr
                        run_words = [table[addr]]
                if run_start is not None:
                    obj.records.append(Record(sp, run_start, run_words))
            obj.symbols = list(listing.symbols)
            obj.validate()

        return AsmResult(obj, listing if self.want_listing else None,
                         self.diagnostics)


def assemble(source: str, *, listing: bool = False, origin: int = 0,
             name: str = "<source>", include_dirs=(), symbols=None) -> AsmResult:
    """Assemble a complete translation unit."""
    return Assembler(origin=origin, listing=listing, name=name,
                     include_dirs=include_dirs, symbols=symbols).run(source)


def assemble_file(path: str, **kw) -> AsmResult:
    with open(path, "r", encoding="utf-8") as fh:
        return assemble(fh.read(), name=path, **kw)
