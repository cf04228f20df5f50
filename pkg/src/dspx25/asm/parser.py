"""Source-line parsing and expression evaluation for the assembler.

Line grammar:  [label[:]] [op [operand{,operand}]] [;comment]

A leading token is a label when it carries a ':' or is not a known
mnemonic/directive; labels that collide with mnemonic names need the
colon.  parse_line never fails — malformed content is preserved and
rejected later with a line-numbered diagnostic.

Expressions: decimal, 0xHH and trailing-h hex (must start with a digit),
symbols, binary '+'/'-', unary '-', and '$' for the current location
counter.  A bare token that parses as a number is a number, never a
symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..isa import defs

DIRECTIVES = {".org", ".pseg", ".dseg", ".word", ".bss", ".equ", ".end",
              ".list", ".nolist", ".title", ".include"}

_KNOWN_OPS = {m.upper() for m in defs.ALL_MNEMONICS}

_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]{0,31}$")
_NUM_0X = re.compile(r"0[xX][0-9A-Fa-f]+$")
_NUM_H = re.compile(r"[0-9][0-9A-Fa-f]*[hH]$")
_NUM_DEC = re.compile(r"[0-9]+$")
_TOKEN = re.compile(
    r"\s*(0[xX][0-9A-Fa-f]+|[0-9][0-9A-Fa-f]*[hH]|[0-9]+"
    r"|[A-Za-z_][A-Za-z0-9_]*|\$|\+|-|.)")


@dataclass
class SourceLine:
    number: int
    label: Optional[str] = None
    op: Optional[str] = None
    operands: list[str] = field(default_factory=list)
    comment: Optional[str] = None
    text: str = ""
    file: Optional[str] = None


class ExprError(Exception):
    def __init__(self, message: str, code: str = "Syntax"):
        self.code = code           # "Syntax" or "UndefinedSymbol"
        super().__init__(message)


def _strip_comment(text: str) -> tuple[str, Optional[str]]:
    in_quote = False
    for i, ch in enumerate(text):
        if ch == '"':
            in_quote = not in_quote
        elif ch == ";" and not in_quote:
            return text[:i], text[i + 1:].strip()
    return text, None


def _split_operands(text: str) -> list[str]:
    parts = []
    cur = []
    in_quote = False
    for ch in text:
        if ch == '"':
            in_quote = not in_quote
            cur.append(ch)
        elif ch == "," and not in_quote:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    last = "".join(cur).strip()
    if last or parts:
        parts.append(last)
    return parts


_FIELDS = re.compile(r"(\s*)(\S+)\s*(.*)$", re.S)


def parse_line(text: str, number: int) -> SourceLine:
    """Split one physical line into label/op/operands/comment fields."""
    line = SourceLine(number, text=text.rstrip("\n"))
    body, line.comment = _strip_comment(line.text)
    if not body.strip():
        return line

    m = _FIELDS.match(body)
    lead, first, rest = m.group(1), m.group(2), m.group(3)
    if lead == "":
        # column-0 token: a label when it says so or isn't a known op
        tok = first[:-1] if first.endswith(":") else first
        if first.endswith(":") or (
                tok.upper() not in _KNOWN_OPS
                and tok.lower() not in DIRECTIVES
                and _LABEL_RE.match(tok)):
            line.label = tok
            m = _FIELDS.match(rest)
            if m is None:
                return line
            first, rest = m.group(2), m.group(3)

    line.op = first
    if rest.strip():
        line.operands = _split_operands(rest.strip())
    return line


def parse_number(tok: str) -> Optional[int]:
    if _NUM_0X.match(tok):
        return int(tok, 16)
    if _NUM_H.match(tok):
        return int(tok[:-1], 16)
    if _NUM_DEC.match(tok):
        return int(tok, 10)
    return None


def eval_expr(text: str, symbols, location: int) -> int:
    """Evaluate an operand expression.

    `symbols` maps name -> value (int); `location` is the value of '$'.
    Raises ExprError with code "UndefinedSymbol" or "Syntax".
    """
    pos = 0
    n = len(text)

    def next_token():
        nonlocal pos
        if pos >= n:
            return None
        m = _TOKEN.match(text, pos)
        if not m:
            return None
        pos = m.end()
        return m.group(1)

    total = 0
    sign = 1
    expect_value = True
    while True:
        tok = next_token()
        if tok is None:
            break
        if tok in "+-":
            if expect_value:
                if tok == "-":
                    sign = -sign
                continue
            sign = 1 if tok == "+" else -1
            expect_value = True
            continue
        if not expect_value:
            raise ExprError(f"unexpected {tok!r} in expression {text!r}")
        if tok == "$":
            val = location
        else:
            num = parse_number(tok)
            if num is not None:
                val = num
            elif _LABEL_RE.match(tok):
                if tok not in symbols:
                    raise ExprError(f"undefined symbol {tok!r}",
                                    code="UndefinedSymbol")
                val = symbols[tok]
            else:
                raise ExprError(f"bad token {tok!r} in expression {text!r}")
        total += sign * val
        sign = 1
        expect_value = False
    if expect_value:
        raise ExprError(f"missing value in expression {text!r}")
    return total
