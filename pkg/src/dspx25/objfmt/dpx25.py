"""DPX25 loadable object format: text, line-oriented, bit-exactly specified.

    DPX25                     header (required first line)
    E hhhh                    entry point
    P hhhh hhhh               program record: start, word count, then exactly
    hhhh hhhh ...             count 4-hex-digit words (8 per line canonical,
    D hhhh hhhh               any whitespace split accepted on read)
    S name P|D|A hhhh         symbol (optional)
    ; comment                 anywhere

Unknown record letters are errors; a record with the wrong number of words
is a CountMismatch.  write_object output is byte-deterministic.
"""

from __future__ import annotations

from .image import ObjectImage, ObjectFormatError, RangeError, Record, Symbol


class ObjSyntaxError(ObjectFormatError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class CountMismatch(ObjectFormatError):
    pass


def write_object(img: ObjectImage) -> str:
    """Render an image as canonical DPX25 text (validates first)."""
    img.validate()
    out = ["DPX25\n", f"E {img.entry:04X}\n"]
    for rec in img.records:
        out.append(f"{rec.space} {rec.start:04X} {len(rec.words):04X}\n")
        for i in range(0, len(rec.words), 8):
            out.append(" ".join(f"{w:04X}" for w in rec.words[i:i + 8]) + "\n")
    for sym in img.symbols:
        out.append(f"S {sym.name} {sym.space} {sym.value:04X}\n")
    return "".join(out)


def _hex16(tok: str, lineno: int) -> int:
    try:
        v = int(tok, 16)
    except ValueError:
        raise ObjSyntaxError(lineno, f"bad hex word {tok!r}") from None
    if not 0 <= v <= 0xFFFF:
        raise ObjSyntaxError(lineno, f"value {tok} outside 16 bits")
    return v


def read_object(text: str) -> ObjectImage:
    """Parse DPX25 text; strict about record letters and word counts."""
    img = ObjectImage()
    rec: Record | None = None      # record currently being filled
    want = 0
    header_seen = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != "DPX25":
                raise ObjSyntaxError(lineno, "missing DPX25 header")
            header_seen = True
            continue
        toks = line.split()

        if rec is not None:
            if len(rec.words) + len(toks) > want:
                raise CountMismatch(
                    f"line {lineno}: record {rec.space} {rec.start:04X} "
                    f"has more than {want} words")
            for t in toks:
                rec.words.append(_hex16(t, lineno))
            if len(rec.words) == want:
                rec = None
            continue

        tag = toks[0].upper()
        if tag == "E":
            if len(toks) != 2:
                raise ObjSyntaxError(lineno, "E record needs one value")
            img.entry = _hex16(toks[1], lineno)
        elif tag in ("P", "D"):
            if len(toks) != 3:
                raise ObjSyntaxError(lineno, f"{tag} record needs start and count")
            start = _hex16(toks[1], lineno)
            want = _hex16(toks[2], lineno)
            if start + want > 0x10000:
                raise RangeError(
                    f"line {lineno}: record {start:04X}+{want:04X} exceeds 64K")
            new = Record(tag, start)
            img.records.append(new)
            if want:
                rec = new
        elif tag == "S":
            if len(toks) != 4 or toks[2].upper() not in ("P", "D", "A"):
                raise ObjSyntaxError(lineno, "bad symbol record")
            img.symbols.append(Symbol(toks[1], toks[2].upper(),
                                      _hex16(toks[3], lineno)))
        else:
            raise ObjSyntaxError(lineno, f"unknown record letter {toks[0]!r}")

    if rec is not None:
        raise CountMismatch(
            f"end of file: record {rec.space} {rec.start:04X} has "
            f"{len(rec.words)} of {want} words")
    if not header_seen:
        raise ObjSyntaxError(1, "empty file (missing DPX25 header)")
    return img
