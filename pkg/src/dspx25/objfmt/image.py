"""In-memory object image: program/data records, entry point, symbols."""

from __future__ import annotations

from dataclasses import dataclass, field


class ObjectFormatError(Exception):
    pass


class RangeError(ObjectFormatError):
    pass


class OverlapError(ObjectFormatError):
    pass


@dataclass
class Record:
    space: str                 # "P" or "D"
    start: int
    words: list[int] = field(default_factory=list)

    @property
    def end(self) -> int:      # one past the last word
        return self.start + len(self.words)


@dataclass
class Symbol:
    name: str
    space: str                 # "P", "D" or "A" (absolute)
    value: int


@dataclass
class ObjectImage:
    entry: int = 0
    records: list[Record] = field(default_factory=list)
    symbols: list[Symbol] = field(default_factory=list)

    def validate(self) -> None:
        """Raise RangeError/OverlapError if the image breaks its invariants."""
        if not 0 <= self.entry <= 0xFFFF:
            raise RangeError(f"entry {self.entry:#x} outside 16 bits")
        seen: dict[str, list[Record]] = {"P": [], "D": []}
        for rec in self.records:
            if rec.space not in ("P", "D"):
                raise RangeError(f"bad record space {rec.space!r}")
            if not 0 <= rec.start <= 0xFFFF or rec.end > 0x10000:
                raise RangeError(
                    f"record {rec.space} {rec.start:04X}+{len(rec.words)} "
                    "exceeds 64K words")
            for w in rec.words:
                if not 0 <= w <= 0xFFFF:
                    raise RangeError(f"word {w:#x} outside 16 bits")
            for other in seen[rec.space]:
                if rec.start < other.end and other.start < rec.end:
                    raise OverlapError(
                        f"records overlap in {rec.space} space at "
                        f"{max(rec.start, other.start):04X}")
            seen[rec.space].append(rec)

    def load_into(self, prog: list[int], data: list[int]) -> None:
        """Copy all records into 64K-word program/data memories."""
        for rec in self.records:
            mem = prog if rec.space == "P" else data
            mem[rec.start:rec.start + len(rec.words)] = rec.words

    def total_words(self) -> int:
        return sum(len(r.words) for r in self.records)
