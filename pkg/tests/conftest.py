import pytest

from dspx25.asm import assemble
from dspx25.board import Board


def asm_image(source: str, origin: int = 0):
    r = assemble(source, origin=origin)
    assert r.object is not None, [f"{d.line}: {d.message}" for d in r.diagnostics]
    return r.object


def prog_words(source: str) -> list[int]:
    img = asm_image(source)
    out = []
    for rec in img.records:
        if rec.space == "P":
            out.extend(rec.words)
    return out


@pytest.fixture
def board() -> Board:
    return Board()
