"""Audio and script file handling: WAV (PCM 16-bit mono), CSV floats,
digital-input event scripts (lines of `cycle value`, value hex 0-7)."""

from __future__ import annotations

import struct
import wave


class AudioFormatError(Exception):
    pass


def read_wav(path: str) -> tuple[list[float], int]:
    """Load a PCM 16-bit mono WAV; returns (samples in [-1, 1), rate)."""
    with wave.open(path, "rb") as wf:
        if wf.getnchannels() != 1:
            raise AudioFormatError(f"{path}: WAV must be mono")
        if wf.getsampwidth() != 2:
            raise AudioFormatError(f"{path}: WAV must be 16-bit PCM")
        rate = wf.getframerate()
        n = wf.getnframes()
        raw = wf.readframes(n)
    ints = struct.unpack(f"<{n}h", raw)
    return [v / 32768.0 for v in ints], rate


def write_wav(path: str, samples_i16, rate: int) -> None:
    """Write 16-bit mono PCM; samples are integer codes -32768..32767."""
    with wave.open(path, "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(rate)
        wf.writeframes(struct.pack(f"<{len(samples_i16)}h",
                                   *[max(-32768, min(32767, int(v)))
                                     for v in samples_i16]))


def dac_codes_to_i16(codes) -> list[int]:
    """12-bit DAC codes (-2048..2047) to full-scale 16-bit samples."""
    return [c * 16 for c in codes]


def read_csv_floats(path: str) -> list[float]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            for tok in line.replace(",", " ").split():
                try:
                    out.append(float(tok))
                except ValueError:
                    raise AudioFormatError(
                        f"{path}:{lineno}: bad float {tok!r}") from None
    return out


def write_csv_floats(path: str, values) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in values:
            fh.write(f"{v}\n")


def read_din_script(path: str) -> list[tuple[int, int]]:
    """Digital-input events: `cycle value` per line, value hex 0-7."""
    events = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise AudioFormatError(f"{path}:{lineno}: need `cycle value`")
            try:
                cycle = int(parts[0], 0)
                value = int(parts[1], 16)
            except ValueError:
                raise AudioFormatError(
                    f"{path}:{lineno}: bad numbers {line!r}") from None
            if not 0 <= value <= 7:
                raise AudioFormatError(f"{path}:{lineno}: value outside 0..7")
            events.append((cycle, value))
    events.sort()
    return events
