"""LPC analysis front end and the frame-file format.

Analysis is the classical autocorrelation method: Hamming window,
normalized autocorrelation, Levinson-Durbin recursion with reflection
coefficients clamped to |k| <= 0.9995 for stability, voicing decided by
the peak of the normalized raw autocorrelation over the pitch lag range.
Synthesis coefficients are the negated predictor coefficients quantized
to Q13; the per-frame gain is sqrt(residual power per sample) in Q15.

Frame file format (text):

    LPC10 <frame_len> <count>
    V|U <pitch> <gain_hex4> <a1_hex4> ... <a10_hex4>
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .golden import s16

ORDER = 10
PITCH_MIN = 50
PITCH_MAX = 400
VOICING_THRESHOLD = 0.3
K_CLAMP = 0.9995


@dataclass
class LpcFrame:
    a: list[int] = field(default_factory=lambda: [0] * ORDER)  # Q13 codes
    gain: int = 0                   # Q15, 0..32767
    voiced: bool = False
    pitch_period: int = 0           # samples; 0 when unvoiced
    frame_len: int = 200

    @property
    def order(self) -> int:
        return len(self.a)


class DegenerateFrame(Exception):
    """All-zero analysis frame (r[0] = 0)."""


def levinson_durbin(r, order: int):
    """Solve the autocorrelation normal equations.

    Returns (a[0..order] with a[0] = 1, E, k[1..order]); reflection
    coefficients are clamped to +/-K_CLAMP before each update.
    """
    a = np.zeros(order + 1)
    a[0] = 1.0
    e = float(r[0])
    ks = []
    for i in range(1, order + 1):
        acc = r[i] + float(np.dot(a[1:i], r[i - 1:0:-1]))
        k = -acc / e if e > 0.0 else 0.0
        k = max(-K_CLAMP, min(K_CLAMP, k))
        ks.append(k)
        prev = a.copy()
        a[i] = k
        for j in range(1, i):
            a[j] = prev[j] + k * prev[i - j]
        e *= (1.0 - k * k)
    return a, e, ks


def _detect_pitch(frame: np.ndarray) -> tuple[bool, int]:
    energy = float(np.dot(frame, frame))
    if energy <= 0.0:
        return False, 0
    hi = min(PITCH_MAX, len(frame) - 1)
    best_lag = 0
    best = 0.0
    for lag in range(PITCH_MIN, hi + 1):
        c = float(np.dot(frame[lag:], frame[:-lag])) / energy
        if c > best:
            best = c
            best_lag = lag
    return best > VOICING_THRESHOLD, best_lag


def analyze_frame(frame: np.ndarray, order: int = ORDER) -> LpcFrame:
    n = len(frame)
    w = np.hamming(n)
    xw = frame * w
    r = np.array([float(np.dot(xw[j:], xw[:n - j])) for j in range(order + 1)])
    r /= n                                       # per-sample normalization
    out = LpcFrame(frame_len=n)
    if r[0] <= 0.0:
        return out                               # silent: gain 0, unvoiced
    a, e, _ = levinson_durbin(r, order)
    codes = []
    for j in range(1, order + 1):
        c = int(math.floor(-a[j] * 8192.0 + 0.5))
        codes.append(max(-32768, min(32767, c)) & 0xFFFF)
    out.a = codes
    g = math.sqrt(max(e, 0.0))
    out.gain = max(0, min(32767, int(math.floor(g * 32768.0 + 0.5))))
    out.voiced, out.pitch_period = _detect_pitch(frame)
    if not out.voiced:
        out.pitch_period = 0
    return out


def lpc_analyze(samples, order: int = ORDER, frame_len: int = 200,
                hop: int = 200) -> list[LpcFrame]:
    """Analyze a float signal in [-1, 1) into LPC frames.

    Trailing samples that do not fill a frame are dropped.
    """
    if order != ORDER:
        raise ValueError("only order 10 is supported")
    x = np.asarray(samples, dtype=float)
    if len(x) < frame_len:
        raise ValueError("need at least one full frame of samples")
    frames = []
    for start in range(0, len(x) - frame_len + 1, hop):
        frames.append(analyze_frame(x[start:start + frame_len], order))
    return frames


# -- frame files -------------------------------------------------------------

def write_frames(frames: list[LpcFrame]) -> str:
    if not frames:
        raise ValueError("no frames")
    flen = frames[0].frame_len
    out = [f"LPC10 {flen} {len(frames)}"]
    for fr in frames:
        if fr.frame_len != flen:
            raise ValueError("mixed frame lengths")
        kind = "V" if fr.voiced else "U"
        a = " ".join(f"{c & 0xFFFF:04X}" for c in fr.a)
        out.append(f"{kind} {fr.pitch_period} {fr.gain & 0xFFFF:04X} {a}")
    return "\n".join(out) + "\n"


def read_frames(text: str) -> list[LpcFrame]:
    lines = [ln for ln in (s.strip() for s in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty frame file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "LPC10":
        raise ValueError("bad frame file header")
    flen, count = int(head[1]), int(head[2])
    if len(lines) - 1 != count:
        raise ValueError(f"frame count {count} does not match {len(lines) - 1}")
    frames = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 13 or parts[0] not in ("V", "U"):
            raise ValueError(f"bad frame line {ln!r}")
        voiced = parts[0] == "V"
        pitch = int(parts[1])
        if voiced and not PITCH_MIN <= pitch <= PITCH_MAX:
            raise ValueError(f"voiced pitch {pitch} outside "
                             f"{PITCH_MIN}..{PITCH_MAX}")
        gain = int(parts[2], 16)
        a = [int(t, 16) for t in parts[3:]]
        frames.append(LpcFrame(a=a, gain=gain, voiced=voiced,
                               pitch_period=pitch if voiced else 0,
                               frame_len=flen))
    return frames


def synthesis_float_coeff(frame: LpcFrame, i: int) -> float:
    """a_i as a float (code / 8192); helper for analysis verification."""
    return s16(frame.a[i]) / 8192.0
