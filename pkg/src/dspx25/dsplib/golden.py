"""Bit-exact integer oracles for the shipped assembly routines.

These models mirror the C25 arithmetic pipeline exactly: products are
signed 16x16, accumulation wraps mod 2^32 (OVM=0), rounding is
round-half-up (add 2^(q-1) before an arithmetic right shift), and results
saturate to 16 bits at the output.  Intermediate 16-bit stores truncate
like SACH does.  A routine's assembly implementation is correct iff it
reproduces these functions word for word.

The idealized formulas (no 32-bit wrap, no temp truncation) coincide with
these models when coefficient sums stay inside sum|h| <= 32767 and FFT
inputs inside half scale; the randomized equivalence tests respect those
bounds, so the models double as the spec-level oracles.

All sample/coefficient values cross these APIs as unsigned 16-bit memory
words; signedness is an interpretation applied internally.
"""

from __future__ import annotations

import math

MASK16 = 0xFFFF
MASK32 = 0xFFFFFFFF

LFSR_TAPS = 0xB400


def s16(v: int) -> int:
    v &= MASK16
    return v - 0x10000 if v & 0x8000 else v


def s32(v: int) -> int:
    v &= MASK32
    return v - 0x100000000 if v & 0x80000000 else v


def sat16(v: int) -> int:
    if v > 32767:
        return 32767
    if v < -32768:
        return -32768
    return v


def rhs(v: int, shift: int) -> int:
    """Round-half-up arithmetic right shift (the C25 rounding idiom)."""
    if shift == 0:
        return v
    return (v + (1 << (shift - 1))) >> shift


def golden_fir(x: list[int], h: list[int], q: int) -> list[int]:
    """FIR oracle: y[n] = sat16(rhs(sum_k h[k]*x[n-k], q)), integer exact.

    Accumulation wraps mod 2^32 like the hardware MAC chain.
    """
    if not x or not h:
        raise ValueError("x and h must be non-empty")
    if not 0 <= q <= 15:
        raise ValueError("q outside 0..15")
    hs = [s16(v) for v in h]
    xs = [s16(v) for v in x]
    rnd = (1 << (q - 1)) if q else 0
    out = []
    for n in range(len(xs)):
        acc = rnd
        for k, hk in enumerate(hs):
            if n - k < 0:
                break
            acc += hk * xs[n - k]
        v = s32(acc) >> q
        out.append(sat16(v) & MASK16)
    return out


def golden_iir_biquad(x: list[int], coeffs: dict) -> list[int]:
    """Direct-form-I biquad with Q13 coefficients, 32-bit accumulation.

    y[n] = sat16(rhs(b0*x[n] + b1*x[n-1] + b2*x[n-2]
                     - a1*y[n-1] - a2*y[n-2], 13))
    """
    b0, b1, b2 = coeffs["b0"], coeffs["b1"], coeffs["b2"]
    a1, a2 = coeffs["a1"], coeffs["a2"]
    for c in (b0, b1, b2, a1, a2):
        if not -32767 <= s16(c) <= 32767:
            raise ValueError("coefficient magnitude must stay below 4.0 (Q13)")
    b0, b1, b2, a1, a2 = (s16(b0), s16(b1), s16(b2), s16(a1), s16(a2))
    x1 = x2 = y1 = y2 = 0
    out = []
    for w in x:
        xn = s16(w)
        acc = 4096 + b0 * xn + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2
        y = sat16(s32(acc) >> 13)
        x2, x1 = x1, xn
        y2, y1 = y1, y
        out.append(y & MASK16)
    return out


def fft_twiddles(n: int) -> list[tuple[int, int]]:
    """Q15 twiddle codes (cos, -sin) for W_N^k, k = 0..N/2-1."""
    out = []
    for k in range(n // 2):
        th = 2.0 * math.pi * k / n
        c = math.floor(math.cos(th) * 32768.0 + 0.5)
        s = math.floor(-math.sin(th) * 32768.0 + 0.5)
        out.append((max(-32768, min(32767, c)), max(-32768, min(32767, s))))
    return out


def bit_reverse(i: int, bits: int) -> int:
    r = 0
    for _ in range(bits):
        r = (r << 1) | (i & 1)
        i >>= 1
    return r


def golden_fft_q15(x: list[tuple[int, int]]) -> tuple[list[tuple[int, int]], int]:
    """Radix-2 DIT FFT, unconditional half scaling per stage.

    Input: N (re, im) word pairs in natural order, N a power of two.
    Returns (bins in natural order, scale = log2 N); output is the exact
    FFT divided by N.  Butterfly temporaries truncate to 16 bits exactly
    as the assembly's SACH stores do.
    """
    n = len(x)
    m = n.bit_length() - 1
    if n < 2 or (1 << m) != n:
        raise ValueError("N must be a power of two >= 2")
    tw = fft_twiddles(n)
    re = [0] * n
    im = [0] * n
    for i, (r, s) in enumerate(x):
        j = bit_reverse(i, m)
        re[j] = s16(r)
        im[j] = s16(s)
    for stage in range(m):
        half = 1 << stage
        step = half << 1
        tstride = n >> (stage + 1)
        for base in range(0, n, step):
            for j in range(half):
                a = base + j
                b = a + half
                wr, wi = tw[j * tstride]
                br, bi = re[b], im[b]
                tr = s16(((br * wr - bi * wi + 0x4000) >> 15) & MASK16)
                ti = s16(((br * wi + bi * wr + 0x4000) >> 15) & MASK16)
                ar, ai = re[a], im[a]
                re[a] = s16(((ar + tr + 1) >> 1) & MASK16)
                im[a] = s16(((ai + ti + 1) >> 1) & MASK16)
                re[b] = s16(((ar - tr + 1) >> 1) & MASK16)
                im[b] = s16(((ai - ti + 1) >> 1) & MASK16)
    return [(re[i] & MASK16, im[i] & MASK16) for i in range(n)], m


class Lfsr:
    """16-bit maximal-length LFSR, taps mask 0xB400 (Galois form).

    The output bit is the bit shifted out; the assembly implements the
    identical update, keeping noise excitation bit-exact across both.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK16
        if self.state == 0:
            self.state = 1          # all-zero state is a fixed point

    def next_bit(self) -> int:
        bit = self.state & 1
        self.state >>= 1
        if bit:
            self.state ^= LFSR_TAPS
        return bit


def golden_lpc_synth(frames, seed: int) -> list[int]:
    """LPC synthesis oracle: all-pole Q13 filter over pulse/noise excitation.

    Per sample: e = +gain on a pitch pulse, +/-gain from the LFSR when
    unvoiced; y[n] = sat16((wrap32(4096 + sum a_i*y[n-i]) >> 13) + e).
    The pulse phase counter and LFSR state persist across frames.
    """
    lfsr = Lfsr(seed)
    hist = [0] * 10                 # y[n-1] .. y[n-10], signed
    phase = 0
    out = []
    for fr in frames:
        a = [s16(c) for c in fr.a]
        if len(a) != 10:
            raise ValueError("synthesis expects order-10 frames")
        gain = fr.gain & 0x7FFF
        for _ in range(fr.frame_len):
            if fr.voiced:
                if phase == 0:
                    e = gain
                    phase = fr.pitch_period - 1
                else:
                    e = 0
                    phase -= 1
            else:
                e = gain if lfsr.next_bit() else -gain
            acc = 4096
            for i in range(10):
                acc += a[i] * hist[i]
            v = (s32(acc) >> 13) + e
            y = sat16(v)
            hist = [y] + hist[:9]
            out.append(y & MASK16)
    return out


def dac_code(word: int) -> int:
    """12-bit DAC code the synthesis assembly emits for an output word."""
    return s16(word) >> 4
