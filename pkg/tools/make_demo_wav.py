"""Generate the bundled demo voice WAV: a deterministic synthetic
vowel sequence (glottal-pulse excitation through fixed formant filters),
1.2 s at 25 kHz.  Checked-in output: src/dspx25/data/demo_voice.wav."""

import math
import os
import struct
import sys
import wave

RATE = 25000
SECONDS = 1.2

# (formant frequencies Hz, formant bandwidths Hz, pitch Hz) per segment;
# pitch periods stay under the 200-sample analysis frame so the
# autocorrelation search can find them
SEGMENTS = [
    ((730, 1090, 2440), (60, 90, 120), 140),     # "ah"
    ((270, 2290, 3010), (60, 90, 120), 160),     # "ee"
    ((300, 870, 2240), (60, 90, 120), 150),      # "oo"
]


def formant_filter(x, freq, bw):
    r = math.exp(-math.pi * bw / RATE)
    th = 2.0 * math.pi * freq / RATE
    a1 = -2.0 * r * math.cos(th)
    a2 = r * r
    g = 1.0 + a1 + a2
    y1 = y2 = 0.0
    out = []
    for v in x:
        y = g * v - a1 * y1 - a2 * y2
        y2, y1 = y1, y
        out.append(y)
    return out


def main():
    n = int(RATE * SECONDS)
    seg_len = n // len(SEGMENTS)
    signal = []
    for formants, bws, pitch in SEGMENTS:
        period = int(RATE / pitch)
        exc = [0.0] * seg_len
        for i in range(0, seg_len, period):
            exc[i] = 1.0
        y = exc
        for f, b in zip(formants, bws):
            y = formant_filter(y, f, b)
        signal.extend(y)
    peak = max(abs(v) for v in signal)
    scale = 0.5 / peak
    fade = RATE // 100
    out = []
    for i, v in enumerate(signal):
        amp = min(1.0, i / fade, (len(signal) - 1 - i) / fade)
        out.append(int(round(v * scale * amp * 32767)))

    path = sys.argv[1] if len(sys.argv) > 1 else \
        os.path.join(os.path.dirname(__file__), "..", "src", "dspx25",
                     "data", "demo_voice.wav")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with wave.open(path, "wb") as wf:
        wf.setnchannels(1)
        wf.setsampwidth(2)
        wf.setframerate(RATE)
        wf.writeframes(struct.pack(f"<{len(out)}h", *out))
    print(f"{path}: {len(out)} samples")


if __name__ == "__main__":
    main()
