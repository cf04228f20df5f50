"""Applications library: bit-exact golden models, LPC analysis, and the
generated C25 assembly demos they verify."""

from .golden import (Lfsr, dac_code, fft_twiddles, golden_fft_q15,
                     golden_fir, golden_iir_biquad, golden_lpc_synth, rhs,
                     s16, s32, sat16)
from .lpc import (LpcFrame, levinson_durbin, lpc_analyze, read_frames,
                  write_frames)
from .demos import (ASM_DIR, DemoProgram, ParamError, build_demo,
                    build_fft, build_fir, build_iir, build_loopback,
                    build_synth, run_fft_demo, run_fir_demo, run_iir_demo,
                    run_synth_batch)

__all__ = [
    "Lfsr", "dac_code", "fft_twiddles", "golden_fft_q15", "golden_fir",
    "golden_iir_biquad", "golden_lpc_synth", "rhs", "s16", "s32", "sat16",
    "LpcFrame", "levinson_durbin", "lpc_analyze", "read_frames",
    "write_frames", "ASM_DIR", "DemoProgram", "ParamError", "build_demo",
    "build_fft", "build_fir", "build_iir", "build_loopback", "build_synth",
    "run_fft_demo", "run_fir_demo", "run_iir_demo", "run_synth_batch",
]
