"""Demo program builders: self-contained C25 assembly plus data tables.

Each builder returns a DemoProgram whose source assembles stand-alone
(the ADDA2 interface comes from the shipped adda2.inc) and whose meta
dict names every host-visible address, so tests and the CLI can write
inputs and read results through the host window or memory arrays.

The generated arithmetic mirrors dsplib.golden exactly: rounding constants
before arithmetic shifts, wrap-mod-2^32 MAC chains, SACH-truncated
temporaries and a branch-chain 16-bit saturation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..asm import assemble
from ..board import Board
from .golden import fft_twiddles, s16
from .lpc import LpcFrame

ASM_DIR = os.path.join(os.path.dirname(__file__), "asm")

MODE_BATCH = "batch"
MODE_POLLING = "polling"
MODE_INTERRUPT = "interrupt"


class ParamError(Exception):
    pass


@dataclass
class DemoProgram:
    kind: str
    source: str
    meta: dict = field(default_factory=dict)

    def assemble_image(self):
        r = assemble(self.source, include_dirs=[ASM_DIR],
                     name=f"<{self.kind} demo>")
        if r.object is None:
            msgs = "; ".join(str(d.message) for d in r.diagnostics)
            raise ParamError(f"{self.kind} demo failed to assemble: {msgs}")
        return r.object

    def fresh_board(self, wait_states: int = 0, sample_rate: int = 25000) -> Board:
        b = Board(wait_states=wait_states, sample_rate=sample_rate)
        b.load(self.assemble_image())
        return b


def build_demo(kind: str, params: dict | None = None) -> DemoProgram:
    params = dict(params or {})
    if kind == "loopback":
        return build_loopback(**params)
    if kind == "fir":
        return build_fir(**params)
    if kind == "iir":
        return build_iir(**params)
    if kind == "fft":
        return build_fft(**params)
    if kind == "lpc_synth":
        return build_synth(**params)
    raise ParamError(f"unknown demo kind {kind!r}")


# -- the 16-bit saturation idiom (ACC holds the value, SXM=1) -----------------

_SAT = """\
        SBLK 7FFFh
        BGZ  {p}HI
        ADLK 7FFFh
        ADLK 1,15
        BLZ  {p}LO
        SBLK 1,15
        B    {p}OK
{p}HI   LALK 7FFFh
        B    {p}OK
{p}LO   LALK 8000h
{p}OK"""


def _sat(prefix: str) -> str:
    return _SAT.format(p=prefix)


# -- loopback -----------------------------------------------------------------

def build_loopback(mode: str = MODE_POLLING, gain_code: int = 1,
                   start_codec: bool = True) -> DemoProgram:
    """Read ADC, write DAC, every sample; polling or interrupt driven."""
    if not 0 <= gain_code <= 5:
        raise ParamError("gain code outside 0..5")
    ctrl_int = 1 if mode == MODE_INTERRUPT else 0
    ctrl = 0x10 | (gain_code << 1) | ctrl_int
    start = ""
    if start_codec:
        start = f"""\
        LALK {ctrl}
        SACL CTLW
        OUT  CTLW,CTRLP
"""
    if mode == MODE_POLLING:
        body = f"""\
        .title "adda2 loopback (polling)"
        .include "adda2.inc"
CTLW    .equ 60h
STAT    .equ 61h
MASK1   .equ 62h
SAMP    .equ 63h
        LDPK 0
        SSXM
        LACK 1
        SACL MASK1
{start}POLL    IN   STAT,STATP
        LAC  STAT
        AND  MASK1
        BZ   POLL
        IN   SAMP,ADCP
        OUT  SAMP,DACP
        B    POLL
        .end
"""
    elif mode == MODE_INTERRUPT:
        body = f"""\
        .title "adda2 loopback (interrupt)"
        .include "adda2.inc"
CTLW    .equ 60h
SAMP    .equ 63h
        B    MAIN
        .org 2
        B    ISR            ; INT0 vector
        .org 20h
MAIN    LDPK 0
        SSXM
        LACK 1
        SACL 4              ; IMR: enable INT0
{start}        EINT
WAIT    IDLE
        B    WAIT
ISR     IN   SAMP,ADCP
        OUT  SAMP,DACP
        EINT
        RET
        .end
"""
    else:
        raise ParamError(f"loopback mode {mode!r} not one of polling/interrupt")
    return DemoProgram("loopback", body, {"mode": mode, "ctrl": ctrl})


# -- FIR ----------------------------------------------------------------------

FIR_XIN = 0x0800
FIR_YOUT = 0x4000
FIR_NCOUNT = 0x08
FIR_MAXLEN = 0x3800


def build_fir(h: list[int], q: int = 0) -> DemoProgram:
    """Block FIR: host writes NCOUNT and samples at XIN, reads YOUT."""
    n = len(h)
    if not 1 <= n <= 96:
        raise ParamError("tap count outside 1..96")
    if not 0 <= q <= 15:
        raise ParamError("shift q outside 0..15")
    rnd = f"        LALK 1,{q - 1}" if q else "        ZAC"
    shift = f"        RPTK {q - 1}\n        SFR\n" if q else ""
    taps = ",".join(f"0{v & 0xFFFF:04X}h" for v in reversed(h))
    src = f"""\
        .title "block fir ({n} taps, q={q})"
NCOUNT  .equ {FIR_NCOUNT:02X}h
TMP     .equ 09h
LINE    .equ 10h
XIN     .equ {FIR_XIN:04X}h
YOUT    .equ {FIR_YOUT:04X}h
        LDPK 0
        SSXM
        SPM  0
        ROVM
        ZAC
        LRLK AR1,LINE
        LARP AR1
        RPTK {n}
        SACL *+
        LRLK AR2,XIN
        LRLK AR3,YOUT
        LAC  NCOUNT
        SUBK 1
        SACL TMP
        LAR  AR4,TMP
SLOOP   LARP AR2
        LAC  *+
        SACL LINE
{rnd}
        MPYK 0
        LRLK AR1,LINE+{n - 1}
        LARP AR1
        RPTK {n - 1}
        MACD HTAB,*-
        APAC
{shift}{_sat("S")}   LARP AR3
        SACL *+
        LARP AR4
        BANZ SLOOP
        IDLE
FIN     B    FIN
HTAB    .word {taps}
        .end
"""
    return DemoProgram("fir", src, {
        "xin": FIR_XIN, "yout": FIR_YOUT, "ncount": FIR_NCOUNT,
        "taps": n, "q": q, "max_samples": FIR_MAXLEN,
    })


def run_fir_demo(board: Board, meta: dict, x: list[int],
                 max_cycles: int = 20_000_000) -> list[int]:
    if len(x) > meta["max_samples"]:
        raise ParamError("too many samples for the FIR buffers")
    board.cpu.reset()
    board.data[meta["ncount"]] = len(x)
    xin = meta["xin"]
    board.data[xin:xin + len(x)] = [v & 0xFFFF for v in x]
    rep = board.run(max_cycles=max_cycles)
    if rep.halt_reason != "IDLE":
        raise RuntimeError(f"fir demo did not finish: {rep}")
    yout = meta["yout"]
    return board.data[yout:yout + len(x)]


# -- IIR biquad ---------------------------------------------------------------

IIR_XIN = 0x0800
IIR_YOUT = 0x4000
IIR_NCOUNT = 0x08
IIR_COEF = 0x0E          # b0 b1 b2 -a1 -a2
IIR_MAXLEN = 0x3800


def build_iir() -> DemoProgram:
    """Direct-form-I biquad; coefficients are host-written data, so one
    assembly serves any filter: data[0x0E..0x12] = b0 b1 b2 -a1 -a2."""
    src = f"""\
        .title "iir biquad (direct form I, Q13)"
NCOUNT  .equ {IIR_NCOUNT:02X}h
X0      .equ 09h
X1      .equ 0Ah
X2      .equ 0Bh
Y1      .equ 0Ch
Y2      .equ 0Dh
CB0     .equ 0Eh
CB1     .equ 0Fh
CB2     .equ 10h
NA1     .equ 11h
NA2     .equ 12h
TMP     .equ 13h
XIN     .equ {IIR_XIN:04X}h
YOUT    .equ {IIR_YOUT:04X}h
        LDPK 0
        SSXM
        SPM  0
        ROVM
        ZAC
        SACL X0
        SACL X1
        SACL X2
        SACL Y1
        SACL Y2
        LRLK AR2,XIN
        LRLK AR3,YOUT
        LAC  NCOUNT
        SUBK 1
        SACL TMP
        LAR  AR4,TMP
SLOOP   LARP AR2
        LAC  *+
        SACL X0
        LALK 1,12
        LT   X0
        MPY  CB0
        LTA  X1
        MPY  CB1
        LTA  X2
        MPY  CB2
        LTA  Y1
        MPY  NA1
        LTA  Y2
        MPY  NA2
        APAC
        RPTK 12
        SFR
{_sat("S")}   DMOV X1
        DMOV X0
        DMOV Y1
        SACL Y1
        LARP AR3
        SACL *+
        LARP AR4
        BANZ SLOOP
        IDLE
FIN     B    FIN
        .end
"""
    return DemoProgram("iir", src, {
        "xin": IIR_XIN, "yout": IIR_YOUT, "ncount": IIR_NCOUNT,
        "coef": IIR_COEF, "max_samples": IIR_MAXLEN,
    })


def run_iir_demo(board: Board, meta: dict, x: list[int], coeffs: dict,
                 max_cycles: int = 20_000_000) -> list[int]:
    if len(x) > meta["max_samples"]:
        raise ParamError("too many samples for the IIR buffers")
    board.cpu.reset()
    c = meta["coef"]
    board.data[c + 0] = coeffs["b0"] & 0xFFFF
    board.data[c + 1] = coeffs["b1"] & 0xFFFF
    board.data[c + 2] = coeffs["b2"] & 0xFFFF
    board.data[c + 3] = (-s16(coeffs["a1"])) & 0xFFFF
    board.data[c + 4] = (-s16(coeffs["a2"])) & 0xFFFF
    board.data[meta["ncount"]] = len(x)
    xin = meta["xin"]
    board.data[xin:xin + len(x)] = [v & 0xFFFF for v in x]
    rep = board.run(max_cycles=max_cycles)
    if rep.halt_reason != "IDLE":
        raise RuntimeError(f"iir demo did not finish: {rep}")
    yout = meta["yout"]
    return board.data[yout:yout + len(x)]


# -- FFT ----------------------------------------------------------------------

FFT_INRE = 0x0800
FFT_INIM = 0x0C00
FFT_WRE = 0x1000
FFT_WIM = 0x1400
FFT_TWR = 0x1800
FFT_TWI = 0x1A00

_BFLY = """\
        LRLK AR1,{ra}
        LRLK AR2,{rb}
        LRLK AR3,{ia}
        LRLK AR4,{ib}
        LRLK AR5,{wr}
        LRLK AR6,{wi}
        LARP AR2
        LT   *,AR5
        MPY  *,AR4
        PAC
        LT   *,AR6
        MPY  *,AR2
        SPAC
        ADLK 1,14
        SACH TR,1
        LT   *,AR6
        MPY  *,AR4
        PAC
        LT   *,AR5
        MPY  *,AR1
        APAC
        ADLK 1,14
        SACH TI,1
        LAC  *,14
        SUB  TR,14
        ADLK 1,14
        SACH TBR,1
        LAC  *,14
        ADD  TR,14
        ADLK 1,14
        SACH *,1,AR2
        LAC  TBR
        SACL *,0,AR3
        LAC  *,14
        SUB  TI,14
        ADLK 1,14
        SACH TBI,1
        LAC  *,14
        ADD  TI,14
        ADLK 1,14
        SACH *,1,AR4
        LAC  TBI
        SACL *
"""


def build_fft(n: int) -> DemoProgram:
    """Radix-2 DIT Q15 FFT, half scaling per stage, unrolled butterflies.

    Host writes natural-order input at INRE/INIM, runs, and reads bins
    from WRE/WIM.  Bit reversal happens on-chip with *BR0+ addressing.
    """
    m = n.bit_length() - 1
    if n < 8 or n > 1024 or (1 << m) != n:
        raise ParamError("FFT size must be a power of two in 8..1024")
    tw = fft_twiddles(n)
    parts = [f"""\
        .title "radix-2 DIT fft, N={n}"
TR      .equ 08h
TI      .equ 09h
TBR     .equ 0Ah
TBI     .equ 0Bh
        LDPK 0
        SSXM
        SPM  0
        ROVM
        LRLK AR0,{n // 2}
        LRLK AR1,{FFT_INRE}
        LRLK AR2,{FFT_WRE}
        LRLK AR7,{n - 1}
CPR     LARP AR1
        LAC  *+,0,AR2
        SACL *BR0+,0,AR7
        BANZ CPR,*-,AR1
        LRLK AR1,{FFT_INIM}
        LRLK AR2,{FFT_WIM}
        LRLK AR7,{n - 1}
CPI     LARP AR1
        LAC  *+,0,AR2
        SACL *BR0+,0,AR7
        BANZ CPI,*-,AR1
"""]
    for stage in range(m):
        half = 1 << stage
        step = half << 1
        tstride = n >> (stage + 1)
        for base in range(0, n, step):
            for j in range(half):
                a = base + j
                b = a + half
                t = j * tstride
                parts.append(_BFLY.format(
                    ra=FFT_WRE + a, rb=FFT_WRE + b,
                    ia=FFT_WIM + a, ib=FFT_WIM + b,
                    wr=FFT_TWR + t, wi=FFT_TWI + t))
    def words(vals):
        lines = []
        for i in range(0, len(vals), 8):
            row = ",".join(f"0{v & 0xFFFF:04X}h" for v in vals[i:i + 8])
            lines.append(f"        .word {row}")
        return "\n".join(lines)
    parts.append(f"""\
        IDLE
FIN     B    FIN
        .dseg
        .org {FFT_TWR}
{words([c for c, _ in tw])}
        .org {FFT_TWI}
{words([s for _, s in tw])}
        .end
""")
    return DemoProgram("fft", "".join(parts), {
        "n": n, "inre": FFT_INRE, "inim": FFT_INIM,
        "outre": FFT_WRE, "outim": FFT_WIM,
    })


def run_fft_demo(board: Board, meta: dict, pairs: list[tuple[int, int]],
                 max_cycles: int = 5_000_000) -> list[tuple[int, int]]:
    n = meta["n"]
    if len(pairs) != n:
        raise ParamError(f"need exactly {n} input pairs")
    board.cpu.reset()
    for i, (r, s) in enumerate(pairs):
        board.data[meta["inre"] + i] = r & 0xFFFF
        board.data[meta["inim"] + i] = s & 0xFFFF
    rep = board.run(max_cycles=max_cycles)
    if rep.halt_reason != "IDLE":
        raise RuntimeError(f"fft demo did not finish: {rep}")
    return [(board.data[meta["outre"] + i], board.data[meta["outim"] + i])
            for i in range(n)]


# -- LPC synthesis ------------------------------------------------------------

SYNTH_FTAB = 0x0200
SYNTH_OUT = 0x4000
SYNTH_OUT_CAP = 0x10000 - SYNTH_OUT


def build_synth(frames: list[LpcFrame], seed: int = 1,
                mode: str = MODE_BATCH, gain_code: int = 1) -> DemoProgram:
    """Order-10 LPC synthesizer over an embedded frame table.

    batch: tight compute loop, results only in the output buffer.
    polling/interrupt: paced by the ADDA2 sample clock, each result also
    goes to the DAC (shifted to 12 bits); the codec is stopped at the end.
    """
    if not frames:
        raise ParamError("need at least one frame")
    if any(f.order != 10 for f in frames):
        raise ParamError("synthesis expects order-10 frames")
    flen = frames[0].frame_len
    if any(f.frame_len != flen for f in frames):
        raise ParamError("mixed frame lengths")
    total = flen * len(frames)
    if total > SYNTH_OUT_CAP:
        raise ParamError(f"{total} samples exceed the output buffer")
    if mode not in (MODE_BATCH, MODE_POLLING, MODE_INTERRUPT):
        raise ParamError(f"bad synth mode {mode!r}")
    if len(frames) * 13 > SYNTH_OUT - SYNTH_FTAB:
        raise ParamError("too many frames for the frame table")

    rows = []
    for fr in frames:
        vals = [1 if fr.voiced else 0, fr.pitch_period, fr.gain & 0xFFFF]
        vals += [c & 0xFFFF for c in reversed(fr.a)]     # a10 first for MACD
        rows.append("        .word " + ",".join(f"0{v:04X}h" for v in vals))
    table = "\n".join(rows)

    ctrl_on = 0x10 | (gain_code << 1) | (1 if mode == MODE_INTERRUPT else 0)
    ctrl_off = ctrl_on & ~0x10

    common_equ = f"""\
        .include "adda2.inc"
VFLAG   .equ 08h
PITCH   .equ 09h
GAIN    .equ 0Ah
PHASE   .equ 0Bh
LFSR    .equ 0Ch
EXC     .equ 0Dh
SCNT    .equ 0Eh
FCNT    .equ 0Fh
ONE     .equ 10h
TAPS    .equ 11h
DACW    .equ 12h
STAT    .equ 13h
CTLW    .equ 14h
YNEW    .equ 20h
YEND    .equ 29h
FTAB    .equ {SYNTH_FTAB:04X}h
OUTB    .equ {SYNTH_OUT:04X}h
"""

    init = f"""\
        LDPK 0
        SSXM
        SPM  0
        ROVM
        ZAC
        LRLK AR1,YNEW
        LARP AR1
        RPTK 10
        SACL *+
        SACL VFLAG
        SACL PITCH
        SACL GAIN
        SACL PHASE
        SACL EXC
        SACL SCNT
        LALK {seed & 0xFFFF}
        SACL LFSR
        LACK 1
        SACL ONE
        LALK 0B400h
        SACL TAPS
        LALK {len(frames)}
        SACL FCNT
        LRLK AR5,FTAB
        LRLK AR3,OUTB
"""

    sample_core = f"""\
        ; excitation
        LAC  VFLAG
        BZ   UNV
        LAC  PHASE
        BNZ  NPULS
        LAC  PITCH
        SUBK 1
        SACL PHASE
        LAC  GAIN
        SACL EXC
        B    EXCD
NPULS   SUBK 1
        SACL PHASE
        ZAC
        SACL EXC
        B    EXCD
UNV     LAC  LFSR
        AND  ONE
        BZ   LF0
        RSXM
        LAC  LFSR
        SFR
        XOR  TAPS
        SACL LFSR
        SSXM
        LAC  GAIN
        SACL EXC
        B    EXCD
LF0     RSXM
        LAC  LFSR
        SFR
        SACL LFSR
        SSXM
        ZAC
        SUB  GAIN
        SACL EXC
EXCD    ; all-pole filter, Q13 coefficients from the frame scratch
        LALK 1,12
        MPYK 0
        LRLK AR2,YEND
        LARP AR2
        RPTK 9
        MACD CTAB,*-
        APAC
        RPTK 12
        SFR
        ADD  EXC
{_sat("Y")}   SACL YNEW
        LARP AR3
        SACL *+
"""

    frame_load = """\
        LARP AR5
        LAC  *+
        SACL VFLAG
        LAC  *+
        SACL PITCH
        LAC  *+
        SACL GAIN
        LALK CTAB
        RPTK 9
        TBLW *+
"""

    if mode == MODE_BATCH:
        src = f"""\
        .title "lpc synthesis (batch)"
{common_equ}{init}FRAME   {frame_load.lstrip()}        LALK {flen}
        SACL SCNT
SAMP    {sample_core.lstrip()}        LAC  SCNT
        SUBK 1
        SACL SCNT
        BNZ  SAMP
        LAC  FCNT
        SUBK 1
        SACL FCNT
        BNZ  FRAME
DONE    IDLE
        B    DONE
CTAB    .bss 10
        .dseg
        .org FTAB
{table}
        .end
"""
    elif mode == MODE_POLLING:
        src = f"""\
        .title "lpc synthesis (polling DAC)"
{common_equ}{init}        LALK {ctrl_on}
        SACL CTLW
        OUT  CTLW,CTRLP
FRAME   {frame_load.lstrip()}        LALK {flen}
        SACL SCNT
SAMP    IN   STAT,STATP
        LAC  STAT
        AND  ONE
        BZ   SAMP
        IN   STAT,ADCP
{sample_core.rstrip()}
        RPTK 3
        SFR
        SACL DACW
        OUT  DACW,DACP
        LAC  SCNT
        SUBK 1
        SACL SCNT
        BNZ  SAMP
        LAC  FCNT
        SUBK 1
        SACL FCNT
        BNZ  FRAME
FLUSH   IN   STAT,STATP    ; one more event drains the last DAC word
        LAC  STAT
        AND  ONE
        BZ   FLUSH
        LALK {ctrl_off}
        SACL CTLW
        OUT  CTLW,CTRLP
DONE    IDLE
        B    DONE
CTAB    .bss 10
        .dseg
        .org FTAB
{table}
        .end
"""
    else:
        src = f"""\
        .title "lpc synthesis (interrupt DAC)"
{common_equ}        B    MAIN
        .org 2
        B    ISR            ; INT0 vector
        .org 20h
MAIN    {init.lstrip()}        LACK 1
        SACL 4              ; IMR: INT0
        LALK {ctrl_on}
        SACL CTLW
        OUT  CTLW,CTRLP
        EINT
WAIT    IDLE
        B    WAIT
ISR     LAC  SCNT
        BNZ  DOSAMP
        LAC  FCNT
        BNZ  NEXTF
        LALK {ctrl_off}
        SACL CTLW
        OUT  CTLW,CTRLP
        RET                  ; INTM stays set: main IDLE halts
NEXTF   SUBK 1
        SACL FCNT
        LARP AR5
        LAC  *+
        SACL VFLAG
        LAC  *+
        SACL PITCH
        LAC  *+
        SACL GAIN
        LALK CTAB
        RPTK 9
        TBLW *+
        LALK {flen}
        SACL SCNT
DOSAMP  {sample_core.lstrip()}        RPTK 3
        SFR
        SACL DACW
        OUT  DACW,DACP
        LAC  SCNT
        SUBK 1
        SACL SCNT
        EINT
        RET
CTAB    .bss 10
        .dseg
        .org FTAB
{table}
        .end
"""
    return DemoProgram("lpc_synth", src, {
        "mode": mode, "out": SYNTH_OUT, "total": total,
        "frames": len(frames), "frame_len": flen, "ctrl_on": ctrl_on,
    })


def run_synth_batch(board: Board, meta: dict,
                    max_cycles: int = 100_000_000):
    board.cpu.reset()
    rep = board.run(max_cycles=max_cycles)
    if rep.halt_reason != "IDLE":
        raise RuntimeError(f"synth demo did not finish: {rep}")
    out = meta["out"]
    return board.data[out:out + meta["total"]], rep
