# cython: language_level=3, boundscheck=False, initializedcheck=False
"""Register/memory semantics and cycle cost model for the TMS320C25 subset.

This module is written so the identical source also builds as a Cython
extension (`dspx25.isa._engine_c`); keep it free of dataclasses and other
constructs the pure-Python/compiled twin split would disagree on.

Cycle cost model (documented, not claimed silicon-exact):
  cost = width + 1 extra for taken branches/CALL/RET/TRAP
       + W per instruction word fetched + W per operand memory access,
  where W is the configured wait-state count (0..2).  Under a repeat,
  iterations 2..n+1 cost 1 + W per operand access each.  Taking an
  interrupt costs a flat 2 cycles.

Memory-mapped data addresses 0..5 model only IMR (address 4): reads return
the interrupt mask, writes set it (and mirror into the data array so memory
displays stay truthful); the other five cells are inert storage.

On-chip RAM blocks and the CNF remap are not modeled: CNFD/CNFP only toggle
the CNF status bit, and the data-move of DMOV/LTD/MACD works at any data
address.  These are documented deviations from silicon.
"""

from . import defs

MASK16 = 0xFFFF
MASK32 = 0xFFFFFFFF
SIGN32 = 0x80000000

# step events
EV_OK = 0
EV_IDLE = 1
EV_TRAP = 2
EV_ILLEGAL = 3
EV_INT = 4

_VEC = [defs.VECTORS[i] for i in range(6)]

# byte-reverse table for the *BR0 reverse-carry addressing modes
_REV8 = [0] * 256
for _i in range(256):
    _b = _i
    _r = 0
    for _ in range(8):
        _r = (_r << 1) | (_b & 1)
        _b >>= 1
    _REV8[_i] = _r


def _rev16(v):
    return (_REV8[v & 0xFF] << 8) | _REV8[(v >> 8) & 0xFF]


def _s16(v):
    return v - 0x10000 if v & 0x8000 else v


def _s32(v):
    return v - 0x100000000 if v & SIGN32 else v


class Cpu:
    """One TMS320C25 core: registers, status bits, stack, cycle counter.

    Program/data memories are plain 65536-entry lists of ints shared with
    the owning board; `io` is any object with io_in(port) / io_out(port, w).
    """

    def __init__(self, prog=None, data=None, io=None):
        self.prog = prog if prog is not None else [0] * 0x10000
        self.data = data if data is not None else [0] * 0x10000
        self.io = io
        self._w = 0          # wait states
        self._c1 = 1         # per-word fetch cost = 1 + W

        self.acc = 0
        self.preg = 0
        self.treg = 0
        self.ar = [0] * 8
        self.arp = 0
        self.arb = 0
        self.dp = 0
        self.pc = 0
        self.stack = [0] * 8
        self.ov = 0
        self.ovm = 0
        self.intm = 1
        self.tc = 0
        self.sxm = 1
        self.xf = 0
        self.cnf = 0
        self.pm = 0
        self.imr = 0
        self.pending = 0     # bitmask of requested interrupt lines
        self.rptc = 0
        self.cycles = 0

        self._rpt_armed = False
        self.last_int_line = -1
        self.last_illegal_word = -1

    # -- configuration -------------------------------------------------

    def set_wait_states(self, w):
        if not 0 <= w <= 2:
            raise ValueError("wait states must be 0..2")
        self._w = w
        self._c1 = 1 + w

    @property
    def wait_states(self):
        return self._w

    # -- lifecycle -----------------------------------------------------

    def reset(self):
        """Hardware reset: everything cleared except INTM=1, SXM=1.

        The cycle counter survives so performance sessions can span resets.
        """
        self.acc = 0
        self.preg = 0
        self.treg = 0
        self.ar = [0] * 8
        self.arp = 0
        self.arb = 0
        self.dp = 0
        self.pc = 0
        self.stack = [0] * 8
        self.ov = 0
        self.ovm = 0
        self.intm = 1
        self.tc = 0
        self.sxm = 1
        self.xf = 0
        self.cnf = 0
        self.pm = 0
        self.imr = 0
        self.pending = 0
        self.rptc = 0
        self._rpt_armed = False

    def request_interrupt(self, line):
        """Mark an interrupt line pending (a set: repeats collapse)."""
        if not 0 <= line <= 5:
            raise ValueError(f"bad interrupt line {line}")
        self.pending |= 1 << line

    # -- status words ----------------------------------------------------

    def st0(self):
        return ((self.arp << defs.ST0_ARP_SHIFT) | (self.ov << 12)
                | (self.ovm << 11) | defs.ST0_ONE | (self.intm << 9)
                | self.dp)

    def st1(self):
        return ((self.arb << defs.ST1_ARB_SHIFT) | (self.cnf << 12)
                | (self.tc << 11) | (self.sxm << 10) | (self.xf << 4)
                | self.pm)

    def set_st0(self, v):
        # LST semantics: INTM is NOT loaded, ARB unaffected
        self.arp = (v >> 13) & 7
        self.ov = (v >> 12) & 1
        self.ovm = (v >> 11) & 1
        self.dp = v & defs.ST0_DP_MASK

    def set_st1(self, v):
        # LST1 semantics: bits 15-13 load ARB and ARP both
        self.arb = (v >> 13) & 7
        self.arp = self.arb
        self.cnf = (v >> 12) & 1
        self.tc = (v >> 11) & 1
        self.sxm = (v >> 10) & 1
        self.xf = (v >> 4) & 1
        self.pm = v & defs.ST1_PM_MASK

    # -- memory / stack ----------------------------------------------------

    def _dr(self, addr):
        addr &= MASK16
        if addr == 4:
            return self.imr
        return self.data[addr]

    def _dw(self, addr, w):
        addr &= MASK16
        w &= MASK16
        if addr == 4:
            self.imr = w & 0x3F
        self.data[addr] = w

    def _push(self, v):
        s = self.stack
        s.insert(0, v & MASK16)
        s.pop()                      # bottom entry discarded on overflow

    def _pop(self):
        s = self.stack
        v = s.pop(0)
        s.append(s[-1])              # bottom entry replicates on pop
        return v

    # -- operand resolution --------------------------------------------

    def _resolve(self, low):
        """Return the data address for a memory-reference low byte and
        apply any indirect auxiliary-register update (post-access)."""
        if low & 0x80 == 0:
            return (self.dp << 7) | low
        arp = self.arp
        ars = self.ar
        a = ars[arp]
        code = (low >> 4) & 7
        if code == 1:
            ars[arp] = (a - 1) & MASK16
        elif code == 2:
            ars[arp] = (a + 1) & MASK16
        elif code == 5:
            ars[arp] = (a - ars[0]) & MASK16
        elif code == 6:
            ars[arp] = (a + ars[0]) & MASK16
        elif code == 4:
            ars[arp] = _rev16((_rev16(a) - _rev16(ars[0])) & MASK16)
        elif code == 7:
            ars[arp] = _rev16((_rev16(a) + _rev16(ars[0])) & MASK16)
        if low & 0x08:
            self.arb = arp
            self.arp = low & 7
        return a

    # -- arithmetic helpers ----------------------------------------------

    def _acc_add(self, v):
        """32-bit accumulate with OV/OVM handling; v is a signed int."""
        a = self.acc
        if a & SIGN32:
            a -= 0x100000000
        r = a + v
        if r > 0x7FFFFFFF:
            self.ov = 1
            self.acc = 0x7FFFFFFF if self.ovm else r & MASK32
        elif r < -0x80000000:
            self.ov = 1
            self.acc = SIGN32 if self.ovm else r & MASK32
        else:
            self.acc = r & MASK32

    def _pshift(self):
        p = self.preg
        pm = self.pm
        if pm == 0:
            return _s32(p)
        if pm == 1:
            return _s32((p << 1) & MASK32)
        if pm == 2:
            return _s32((p << 4) & MASK32)
        return _s32(p) >> 6

    def _sxv(self, v):
        return _s16(v) if self.sxm else v

    # -- repeat helpers ----------------------------------------------------

    def _take_rpt(self):
        n = self.rptc + 1
        self.rptc = 0
        return n

    def _cost(self, n, acc, width=1, extra=0):
        self.cycles += width * self._c1 + (n - 1) + n * acc * self._w + extra

    # -- the step ---------------------------------------------------------

    def exec_next(self):
        """Execute one instruction (or take a pending interrupt).

        Returns an EV_* event code.  A repeat block counts as one call.
        """
        if self.pending and self.rptc == 0 and not self.intm:
            eff = self.pending & self.imr & 0x3F
            if eff:
                line = (eff & -eff).bit_length() - 1
                self.pending &= ~(1 << line)
                self._push(self.pc)
                self.pc = _VEC[line]
                self.intm = 1
                self.cycles += 2
                self.last_int_line = line
                return EV_INT

        word = self.prog[self.pc]
        hi = word >> 8
        h = _DISPATCH[hi]
        self.pc = (self.pc + 1) & MASK16
        if h is None or (_MEMOP[hi] and (word & 0xF0) == 0xB0):
            self.last_illegal_word = word
            self.rptc = 0
            self._cost(1, 0)
            return EV_ILLEGAL
        ev = h(self, word)
        if self._rpt_armed:
            self._rpt_armed = False
        else:
            self.rptc = 0
        return ev


# ---------------------------------------------------------------------------
#  Instruction handlers.  Each consumes its own repeat count and adds its
#  full cycle cost.  `word` is the first instruction word.
# ---------------------------------------------------------------------------

def _h_add(cpu, word):
    n = cpu._take_rpt()
    sh = (word >> 8) & 0xF
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        cpu._acc_add(cpu._sxv(v) << sh)
    cpu._cost(n, 1)
    return EV_OK


def _h_sub(cpu, word):
    n = cpu._take_rpt()
    sh = (word >> 8) & 0xF
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        cpu._acc_add(-(cpu._sxv(v) << sh))
    cpu._cost(n, 1)
    return EV_OK


def _h_lac(cpu, word):
    n = cpu._take_rpt()
    sh = (word >> 8) & 0xF
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        cpu.acc = (cpu._sxv(v) << sh) & MASK32
    cpu._cost(n, 1)
    return EV_OK


def _h_lar(cpu, word):
    k = (word >> 8) & 7
    v = cpu._dr(cpu._resolve(word & 0xFF))
    cpu.ar[k] = v          # load wins over any indirect update of the same AR
    cpu._cost(1, 1)
    return EV_OK


def _h_sar(cpu, word):
    k = (word >> 8) & 7
    v = cpu.ar[k]          # value before any indirect update
    cpu._dw(cpu._resolve(word & 0xFF), v)
    cpu._cost(1, 1)
    return EV_OK


def _h_mpy(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        cpu.preg = (_s16(cpu.treg) * _s16(v)) & MASK32
    cpu._cost(n, 1)
    return EV_OK


def _h_lt(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu.treg = cpu._dr(cpu._resolve(word & 0xFF))
    cpu._cost(n, 1)
    return EV_OK


def _h_lta(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu._acc_add(cpu._pshift())
        cpu.treg = cpu._dr(cpu._resolve(word & 0xFF))
    cpu._cost(n, 1)
    return EV_OK


def _h_ltd(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        addr = cpu._resolve(word & 0xFF)
        v = cpu._dr(addr)
        cpu._acc_add(cpu._pshift())
        cpu.treg = v
        cpu._dw(addr + 1, v)
    cpu._cost(n, 2)
    return EV_OK


def _h_zalh(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu.acc = cpu._dr(cpu._resolve(word & 0xFF)) << 16
    cpu._cost(n, 1)
    return EV_OK


def _h_zals(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu.acc = cpu._dr(cpu._resolve(word & 0xFF))
    cpu._cost(n, 1)
    return EV_OK


def _h_addh(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        cpu._acc_add(_s16(v) << 16)
    cpu._cost(n, 1)
    return EV_OK


def _h_adds(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu._acc_add(cpu._dr(cpu._resolve(word & 0xFF)))
    cpu._cost(n, 1)
    return EV_OK


def _h_subh(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        cpu._acc_add(-(_s16(v) << 16))
    cpu._cost(n, 1)
    return EV_OK


def _h_subs(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu._acc_add(-cpu._dr(cpu._resolve(word & 0xFF)))
    cpu._cost(n, 1)
    return EV_OK


def _h_rpt(cpu, word):
    cpu.rptc = cpu._dr(cpu._resolve(word & 0xFF)) & 0xFF
    cpu._rpt_armed = True
    cpu._cost(1, 1)
    return EV_OK


def _h_xor(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu.acc ^= cpu._dr(cpu._resolve(word & 0xFF))
    cpu._cost(n, 1)
    return EV_OK


def _h_or(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu.acc |= cpu._dr(cpu._resolve(word & 0xFF))
    cpu._cost(n, 1)
    return EV_OK


def _h_and(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu.acc &= cpu._dr(cpu._resolve(word & 0xFF))
    cpu._cost(n, 1)
    return EV_OK


def _h_lst(cpu, word):
    cpu.set_st0(cpu._dr(cpu._resolve(word & 0xFF)))
    cpu._cost(1, 1)
    return EV_OK


def _h_lst1(cpu, word):
    cpu.set_st1(cpu._dr(cpu._resolve(word & 0xFF)))
    cpu._cost(1, 1)
    return EV_OK


def _h_ldp(cpu, word):
    cpu.dp = cpu._dr(cpu._resolve(word & 0xFF)) & 0x1FF
    cpu._cost(1, 1)
    return EV_OK


def _h_mar(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        if word & 0x80:
            cpu._resolve(word & 0xFF)
    cpu._cost(n, 0)
    return EV_OK


def _h_dmov(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        addr = cpu._resolve(word & 0xFF)
        cpu._dw(addr + 1, cpu._dr(addr))
    cpu._cost(n, 2)
    return EV_OK


def _h_tblr(cpu, word):
    n = cpu._take_rpt()
    base = cpu.acc & MASK16
    for i in range(n):
        addr = cpu._resolve(word & 0xFF)
        cpu._dw(addr, cpu.prog[(base + i) & MASK16])
    cpu._cost(n, 2)
    return EV_OK


def _h_tblw(cpu, word):
    n = cpu._take_rpt()
    base = cpu.acc & MASK16
    for i in range(n):
        addr = cpu._resolve(word & 0xFF)
        cpu.prog[(base + i) & MASK16] = cpu._dr(addr)
    cpu._cost(n, 2)
    return EV_OK


def _mac_core(cpu, word, dmov):
    n = cpu._take_rpt()
    pma = cpu.prog[cpu.pc]
    cpu.pc = (cpu.pc + 1) & MASK16
    prog = cpu.prog
    for i in range(n):
        addr = cpu._resolve(word & 0xFF)
        cpu._acc_add(cpu._pshift())
        v = cpu._dr(addr)
        cpu.treg = v
        cpu.preg = (_s16(v) * _s16(prog[(pma + i) & MASK16])) & MASK32
        if dmov:
            cpu._dw(addr + 1, v)
    cpu._cost(n, 3 if dmov else 2, width=2)
    return EV_OK


def _h_mac(cpu, word):
    return _mac_core(cpu, word, False)


def _h_macd(cpu, word):
    return _mac_core(cpu, word, True)


def _h_sacl(cpu, word):
    n = cpu._take_rpt()
    sh = (word >> 8) & 7
    v = (cpu.acc << sh) & MASK16
    for _ in range(n):
        cpu._dw(cpu._resolve(word & 0xFF), v)
    cpu._cost(n, 1)
    return EV_OK


def _h_sach(cpu, word):
    n = cpu._take_rpt()
    sh = (word >> 8) & 7
    v = ((cpu.acc << sh) & MASK32) >> 16
    for _ in range(n):
        cpu._dw(cpu._resolve(word & 0xFF), v)
    cpu._cost(n, 1)
    return EV_OK


def _h_sst(cpu, word):
    cpu._dw(cpu._resolve(word & 0xFF), cpu.st0())
    cpu._cost(1, 1)
    return EV_OK


def _h_sst1(cpu, word):
    cpu._dw(cpu._resolve(word & 0xFF), cpu.st1())
    cpu._cost(1, 1)
    return EV_OK


def _h_in(cpu, word):
    n = cpu._take_rpt()
    port = (word >> 8) & 0xF
    for _ in range(n):
        w = cpu.io.io_in(port) & MASK16 if cpu.io is not None else 0
        cpu._dw(cpu._resolve(word & 0xFF), w)
    cpu._cost(n, 1)
    return EV_OK


def _h_out(cpu, word):
    n = cpu._take_rpt()
    port = (word >> 8) & 0xF
    for _ in range(n):
        v = cpu._dr(cpu._resolve(word & 0xFF))
        if cpu.io is not None:
            cpu.io.io_out(port, v)
    cpu._cost(n, 1)
    return EV_OK


def _h_mpyk(cpu, word):
    k = word & 0x1FFF
    if k & 0x1000:
        k -= 0x2000
    cpu.preg = (_s16(cpu.treg) * k) & MASK32
    cpu._cost(1, 0)
    return EV_OK


def _h_lark(cpu, word):
    cpu.ar[(word >> 8) & 7] = word & 0xFF
    cpu._cost(1, 0)
    return EV_OK


def _h_ldpk(cpu, word):
    cpu.dp = word & 0x1FF
    cpu._cost(1, 0)
    return EV_OK


def _h_lack(cpu, word):
    cpu.acc = word & 0xFF
    cpu._cost(1, 0)
    return EV_OK


def _h_rptk(cpu, word):
    cpu.rptc = word & 0xFF
    cpu._rpt_armed = True
    cpu._cost(1, 0)
    return EV_OK


def _h_addk(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu._acc_add(word & 0xFF)
    cpu._cost(n, 0)
    return EV_OK


def _h_subk(cpu, word):
    n = cpu._take_rpt()
    for _ in range(n):
        cpu._acc_add(-(word & 0xFF))
    cpu._cost(n, 0)
    return EV_OK


def _h_imm16(cpu, word):
    sub = word & 0xFF
    nib = (word >> 8) & 0xF
    k = cpu.prog[cpu.pc]
    cpu.pc = (cpu.pc + 1) & MASK16
    if sub == defs.IMM16_LRLK:
        if nib > 7:
            cpu.pc = (cpu.pc - 1) & MASK16
            cpu.last_illegal_word = word
            cpu._cost(1, 0)
            return EV_ILLEGAL
        cpu.ar[nib] = k
    elif sub == defs.IMM16_LALK:
        cpu.acc = (cpu._sxv(k) << nib) & MASK32
    elif sub == defs.IMM16_ADLK:
        cpu._acc_add(cpu._sxv(k) << nib)
    elif sub == defs.IMM16_SBLK:
        cpu._acc_add(-(cpu._sxv(k) << nib))
    else:
        cpu.pc = (cpu.pc - 1) & MASK16
        cpu.last_illegal_word = word
        cpu._cost(1, 0)
        return EV_ILLEGAL
    cpu._cost(1, 0, width=2)
    return EV_OK


def _h_fixed(cpu, word):
    low = word & 0xFF
    if defs.CE_SPM <= low <= defs.CE_SPM + 3:
        cpu.pm = low & 3
        cpu._cost(1, 0)
        return EV_OK
    if low == defs.CE_EINT:
        cpu.intm = 0
    elif low == defs.CE_DINT:
        cpu.intm = 1
    elif low == defs.CE_ROVM:
        cpu.ovm = 0
    elif low == defs.CE_SOVM:
        cpu.ovm = 1
    elif low == defs.CE_CNFD:
        cpu.cnf = 0
    elif low == defs.CE_CNFP:
        cpu.cnf = 1
    elif low == defs.CE_RSXM:
        cpu.sxm = 0
    elif low == defs.CE_SSXM:
        cpu.sxm = 1
    elif low == defs.CE_PAC:
        cpu.acc = cpu._pshift() & MASK32
    elif low == defs.CE_APAC:
        cpu._acc_add(cpu._pshift())
    elif low == defs.CE_SPAC:
        cpu._acc_add(-cpu._pshift())
    elif low == defs.CE_SFL:
        n = cpu._take_rpt()
        for _ in range(n):
            cpu.acc = (cpu.acc << 1) & MASK32
        cpu._cost(n, 0)
        return EV_OK
    elif low == defs.CE_SFR:
        n = cpu._take_rpt()
        for _ in range(n):
            cpu.acc = (_s32(cpu.acc) >> 1) & MASK32 if cpu.sxm else cpu.acc >> 1
        cpu._cost(n, 0)
        return EV_OK
    elif low == defs.CE_ABS:
        if cpu.acc == SIGN32:
            cpu.ov = 1
            cpu.acc = 0x7FFFFFFF if cpu.ovm else SIGN32
        elif cpu.acc & SIGN32:
            cpu.acc = (-_s32(cpu.acc)) & MASK32
    elif low == defs.CE_NEG:
        if cpu.acc == SIGN32:
            cpu.ov = 1
            cpu.acc = 0x7FFFFFFF if cpu.ovm else SIGN32
        else:
            cpu.acc = (-_s32(cpu.acc)) & MASK32
    elif low == defs.CE_CMPL:
        cpu.acc ^= MASK32
    elif low == defs.CE_PUSH:
        cpu._push(cpu.acc & MASK16)
    elif low == defs.CE_POP:
        cpu.acc = cpu._pop()
    elif low == defs.CE_RET:
        cpu.pc = cpu._pop()
        cpu._cost(1, 0, extra=1)
        return EV_OK
    elif low == defs.CE_TRAP:
        cpu._push(cpu.pc)
        cpu.pc = defs.TRAP_VECTOR
        cpu.intm = 1
        cpu._cost(1, 0, extra=1)
        return EV_TRAP
    elif low == defs.CE_IDLE:
        cpu._cost(1, 0)
        return EV_IDLE
    else:
        cpu.last_illegal_word = word
        cpu._cost(1, 0)
        return EV_ILLEGAL
    cpu._cost(1, 0)
    return EV_OK


def _h_branch(cpu, word):
    hi = word >> 8
    low = word & 0xFF
    if low & 0x80 == 0:
        cpu.last_illegal_word = word
        cpu._cost(1, 0)
        return EV_ILLEGAL
    pma = cpu.prog[cpu.pc]
    fall = (cpu.pc + 1) & MASK16
    if hi == 0xFF:                      # B
        taken = True
    elif hi == 0xFE:                    # CALL
        cpu._push(fall)
        taken = True
    elif hi == 0xFB:                    # BANZ: test current AR, then update
        taken = cpu.ar[cpu.arp] != 0
    elif hi == 0xF0:                    # BV
        taken = cpu.ov != 0
        cpu.ov = 0
    else:
        a = _s32(cpu.acc)
        if hi == 0xF1:
            taken = a > 0
        elif hi == 0xF2:
            taken = a <= 0
        elif hi == 0xF3:
            taken = a < 0
        elif hi == 0xF4:
            taken = a >= 0
        elif hi == 0xF5:
            taken = a != 0
        else:                           # 0xF6 BZ
            taken = a == 0
    cpu._resolve(low)                   # AR update field applies either way
    cpu.pc = pma if taken else fall
    cpu._cost(1, 0, width=2, extra=1 if taken else 0)
    return EV_OK


# dispatch tables indexed by the high byte
_DISPATCH = [None] * 256
_MEMOP = [False] * 256


def _fill():
    d = _DISPATCH
    m = _MEMOP
    for sh in range(16):
        d[defs.OP_ADD | sh] = _h_add
        d[defs.OP_SUB | sh] = _h_sub
        d[defs.OP_LAC | sh] = _h_lac
    for k in range(8):
        d[defs.OP_LAR | k] = _h_lar
        d[defs.OP_SAR | k] = _h_sar
        d[defs.OP_LARK | k] = _h_lark
        d[defs.OP_SACL | k] = _h_sacl
        d[defs.OP_SACH | k] = _h_sach
    d[defs.OP_MPY] = _h_mpy
    d[defs.OP_LT] = _h_lt
    d[defs.OP_LTA] = _h_lta
    d[defs.OP_LTD] = _h_ltd
    d[defs.OP_ZALH] = _h_zalh
    d[defs.OP_ZALS] = _h_zals
    d[defs.OP_ADDH] = _h_addh
    d[defs.OP_ADDS] = _h_adds
    d[defs.OP_SUBH] = _h_subh
    d[defs.OP_SUBS] = _h_subs
    d[defs.OP_RPT] = _h_rpt
    d[defs.OP_XOR] = _h_xor
    d[defs.OP_OR] = _h_or
    d[defs.OP_AND] = _h_and
    d[defs.OP_LST] = _h_lst
    d[defs.OP_LST1] = _h_lst1
    d[defs.OP_LDP] = _h_ldp
    d[defs.OP_MAR] = _h_mar
    d[defs.OP_DMOV] = _h_dmov
    d[defs.OP_TBLR] = _h_tblr
    d[defs.OP_TBLW] = _h_tblw
    d[defs.OP_MAC] = _h_mac
    d[defs.OP_MACD] = _h_macd
    d[defs.OP_SST] = _h_sst
    d[defs.OP_SST1] = _h_sst1
    for p in range(16):
        d[defs.OP_IN | p] = _h_in
        d[defs.OP_OUT | p] = _h_out
    for hi in range(0xA0, 0xC0):
        d[hi] = _h_mpyk
    d[0xC8] = _h_ldpk
    d[0xC9] = _h_ldpk
    d[defs.OP_LACK] = _h_lack
    d[defs.OP_RPTK] = _h_rptk
    d[defs.OP_ADDK] = _h_addk
    d[defs.OP_SUBK] = _h_subk
    d[defs.OP_FIXED] = _h_fixed
    for nib in range(16):
        d[defs.OP_IMM16 | nib] = _h_imm16
    for hi in defs.BRANCHES:
        d[hi] = _h_branch
    # memory-reference opcodes: screen the illegal indirect code 0b011
    for hi in range(256):
        if d[hi] in (_h_add, _h_sub, _h_lac, _h_lar, _h_sar, _h_mpy, _h_lt,
                     _h_lta, _h_ltd, _h_zalh, _h_zals, _h_addh, _h_adds,
                     _h_subh, _h_subs, _h_rpt, _h_xor, _h_or, _h_and,
                     _h_lst, _h_lst1, _h_ldp, _h_mar, _h_dmov, _h_tblr,
                     _h_tblw, _h_mac, _h_macd, _h_sacl, _h_sach, _h_sst,
                     _h_sst1, _h_in, _h_out, _h_branch):
            m[hi] = True


_fill()
