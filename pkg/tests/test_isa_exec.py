"""Per-instruction semantic vectors, hand-checked against the second
generation device data book: at least three per mnemonic, including the
overflow-mode, sign-extension and stack-depth corner cases."""

import pytest

from dspx25 import isa
from dspx25.board import Board

from conftest import asm_image

MASK32 = 0xFFFFFFFF


def run_vec(text, pre=None, steps=1, data=None):
    """Assemble one or more lines, apply register presets, step."""
    b = Board()
    b.load(asm_image(text))
    cpu = b.cpu
    for addr, val in (data or {}).items():
        b.data[addr] = val & 0xFFFF
    for key, val in (pre or {}).items():
        if key == "stack":
            cpu.stack = list(val) + [0] * (8 - len(val))
        elif key.startswith("ar") and len(key) == 3 and key[2].isdigit():
            cpu.ar[int(key[2])] = val
        else:
            setattr(cpu, key, val)
    reports = [b.step() for _ in range(steps)]
    return b, reports


def check(cpu, **expect):
    for key, val in expect.items():
        if key.startswith("ar") and len(key) == 3 and key[2].isdigit():
            got = cpu.ar[int(key[2])]
        else:
            got = getattr(cpu, key)
        assert got == val, f"{key}: got {got:#x}, want {val:#x}"


# ---------------------------------------------------------------------------
# accumulator load/store group


class TestLoadStore:
    def test_lack(self):
        b, _ = run_vec("LACK 12h", pre={"acc": 0xDEADBEEF})
        check(b.cpu, acc=0x12, pc=1)

    def test_lack_max(self):
        b, _ = run_vec("LACK 0FFh")
        check(b.cpu, acc=0xFF)

    def test_lack_never_sign_extends(self):
        b, _ = run_vec("LACK 80h", pre={"sxm": 1})
        check(b.cpu, acc=0x80)

    def test_zac(self):
        b, _ = run_vec("ZAC", pre={"acc": 0x12345678})
        check(b.cpu, acc=0)

    def test_zac_is_lack_zero(self):
        assert isa.encode(isa.Instruction("ZAC")) == [0xCA00]

    def test_zac_leaves_flags(self):
        b, _ = run_vec("ZAC", pre={"ov": 1})
        check(b.cpu, acc=0, ov=1)

    def test_lac_direct(self):
        b, _ = run_vec("LAC 10h", data={0x10: 0x1234})
        check(b.cpu, acc=0x1234)

    def test_lac_shift_sxm1(self):
        b, _ = run_vec("LAC 10h,15", pre={"sxm": 1}, data={0x10: 0x8000})
        check(b.cpu, acc=0xC0000000)

    def test_lac_shift_sxm0(self):
        b, _ = run_vec("LAC 10h,15", pre={"sxm": 0}, data={0x10: 0x8000})
        check(b.cpu, acc=0x40000000)

    def test_lac_uses_dp(self):
        b, _ = run_vec("LAC 5", pre={"dp": 4}, data={0x205: 0x3EEF})
        check(b.cpu, acc=0x3EEF)

    def test_lac_sign_extends_at_shift0(self):
        b, _ = run_vec("LAC 10h", pre={"sxm": 1}, data={0x10: 0xBEEF})
        check(b.cpu, acc=0xFFFFBEEF)

    def test_sacl_shift(self):
        b, _ = run_vec("SACL 20h,1", pre={"acc": 0x00008001})
        assert b.data[0x20] == 0x0002

    def test_sacl_plain(self):
        b, _ = run_vec("SACL 20h", pre={"acc": 0xABCD1234})
        assert b.data[0x20] == 0x1234

    def test_sacl_indirect(self):
        b, _ = run_vec("SACL *", pre={"acc": 7, "arp": 3, "ar3": 0x1000})
        assert b.data[0x1000] == 7

    def test_sach_shift(self):
        b, _ = run_vec("SACH 20h,4", pre={"acc": 0x08000000})
        assert b.data[0x20] == 0x8000

    def test_sach_plain(self):
        b, _ = run_vec("SACH 20h", pre={"acc": 0xABCD1234})
        assert b.data[0x20] == 0xABCD

    def test_sach_drops_shifted_high_bits(self):
        b, _ = run_vec("SACH 20h,1", pre={"acc": 0xC0000001})
        assert b.data[0x20] == 0x8000

    def test_zalh(self):
        b, _ = run_vec("ZALH 10h", pre={"acc": 0xFFFFFFFF}, data={0x10: 0x8001})
        check(b.cpu, acc=0x80010000)

    def test_zalh_clears_low(self):
        b, _ = run_vec("ZALH 10h", pre={"acc": 0x1234}, data={0x10: 1})
        check(b.cpu, acc=0x00010000)

    def test_zalh_indirect_inc(self):
        b, _ = run_vec("ZALH *+", pre={"arp": 1, "ar1": 0x300},
                       data={0x300: 0xAA})
        check(b.cpu, acc=0x00AA0000, ar1=0x301)

    def test_zals(self):
        b, _ = run_vec("ZALS 10h", pre={"acc": 0xFFFFFFFF, "sxm": 1},
                       data={0x10: 0x8001})
        check(b.cpu, acc=0x8001)     # never sign-extends

    def test_zals_zero(self):
        b, _ = run_vec("ZALS 10h", pre={"acc": 5}, data={0x10: 0})
        check(b.cpu, acc=0)

    def test_zals_full(self):
        b, _ = run_vec("ZALS 10h", data={0x10: 0xFFFF})
        check(b.cpu, acc=0xFFFF)


class TestLongImmediates:
    def test_lalk_positive(self):
        b, _ = run_vec("LALK 1234h", pre={"sxm": 1})
        check(b.cpu, acc=0x1234, pc=2)

    def test_lalk_sxm1_negative(self):
        b, _ = run_vec("LALK 8000h", pre={"sxm": 1})
        check(b.cpu, acc=0xFFFF8000)

    def test_lalk_sxm0(self):
        b, _ = run_vec("LALK 8000h", pre={"sxm": 0})
        check(b.cpu, acc=0x8000)

    def test_lalk_shift(self):
        b, _ = run_vec("LALK 1,15")
        check(b.cpu, acc=0x8000)

    def test_adlk(self):
        b, _ = run_vec("ADLK 10h", pre={"acc": 5})
        check(b.cpu, acc=0x15)

    def test_adlk_shifted(self):
        b, _ = run_vec("ADLK 1,12", pre={"acc": 0})
        check(b.cpu, acc=0x1000)

    def test_adlk_sign(self):
        b, _ = run_vec("ADLK 0FFFFh", pre={"acc": 5, "sxm": 1})
        check(b.cpu, acc=4)

    def test_sblk(self):
        b, _ = run_vec("SBLK 3", pre={"acc": 10})
        check(b.cpu, acc=7)

    def test_sblk_wraps_negative(self):
        b, _ = run_vec("SBLK 1", pre={"acc": 0})
        check(b.cpu, acc=0xFFFFFFFF)

    def test_sblk_shift(self):
        b, _ = run_vec("SBLK 1,15", pre={"acc": 0x8000})
        check(b.cpu, acc=0)


# ---------------------------------------------------------------------------
# arithmetic


class TestAddSub:
    def test_add_direct(self):
        b, _ = run_vec("ADD 10h", pre={"acc": 5}, data={0x10: 3})
        check(b.cpu, acc=8, ov=0)

    def test_add_shift_sign_extends(self):
        b, _ = run_vec("ADD 10h,4", pre={"acc": 0, "sxm": 1},
                       data={0x10: 0xFFFF})
        check(b.cpu, acc=0xFFFFFFF0)

    def test_add_ovm_saturates(self):
        b, _ = run_vec("ADD 10h", pre={"acc": 0x7FFFFFFF, "ovm": 1},
                       data={0x10: 1})
        check(b.cpu, acc=0x7FFFFFFF, ov=1)

    def test_add_ovm0_wraps(self):
        b, _ = run_vec("ADD 10h", pre={"acc": 0x7FFFFFFF, "ovm": 0},
                       data={0x10: 1})
        check(b.cpu, acc=0x80000000, ov=1)

    def test_sub_direct(self):
        b, _ = run_vec("SUB 10h", pre={"acc": 5}, data={0x10: 3})
        check(b.cpu, acc=2)

    def test_sub_to_negative(self):
        b, _ = run_vec("SUB 10h", pre={"acc": 0}, data={0x10: 1})
        check(b.cpu, acc=0xFFFFFFFF)

    def test_sub_ovm_saturates_low(self):
        b, _ = run_vec("SUB 10h", pre={"acc": 0x80000000, "ovm": 1},
                       data={0x10: 1})
        check(b.cpu, acc=0x80000000, ov=1)

    def test_addh(self):
        b, _ = run_vec("ADDH 10h", pre={"acc": 0x00000005}, data={0x10: 2})
        check(b.cpu, acc=0x00020005)

    def test_addh_negative_value(self):
        b, _ = run_vec("ADDH 10h", pre={"acc": 0}, data={0x10: 0xFFFF})
        check(b.cpu, acc=0xFFFF0000, ov=0)

    def test_addh_overflow(self):
        b, _ = run_vec("ADDH 10h", pre={"acc": 0x7FFF0000}, data={0x10: 1})
        check(b.cpu, acc=0x80000000, ov=1)

    def test_adds_zero_extends(self):
        b, _ = run_vec("ADDS 10h", pre={"acc": 0, "sxm": 1},
                       data={0x10: 0x8000})
        check(b.cpu, acc=0x8000)

    def test_adds(self):
        b, _ = run_vec("ADDS 10h", pre={"acc": 0x10000}, data={0x10: 0xFFFF})
        check(b.cpu, acc=0x1FFFF)

    def test_adds_carries_into_high(self):
        b, _ = run_vec("ADDS 10h", pre={"acc": 0xFFFF}, data={0x10: 1})
        check(b.cpu, acc=0x10000)

    def test_subh(self):
        b, _ = run_vec("SUBH 10h", pre={"acc": 0x00050001}, data={0x10: 2})
        check(b.cpu, acc=0x00030001)

    def test_subh_underflow_sets_ov(self):
        b, _ = run_vec("SUBH 10h", pre={"acc": 0x80000000, "ovm": 0},
                       data={0x10: 1})
        check(b.cpu, acc=0x7FFF0000, ov=1)

    def test_subh_sign(self):
        b, _ = run_vec("SUBH 10h", pre={"acc": 0}, data={0x10: 0xFFFF})
        check(b.cpu, acc=0x00010000)

    def test_subs_zero_extends(self):
        b, _ = run_vec("SUBS 10h", pre={"acc": 0x10000, "sxm": 1},
                       data={0x10: 0x8000})
        check(b.cpu, acc=0x8000)

    def test_subs(self):
        b, _ = run_vec("SUBS 10h", pre={"acc": 5}, data={0x10: 5})
        check(b.cpu, acc=0)

    def test_subs_borrow(self):
        b, _ = run_vec("SUBS 10h", pre={"acc": 0}, data={0x10: 1})
        check(b.cpu, acc=0xFFFFFFFF)

    def test_addk(self):
        b, _ = run_vec("ADDK 0FFh", pre={"acc": 1})
        check(b.cpu, acc=0x100)

    def test_addk_is_unsigned(self):
        b, _ = run_vec("ADDK 80h", pre={"acc": 0, "sxm": 1})
        check(b.cpu, acc=0x80)

    def test_addk_overflow(self):
        b, _ = run_vec("ADDK 1", pre={"acc": 0x7FFFFFFF, "ovm": 1})
        check(b.cpu, acc=0x7FFFFFFF, ov=1)

    def test_subk(self):
        b, _ = run_vec("SUBK 5", pre={"acc": 12})
        check(b.cpu, acc=7)

    def test_subk_wraps(self):
        b, _ = run_vec("SUBK 1", pre={"acc": 0})
        check(b.cpu, acc=0xFFFFFFFF)

    def test_subk_saturates(self):
        b, _ = run_vec("SUBK 1", pre={"acc": 0x80000000, "ovm": 1})
        check(b.cpu, acc=0x80000000, ov=1)


class TestAccumulatorOps:
    def test_abs_positive(self):
        b, _ = run_vec("ABS", pre={"acc": 5})
        check(b.cpu, acc=5)

    def test_abs_negative(self):
        b, _ = run_vec("ABS", pre={"acc": 0xFFFFFFFB})
        check(b.cpu, acc=5)

    def test_abs_min_ovm1(self):
        b, _ = run_vec("ABS", pre={"acc": 0x80000000, "ovm": 1})
        check(b.cpu, acc=0x7FFFFFFF, ov=1)

    def test_abs_min_ovm0(self):
        b, _ = run_vec("ABS", pre={"acc": 0x80000000, "ovm": 0})
        check(b.cpu, acc=0x80000000, ov=1)

    def test_neg(self):
        b, _ = run_vec("NEG", pre={"acc": 5})
        check(b.cpu, acc=0xFFFFFFFB)

    def test_neg_zero(self):
        b, _ = run_vec("NEG", pre={"acc": 0})
        check(b.cpu, acc=0)

    def test_neg_min(self):
        b, _ = run_vec("NEG", pre={"acc": 0x80000000, "ovm": 1})
        check(b.cpu, acc=0x7FFFFFFF, ov=1)

    def test_cmpl(self):
        b, _ = run_vec("CMPL", pre={"acc": 0x0F0F0F0F})
        check(b.cpu, acc=0xF0F0F0F0)

    def test_cmpl_zero(self):
        b, _ = run_vec("CMPL", pre={"acc": 0})
        check(b.cpu, acc=0xFFFFFFFF)

    def test_cmpl_involution(self):
        b, _ = run_vec("CMPL\nCMPL", pre={"acc": 0x12345678}, steps=2)
        check(b.cpu, acc=0x12345678)

    def test_sfl(self):
        b, _ = run_vec("SFL", pre={"acc": 0xC0000001})
        check(b.cpu, acc=0x80000002)

    def test_sfl_no_ov(self):
        b, _ = run_vec("SFL", pre={"acc": 0x80000000, "ovm": 1})
        check(b.cpu, acc=0, ov=0)

    def test_sfl_repeat(self):
        b, _ = run_vec("RPTK 3\nSFL", pre={"acc": 1}, steps=2)
        check(b.cpu, acc=16)

    def test_sfr_arithmetic(self):
        b, _ = run_vec("SFR", pre={"acc": 0x80000000, "sxm": 1})
        check(b.cpu, acc=0xC0000000)

    def test_sfr_logical(self):
        b, _ = run_vec("SFR", pre={"acc": 0x80000000, "sxm": 0})
        check(b.cpu, acc=0x40000000)

    def test_sfr_repeat(self):
        b, _ = run_vec("RPTK 2\nSFR", pre={"acc": 0x10, "sxm": 1}, steps=2)
        check(b.cpu, acc=2)


class TestLogic:
    def test_and_clears_high(self):
        b, _ = run_vec("AND 10h", pre={"acc": 0xFFFF00FF}, data={0x10: 0x0F0F})
        check(b.cpu, acc=0x000F)

    def test_and_zero(self):
        b, _ = run_vec("AND 10h", pre={"acc": 0x1234}, data={0x10: 0})
        check(b.cpu, acc=0)

    def test_and_identity_low(self):
        b, _ = run_vec("AND 10h", pre={"acc": 0xABCD}, data={0x10: 0xFFFF})
        check(b.cpu, acc=0xABCD)

    def test_or_low_only(self):
        b, _ = run_vec("OR 10h", pre={"acc": 0xFFFF0000}, data={0x10: 0x00FF})
        check(b.cpu, acc=0xFFFF00FF)

    def test_or_zero(self):
        b, _ = run_vec("OR 10h", pre={"acc": 0x12340000}, data={0x10: 0})
        check(b.cpu, acc=0x12340000)

    def test_or(self):
        b, _ = run_vec("OR 10h", pre={"acc": 0x00F0}, data={0x10: 0x0F00})
        check(b.cpu, acc=0x0FF0)

    def test_xor_low_only(self):
        b, _ = run_vec("XOR 10h", pre={"acc": 0xAAAA5555}, data={0x10: 0xFFFF})
        check(b.cpu, acc=0xAAAAAAAA)

    def test_xor_self_clears(self):
        b, _ = run_vec("XOR 10h", pre={"acc": 0x1234}, data={0x10: 0x1234})
        check(b.cpu, acc=0)

    def test_xor_zero(self):
        b, _ = run_vec("XOR 10h", pre={"acc": 0xFFFF0001}, data={0x10: 0})
        check(b.cpu, acc=0xFFFF0001)


# ---------------------------------------------------------------------------
# multiplier path


class TestMultiplier:
    def test_lt(self):
        b, _ = run_vec("LT 10h", data={0x10: 0xBEEF})
        check(b.cpu, treg=0xBEEF)

    def test_lt_indirect(self):
        b, _ = run_vec("LT *-", pre={"arp": 2, "ar2": 0x200},
                       data={0x200: 7})
        check(b.cpu, treg=7, ar2=0x1FF)

    def test_lt_leaves_p(self):
        b, _ = run_vec("LT 10h", pre={"preg": 0x1234}, data={0x10: 1})
        check(b.cpu, preg=0x1234)

    def test_mpy(self):
        b, _ = run_vec("MPY 10h", pre={"treg": 3}, data={0x10: 5})
        check(b.cpu, preg=15)

    def test_mpy_signed(self):
        b, _ = run_vec("MPY 10h", pre={"treg": 0xFFFF}, data={0x10: 5})
        check(b.cpu, preg=0xFFFFFFFB)     # -1 * 5

    def test_mpy_min_min(self):
        b, _ = run_vec("MPY 10h", pre={"treg": 0x8000}, data={0x10: 0x8000})
        check(b.cpu, preg=0x40000000)

    def test_mpyk(self):
        b, _ = run_vec("MPYK 100", pre={"treg": 3})
        check(b.cpu, preg=300)

    def test_mpyk_negative_constant(self):
        b, _ = run_vec("MPYK -1", pre={"treg": 5})
        check(b.cpu, preg=0xFFFFFFFB)

    def test_mpyk_range(self):
        b, _ = run_vec("MPYK 4095", pre={"treg": 2})
        check(b.cpu, preg=8190)

    def test_pac(self):
        b, _ = run_vec("PAC", pre={"preg": 0xFFFFFFFB, "pm": 0})
        check(b.cpu, acc=0xFFFFFFFB)

    def test_pac_pm1(self):
        b, _ = run_vec("PAC", pre={"preg": 3, "pm": 1})
        check(b.cpu, acc=6)

    def test_pac_pm3_shifts_right6(self):
        b, _ = run_vec("PAC", pre={"preg": 0xFFFFFF40, "pm": 3})
        check(b.cpu, acc=0xFFFFFFFD)     # -192 >> 6 = -3

    def test_apac(self):
        b, _ = run_vec("APAC", pre={"acc": 2, "preg": 5, "pm": 0})
        check(b.cpu, acc=7)

    def test_apac_pm2(self):
        b, _ = run_vec("APAC", pre={"acc": 0, "preg": 1, "pm": 2})
        check(b.cpu, acc=16)

    def test_apac_saturation(self):
        b, _ = run_vec("APAC", pre={"acc": 0x7FFFFFFF, "preg": 1,
                                    "ovm": 1, "pm": 0})
        check(b.cpu, acc=0x7FFFFFFF, ov=1)

    def test_spac(self):
        b, _ = run_vec("SPAC", pre={"acc": 7, "preg": 5, "pm": 0})
        check(b.cpu, acc=2)

    def test_spac_negative(self):
        b, _ = run_vec("SPAC", pre={"acc": 0, "preg": 1, "pm": 0})
        check(b.cpu, acc=0xFFFFFFFF)

    def test_spac_pm1(self):
        b, _ = run_vec("SPAC", pre={"acc": 10, "preg": 1, "pm": 1})
        check(b.cpu, acc=8)

    def test_spm(self):
        for k in range(4):
            b, _ = run_vec(f"SPM {k}")
            check(b.cpu, pm=k)

    def test_lta(self):
        b, _ = run_vec("LTA 10h", pre={"acc": 1, "preg": 4, "pm": 0},
                       data={0x10: 9})
        check(b.cpu, acc=5, treg=9)

    def test_lta_shifted_p(self):
        b, _ = run_vec("LTA 10h", pre={"acc": 0, "preg": 2, "pm": 1},
                       data={0x10: 1})
        check(b.cpu, acc=4, treg=1)

    def test_lta_overflow(self):
        b, _ = run_vec("LTA 10h", pre={"acc": 0x7FFFFFFF, "preg": 1,
                                       "ovm": 0, "pm": 0}, data={0x10: 0})
        check(b.cpu, acc=0x80000000, ov=1)

    def test_ltd(self):
        b, _ = run_vec("LTD 10h", pre={"acc": 1, "preg": 4, "pm": 0},
                       data={0x10: 9})
        assert b.data[0x11] == 9
        check(b.cpu, acc=5, treg=9)

    def test_ltd_dmov_copies_original(self):
        b, _ = run_vec("LTD 10h", data={0x10: 0xAB, 0x11: 0xCD})
        assert b.data[0x10] == 0xAB and b.data[0x11] == 0xAB

    def test_ltd_any_address(self):
        b, _ = run_vec("LTD *", pre={"arp": 1, "ar1": 0x5000},
                       data={0x5000: 3})
        assert b.data[0x5001] == 3

    def test_mac(self):
        # P accumulates first, then T and P reload from the operands
        b, _ = run_vec("MAC 100h,10h",
                       pre={"acc": 1, "preg": 10, "pm": 0}, data={0x10: 3})
        b2 = b.cpu
        assert b2.acc == 11 and b2.treg == 3
        assert b2.preg == (3 * isa.engine_pure._s16(b.prog[0x100])) & MASK32

    def test_mac_repeat_walks_table(self):
        src = """
        LRLK AR1,200h
        LARP AR1
        RPTK 2
        MAC 100h,*+
        APAC
        """
        b = Board()
        b.load(asm_image(src))
        b.prog[0x100:0x103] = [2, 3, 4]
        b.data[0x200:0x203] = [5, 6, 7]
        for _ in range(5):
            b.step()
        assert b.cpu.acc == 2 * 5 + 3 * 6 + 4 * 7

    def test_macd_moves_data(self):
        b, _ = run_vec("MACD 100h,10h", pre={"preg": 0}, data={0x10: 3})
        assert b.data[0x11] == 3


# ---------------------------------------------------------------------------
# auxiliary registers / pointers


class TestAuxiliary:
    def test_lark(self):
        b, _ = run_vec("LARK AR3,7Fh")
        check(b.cpu, ar3=0x7F)

    def test_lark_all(self):
        for n in range(8):
            b, _ = run_vec(f"LARK AR{n},{n + 1}")
            assert b.cpu.ar[n] == n + 1

    def test_lark_byte_only(self):
        b, _ = run_vec("LARK AR0,0FFh", pre={"ar0": 0xFFFF})
        check(b.cpu, ar0=0xFF)

    def test_lrlk(self):
        b, _ = run_vec("LRLK AR4,8000h")
        check(b.cpu, ar4=0x8000, pc=2)

    def test_lrlk_zero(self):
        b, _ = run_vec("LRLK AR0,0", pre={"ar0": 5})
        check(b.cpu, ar0=0)

    def test_lrlk_full(self):
        b, _ = run_vec("LRLK AR7,0FFFFh")
        check(b.cpu, ar7=0xFFFF)

    def test_lar_direct(self):
        b, _ = run_vec("LAR AR1,10h", data={0x10: 0xCAFE})
        check(b.cpu, ar1=0xCAFE)

    def test_lar_load_wins_over_update(self):
        # LAR into the AR selected by ARP: the load overrides the *+ update
        b, _ = run_vec("LAR AR1,*+", pre={"arp": 1, "ar1": 0x300},
                       data={0x300: 0x1234})
        check(b.cpu, ar1=0x1234)

    def test_lar_other_ar_updates(self):
        b, _ = run_vec("LAR AR2,*+", pre={"arp": 1, "ar1": 0x300},
                       data={0x300: 0x1234})
        check(b.cpu, ar1=0x301, ar2=0x1234)

    def test_sar_direct(self):
        b, _ = run_vec("SAR AR5,10h", pre={"ar5": 0xBEEF})
        assert b.data[0x10] == 0xBEEF

    def test_sar_stores_pre_update_value(self):
        b, _ = run_vec("SAR AR1,*+", pre={"arp": 1, "ar1": 0x300})
        assert b.data[0x300] == 0x300
        check(b.cpu, ar1=0x301)

    def test_sar_indirect_other(self):
        b, _ = run_vec("SAR AR0,*-", pre={"arp": 2, "ar2": 0x250, "ar0": 42})
        assert b.data[0x250] == 42
        check(b.cpu, ar2=0x24F)

    def test_larp(self):
        b, _ = run_vec("LARP AR5", pre={"arp": 2})
        check(b.cpu, arp=5, arb=2)

    def test_larp_zero(self):
        b, _ = run_vec("LARP 0", pre={"arp": 7})
        check(b.cpu, arp=0, arb=7)

    def test_larp_is_mar(self):
        assert isa.encode(isa.Instruction("LARP", reg=3)) == [0x558B]

    def test_mar_direct_is_nop(self):
        b, _ = run_vec("MAR 12h", pre={"acc": 9})
        check(b.cpu, acc=9, pc=1)

    def test_mar_indirect_updates(self):
        b, _ = run_vec("MAR *-", pre={"arp": 4, "ar4": 10})
        check(b.cpu, ar4=9)

    def test_mar_next_arp(self):
        b, _ = run_vec("MAR *+,AR6", pre={"arp": 1, "ar1": 1})
        check(b.cpu, ar1=2, arp=6, arb=1)

    def test_nop(self):
        b, reps = run_vec("NOP", pre={"acc": 1, "arp": 3})
        check(b.cpu, acc=1, arp=3, pc=1)
        assert reps[0].cycles == 1

    def test_nop_encoding(self):
        assert isa.encode(isa.Instruction("NOP")) == [0x5500]

    def test_nop_repeatable(self):
        b, _ = run_vec("RPTK 9\nNOP", steps=2)
        assert b.cpu.cycles == 1 + 10

    def test_ar0_indexed_modes(self):
        b, _ = run_vec("MAR *0+", pre={"arp": 1, "ar1": 100, "ar0": 7})
        check(b.cpu, ar1=107)
        b, _ = run_vec("MAR *0-", pre={"arp": 1, "ar1": 100, "ar0": 7})
        check(b.cpu, ar1=93)

    def test_bit_reversed_modes(self):
        # reverse-carry add: 0 -> 4 -> 2 -> 6 ... with AR0 = N/2 = 4
        b, _ = run_vec("MAR *BR0+", pre={"arp": 1, "ar1": 0, "ar0": 4})
        check(b.cpu, ar1=4)
        b, _ = run_vec("MAR *BR0+", pre={"arp": 1, "ar1": 4, "ar0": 4})
        check(b.cpu, ar1=2)
        b, _ = run_vec("MAR *BR0-", pre={"arp": 1, "ar1": 2, "ar0": 4})
        check(b.cpu, ar1=4)


class TestPagePointer:
    def test_ldpk(self):
        b, _ = run_vec("LDPK 1FFh")
        check(b.cpu, dp=0x1FF)

    def test_ldpk_zero(self):
        b, _ = run_vec("LDPK 0", pre={"dp": 5})
        check(b.cpu, dp=0)

    def test_ldpk_affects_direct(self):
        b, _ = run_vec("LDPK 2\nLAC 5", data={0x105: 0xAA}, steps=2)
        check(b.cpu, acc=0xAA)

    def test_ldp(self):
        b, _ = run_vec("LDP 10h", data={0x10: 0xFFFF})
        check(b.cpu, dp=0x1FF)     # low 9 bits

    def test_ldp_low_bits(self):
        b, _ = run_vec("LDP 10h", data={0x10: 0x0201})
        check(b.cpu, dp=1)

    def test_ldp_indirect(self):
        b, _ = run_vec("LDP *", pre={"arp": 1, "ar1": 0x1000},
                       data={0x1000: 7})
        check(b.cpu, dp=7)


# ---------------------------------------------------------------------------
# status words, modes


class TestStatus:
    def test_sst(self):
        b, _ = run_vec("SST 10h", pre={"arp": 5, "ov": 1, "ovm": 1,
                                       "intm": 1, "dp": 0x1FF})
        assert b.data[(0x1FF << 7) | 0x10] == (5 << 13) | (1 << 12) \
            | (1 << 11) | (1 << 10) | (1 << 9) | 0x1FF

    def test_sst_bit10_reads_one(self):
        b, _ = run_vec("SST 10h")
        assert b.data[0x10] & (1 << 10)

    def test_sst_dp(self):
        b, _ = run_vec("SST 10h", pre={"dp": 0x123})
        assert b.data[(0x123 << 7) | 0x10] & 0x1FF == 0x123

    def test_lst_loads_fields_not_intm(self):
        b, _ = run_vec("LST 10h", pre={"intm": 1},
                       data={0x10: (3 << 13) | (1 << 12) | (1 << 11) | 0x55})
        check(b.cpu, arp=3, ov=1, ovm=1, dp=0x55, intm=1)

    def test_lst_clears(self):
        b, _ = run_vec("LST 10h", pre={"arp": 7, "ov": 1, "dp": 0x1FF},
                       data={0x10: 0})
        check(b.cpu, arp=0, ov=0, dp=0)

    def test_lst_keeps_arb(self):
        b, _ = run_vec("LST 10h", pre={"arb": 5}, data={0x10: 2 << 13})
        check(b.cpu, arp=2, arb=5)

    def test_sst1(self):
        b, _ = run_vec("SST1 10h", pre={"arb": 6, "cnf": 1, "tc": 1,
                                        "sxm": 1, "xf": 1, "pm": 2})
        assert b.data[0x10] == (6 << 13) | (1 << 12) | (1 << 11) \
            | (1 << 10) | (1 << 4) | 2

    def test_sst1_zero(self):
        b, _ = run_vec("SST1 10h", pre={"sxm": 0})
        assert b.data[0x10] == 0

    def test_sst1_pm(self):
        b, _ = run_vec("SST1 10h", pre={"pm": 3, "sxm": 0})
        assert b.data[0x10] == 3

    def test_lst1_loads_arb_and_arp(self):
        b, _ = run_vec("LST1 10h", pre={"arp": 0, "arb": 0},
                       data={0x10: (4 << 13) | (1 << 10) | 1})
        check(b.cpu, arb=4, arp=4, sxm=1, pm=1)

    def test_lst1_flags(self):
        b, _ = run_vec("LST1 10h", pre={"cnf": 0, "tc": 0, "xf": 0},
                       data={0x10: (1 << 12) | (1 << 11) | (1 << 4)})
        check(b.cpu, cnf=1, tc=1, xf=1)

    def test_lst1_clears_sxm(self):
        b, _ = run_vec("LST1 10h", pre={"sxm": 1}, data={0x10: 0})
        check(b.cpu, sxm=0)

    def test_mode_bits(self):
        for text, attr, val in [("SOVM", "ovm", 1), ("ROVM", "ovm", 0),
                                ("SSXM", "sxm", 1), ("RSXM", "sxm", 0),
                                ("EINT", "intm", 0), ("DINT", "intm", 1),
                                ("CNFP", "cnf", 1), ("CNFD", "cnf", 0)]:
            pre = {attr: 1 - val}
            b, _ = run_vec(text, pre=pre)
            assert getattr(b.cpu, attr) == val, text

    def test_rovm_clears_only_mode(self):
        b, _ = run_vec("ROVM", pre={"ovm": 1, "ov": 1})
        check(b.cpu, ovm=0, ov=1)     # OV flag itself survives

    def test_cnf_only_toggles_bit(self):
        # block moves are not remapped: data memory is unchanged by CNF
        b, _ = run_vec("CNFP", data={0x200: 7})
        assert b.data[0x200] == 7 and b.cpu.cnf == 1

    def test_ssxm_then_lac(self):
        b, _ = run_vec("SSXM\nLAC 10h,1", pre={"sxm": 0},
                       data={0x10: 0x8000}, steps=2)
        check(b.cpu, acc=0xFFFF0000)


# ---------------------------------------------------------------------------
# data move, tables, ports


class TestMoveTableIo:
    def test_dmov(self):
        b, _ = run_vec("DMOV 10h", data={0x10: 0xAB, 0x11: 1})
        assert b.data[0x11] == 0xAB and b.data[0x10] == 0xAB

    def test_dmov_any_address(self):
        b, _ = run_vec("DMOV *", pre={"arp": 3, "ar3": 0x7000},
                       data={0x7000: 5})
        assert b.data[0x7001] == 5

    def test_dmov_repeat_smears(self):
        b, _ = run_vec("RPTK 1\nDMOV 10h", data={0x10: 9}, steps=2)
        assert b.data[0x11] == 9 and b.data[0x12] == 0   # same cell twice

    def test_tblr(self):
        b, _ = run_vec("TBLR 10h", pre={"acc": 0x100})
        b.prog[0x100] = 0xFACE
        b2, _ = run_vec("TBLR 10h", pre={"acc": 0x100})
        b2.prog[0x100] = 0xFACE
        # do it properly: preload before stepping
        b3 = Board()
        b3.load(asm_image("TBLR 10h"))
        b3.prog[0x100] = 0xFACE
        b3.cpu.acc = 0x100
        b3.step()
        assert b3.data[0x10] == 0xFACE

    def test_tblr_repeat(self):
        b3 = Board()
        b3.load(asm_image("LRLK AR1,300h\nLARP AR1\nRPTK 2\nTBLR *+"))
        b3.prog[0x100:0x103] = [1, 2, 3]
        b3.cpu.acc = 0x100
        for _ in range(4):
            b3.step()
        assert b3.data[0x300:0x303] == [1, 2, 3]

    def test_tblw(self):
        b3 = Board()
        b3.load(asm_image("TBLW 10h"))
        b3.data[0x10] = 0xBEAD
        b3.cpu.acc = 0x4000
        b3.step()
        assert b3.prog[0x4000] == 0xBEAD

    def test_tblw_repeat(self):
        b3 = Board()
        b3.load(asm_image("LRLK AR1,300h\nLARP AR1\nRPTK 2\nTBLW *+"))
        b3.data[0x300:0x303] = [7, 8, 9]
        b3.cpu.acc = 0x4000
        for _ in range(4):
            b3.step()
        assert b3.prog[0x4000:0x4003] == [7, 8, 9]

    def test_in_reads_port(self):
        b = Board()
        b.load(asm_image("IN 10h,2"))
        b.step()
        assert b.data[0x10] == 0x02     # codec status: dac_ready always set

    def test_in_unmapped_port(self):
        b, _ = run_vec("IN 10h,7", data={0x10: 0xFFFF})
        assert b.data[0x10] == 0

    def test_in_indirect(self):
        b = Board()
        b.load(asm_image("IN *,2,AR3"))
        b.cpu.arp = 1
        b.cpu.ar[1] = 0x500
        b.step()
        assert b.data[0x500] == 0x02 and b.cpu.arp == 3

    def test_out_writes_port(self):
        b = Board()
        b.load(asm_image("OUT 10h,1"))
        b.data[0x10] = 0xABC
        b.step()
        assert b.codec.dac_reg == 0xABC

    def test_out_control_port(self):
        b = Board()
        b.load(asm_image("OUT 10h,3"))
        b.data[0x10] = 0x11
        b.step()
        assert b.codec.running and b.codec.mode == 1 and b.codec.gain_code == 0

    def test_out_unmapped_ignored(self):
        b, _ = run_vec("OUT 10h,9", data={0x10: 0x1234})
        check(b.cpu, pc=1)


# ---------------------------------------------------------------------------
# control flow


class TestBranches:
    def _taken(self, text, pre):
        b, reps = run_vec(f"{text} 100h", pre=pre)
        return b.cpu.pc == 0x100, reps[0].cycles

    def test_b_unconditional(self):
        taken, cycles = self._taken("B", {})
        assert taken and cycles == 3

    def test_b_spec_example(self):
        b, _ = run_vec("B 100h")
        check(b.cpu, pc=0x100)

    def test_b_with_ar_update(self):
        b, _ = run_vec("B 100h,*-", pre={"arp": 1, "ar1": 5})
        check(b.cpu, pc=0x100, ar1=4)

    def test_bz(self):
        assert self._taken("BZ", {"acc": 0})[0]
        assert not self._taken("BZ", {"acc": 1})[0]
        assert not self._taken("BZ", {"acc": 0x80000000})[0]

    def test_bnz(self):
        assert self._taken("BNZ", {"acc": 1})[0]
        assert self._taken("BNZ", {"acc": 0xFFFFFFFF})[0]
        assert not self._taken("BNZ", {"acc": 0})[0]

    def test_bgz(self):
        assert self._taken("BGZ", {"acc": 1})[0]
        assert not self._taken("BGZ", {"acc": 0})[0]
        assert not self._taken("BGZ", {"acc": 0xFFFFFFFF})[0]

    def test_bgez(self):
        assert self._taken("BGEZ", {"acc": 0})[0]
        assert self._taken("BGEZ", {"acc": 5})[0]
        assert not self._taken("BGEZ", {"acc": 0x80000000})[0]

    def test_blz(self):
        assert self._taken("BLZ", {"acc": 0xFFFFFFFF})[0]
        assert self._taken("BLZ", {"acc": 0x80000000})[0]
        assert not self._taken("BLZ", {"acc": 0})[0]

    def test_blez(self):
        assert self._taken("BLEZ", {"acc": 0})[0]
        assert self._taken("BLEZ", {"acc": 0xFFFFFFFF})[0]
        assert not self._taken("BLEZ", {"acc": 1})[0]

    def test_bv_clears_ov(self):
        b, _ = run_vec("BV 100h", pre={"ov": 1})
        check(b.cpu, pc=0x100, ov=0)

    def test_bv_not_taken(self):
        b, reps = run_vec("BV 100h", pre={"ov": 0})
        check(b.cpu, pc=2, ov=0)
        assert reps[0].cycles == 2

    def test_bv_after_overflow(self):
        b, _ = run_vec("ADDK 1\nBV 100h",
                       pre={"acc": 0x7FFFFFFF}, steps=2)
        check(b.cpu, pc=0x100, ov=0)

    def test_banz_taken_and_decrements(self):
        b, _ = run_vec("BANZ 100h", pre={"arp": 1, "ar1": 3})
        check(b.cpu, pc=0x100, ar1=2)

    def test_banz_not_taken_still_updates(self):
        b, _ = run_vec("BANZ 100h", pre={"arp": 1, "ar1": 0})
        check(b.cpu, pc=2, ar1=0xFFFF)

    def test_banz_loop_runs_n_plus_1(self):
        src = "LARK AR1,3\nLARP AR1\nLOOP ADDK 1\nBANZ LOOP"
        b = Board()
        b.load(asm_image(src))
        for _ in range(2 + 2 * 4):
            b.step()
        assert b.cpu.acc == 4

    def test_call_pushes_return(self):
        b, _ = run_vec("CALL 200h", pre={"stack": [0x42]})
        check(b.cpu, pc=0x200)
        assert b.cpu.stack[0] == 2 and b.cpu.stack[1] == 0x42

    def test_call_cycles(self):
        b, reps = run_vec("CALL 200h")
        assert reps[0].cycles == 3

    def test_call_ret(self):
        src = "CALL FUNC\nNOP\nNOP\nFUNC LACK 5\nRET"
        b = Board()
        b.load(asm_image(src))
        for _ in range(3):
            b.step()
        check(b.cpu, pc=2, acc=5)

    def test_ret_pops(self):
        b, _ = run_vec("RET", pre={"stack": [0x123, 0x456]})
        check(b.cpu, pc=0x123)
        assert b.cpu.stack[0] == 0x456

    def test_ret_empty_stack_returns_zero(self):
        b, _ = run_vec("RET")
        check(b.cpu, pc=0)

    def test_ret_cycles(self):
        b, reps = run_vec("RET", pre={"stack": [0x100]})
        assert reps[0].cycles == 2

    def test_push_pop(self):
        b, _ = run_vec("PUSH", pre={"acc": 0x12345})
        assert b.cpu.stack[0] == 0x2345
        check(b.cpu, acc=0x12345)

    def test_pop_zero_extends(self):
        b, _ = run_vec("POP", pre={"acc": 0xFFFFFFFF, "stack": [0x8123]})
        check(b.cpu, acc=0x8123)

    def test_push_depth8_discards_bottom(self):
        b, _ = run_vec("PUSH", pre={"acc": 1,
                                    "stack": [10, 20, 30, 40, 50, 60, 70, 80]})
        assert b.cpu.stack == [1, 10, 20, 30, 40, 50, 60, 70]

    def test_pop_replicates_bottom(self):
        b, _ = run_vec("POP", pre={"stack": [1, 2, 3, 4, 5, 6, 7, 8]})
        assert b.cpu.stack == [2, 3, 4, 5, 6, 7, 8, 8]

    def test_trap(self):
        b, reps = run_vec("TRAP", pre={"intm": 0})
        check(b.cpu, pc=0x1E, intm=1)
        assert b.cpu.stack[0] == 1
        assert reps[0].event == isa.EV_TRAP

    def test_trap_pushes_next_pc(self):
        src = "NOP\nTRAP"
        b = Board()
        b.load(asm_image(src))
        b.step()
        b.step()
        assert b.cpu.stack[0] == 2

    def test_trap_cycles(self):
        b, reps = run_vec("TRAP")
        assert reps[0].cycles == 2

    def test_idle_event(self):
        b, reps = run_vec("IDLE")
        assert reps[0].event == isa.EV_IDLE
        check(b.cpu, pc=1)

    def test_idle_advances_pc(self):
        src = "IDLE\nLACK 7"
        b = Board()
        b.load(asm_image(src))
        b.step()
        b.step()
        check(b.cpu, acc=7)

    def test_idle_cycles(self):
        b, reps = run_vec("IDLE")
        assert reps[0].cycles == 1


class TestRepeat:
    def test_rptk_runs_n_plus_1(self):
        b, _ = run_vec("RPTK 4\nADDK 1", steps=2)
        check(b.cpu, acc=5)

    def test_rptk_zero_runs_once(self):
        b, _ = run_vec("RPTK 0\nADDK 1", steps=2)
        check(b.cpu, acc=1)

    def test_rptk_clears_counter(self):
        b, _ = run_vec("RPTK 4\nADDK 1\nADDK 1", steps=3)
        check(b.cpu, acc=6, rptc=0)

    def test_rpt_from_memory(self):
        b, _ = run_vec("RPT 10h\nADDK 1", data={0x10: 2}, steps=2)
        check(b.cpu, acc=3)

    def test_rpt_uses_low_byte(self):
        b, _ = run_vec("RPT 10h", data={0x10: 0x0103})
        check(b.cpu, rptc=3)

    def test_rpt_indirect(self):
        b, _ = run_vec("RPT *", pre={"arp": 1, "ar1": 0x40},
                       data={0x40: 5})
        check(b.cpu, rptc=5)

    def test_repeat_block_is_one_step(self):
        b, reps = run_vec("RPTK 9\nNOP", steps=2)
        assert len(reps) == 2 and b.cpu.pc == 2

    def test_interrupt_deferred_until_after_repeat(self):
        src = "EINT\nRPTK 3\nADDK 1\nNOP"
        b = Board()
        b.load(asm_image(src))
        b.cpu.imr = 1
        b.step()                       # EINT
        b.step()                       # RPTK arms the counter
        b.cpu.request_interrupt(isa.INT0)
        rep = b.step()                 # repeat block runs to completion
        assert rep.event == isa.EV_OK and b.cpu.acc == 4
        rep = b.step()                 # only now is the interrupt taken
        assert rep.event == isa.EV_INT and b.cpu.pc == 0x0002


class TestInterrupts:
    def test_masked_request_stays_pending(self):
        b = Board()
        b.load(asm_image("NOP\nNOP"))
        b.cpu.intm = 1
        b.cpu.imr = 1
        b.cpu.request_interrupt(isa.INT0)
        rep = b.step()
        assert rep.event == isa.EV_OK          # no vectoring while masked
        assert b.cpu.pc == 1 and b.cpu.pending == 1

    def test_enabled_interrupt_vectors(self):
        b = Board()
        b.load(asm_image("NOP\nNOP"))
        b.cpu.intm = 0
        b.cpu.imr = 1
        b.cpu.request_interrupt(isa.INT0)
        rep = b.step()
        assert rep.event == isa.EV_INT and rep.int_line == isa.INT0
        assert b.cpu.pc == 0x0002 and b.cpu.stack[0] == 0 and b.cpu.intm == 1

    def test_request_is_a_set(self):
        b = Board()
        b.load(asm_image("NOP\nNOP\nNOP"))
        b.cpu.intm = 0
        b.cpu.imr = 1
        b.cpu.request_interrupt(isa.INT0)
        b.cpu.request_interrupt(isa.INT0)
        assert b.step().event == isa.EV_INT
        assert b.step().event == isa.EV_OK     # serviced exactly once

    def test_imr_bit_gates_line(self):
        b = Board()
        b.load(asm_image("NOP\nNOP"))
        b.cpu.intm = 0
        b.cpu.imr = 0
        b.cpu.request_interrupt(isa.INT0)
        assert b.step().event == isa.EV_OK

    def test_vector_map(self):
        for line, vec in [(isa.INT0, 0x0002), (isa.INT1, 0x0004),
                          (isa.INT2, 0x0006), (isa.TINT, 0x0018),
                          (isa.RINT, 0x001A), (isa.XINT, 0x001C)]:
            b = Board()
            b.load(asm_image("NOP"))
            b.cpu.intm = 0
            b.cpu.imr = 0x3F
            b.cpu.request_interrupt(line)
            rep = b.step()
            assert rep.event == isa.EV_INT and b.cpu.pc == vec

    def test_priority_order(self):
        b = Board()
        b.load(asm_image("NOP"))
        b.cpu.intm = 0
        b.cpu.imr = 0x3F
        b.cpu.request_interrupt(isa.TINT)
        b.cpu.request_interrupt(isa.INT1)
        b.step()
        assert b.cpu.pc == 0x0004              # INT1 outranks TINT
        assert b.cpu.pending == 1 << isa.TINT


class TestReset:
    def test_reset_state(self):
        b = Board()
        c = b.cpu
        c.acc = 0x1234
        c.pc = 0x55
        c.intm = 0
        c.sxm = 0
        c.dp = 3
        c.stack = [7] * 8
        c.reset()
        assert c.pc == 0 and c.intm == 1 and c.sxm == 1
        assert c.acc == 0 and c.dp == 0 and c.stack == [0] * 8

    def test_reset_idempotent(self):
        b = Board()
        b.cpu.reset()
        snap = (b.cpu.pc, b.cpu.intm, b.cpu.sxm, b.cpu.acc, tuple(b.cpu.ar))
        b.cpu.reset()
        assert snap == (b.cpu.pc, b.cpu.intm, b.cpu.sxm, b.cpu.acc,
                        tuple(b.cpu.ar))

    def test_reset_preserves_cycles(self):
        b = Board()
        b.cpu.cycles = 1234
        b.cpu.reset()
        assert b.cpu.cycles == 1234


class TestIllegal:
    def test_unknown_word_reports_and_continues(self):
        b = Board()
        b.prog[0] = 0x9000      # outside the supported subset
        b.prog[1] = 0xCA05      # LACK 5
        rep = b.step()
        assert rep.event == isa.EV_ILLEGAL and rep.illegal_word == 0x9000
        b.step()
        assert b.cpu.acc == 5   # execution continues past the bad word

    def test_indirect_code_3_is_illegal(self):
        b = Board()
        b.prog[0] = 0x20B0      # LAC with reserved update code
        assert b.step().event == isa.EV_ILLEGAL

    def test_decoder_and_engine_agree(self):
        import random
        rng = random.Random(1)
        for _ in range(2000):
            w = rng.randrange(0x10000)
            b = Board()
            b.prog[0] = w
            b.prog[1] = 0
            ev = b.step().event
            try:
                isa.decode([w, 0], 0)
                decodes = True
            except isa.IllegalOpcode:
                decodes = False
            assert decodes == (ev != isa.EV_ILLEGAL), hex(w)


class TestMoreVectors:
    """Extra hand-checked vectors for mnemonics the main groups touch
    only in passing."""

    def test_banz_next_arp(self):
        b, _ = run_vec("BANZ 100h,*-,AR2", pre={"arp": 1, "ar1": 1})
        check(b.cpu, pc=0x100, ar1=0, arp=2)

    def test_bv_ar_field_applies_when_not_taken(self):
        b, _ = run_vec("BV 100h,*+", pre={"ov": 0, "arp": 1, "ar1": 9})
        check(b.cpu, pc=2, ar1=10)

    def test_cnfd_after_cnfp(self):
        b, _ = run_vec("CNFP\nCNFD", steps=2)
        check(b.cpu, cnf=0)

    def test_cnfp_sets_bit_in_st1(self):
        b, _ = run_vec("CNFP\nSST1 10h", steps=2)
        assert b.data[0x10] & (1 << 12)

    def test_cnfd_only_touches_cnf(self):
        b, _ = run_vec("CNFD", pre={"cnf": 1, "acc": 7, "sxm": 1})
        check(b.cpu, cnf=0, acc=7, sxm=1)

    def test_dint_blocks_pending(self):
        b = Board()
        b.load(asm_image("DINT\nNOP"))
        b.cpu.intm = 0
        b.cpu.imr = 1
        b.step()
        b.cpu.request_interrupt(isa.INT0)
        assert b.step().event == isa.EV_OK

    def test_dint_then_eint(self):
        b, _ = run_vec("DINT\nEINT", steps=2)
        check(b.cpu, intm=0)

    def test_eint_enables_pending(self):
        b = Board()
        b.load(asm_image("EINT\nNOP\nNOP"))
        b.cpu.imr = 1
        b.cpu.request_interrupt(isa.INT0)
        b.step()                                 # EINT itself
        assert b.step().event == isa.EV_INT      # taken at next boundary

    def test_dmov_chain_builds_delay_line(self):
        b, _ = run_vec("DMOV 11h\nDMOV 10h",
                       data={0x10: 1, 0x11: 2, 0x12: 0}, steps=2)
        assert b.data[0x10:0x13] == [1, 1, 2]

    def test_mac_direct_operand(self):
        b = Board()
        b.load(asm_image("MAC 100h,10h"))
        b.prog[0x100] = 7
        b.data[0x10] = 0xFFFE                    # -2
        b.cpu.preg = 1
        b.step()
        assert b.cpu.acc == 1 and b.cpu.preg == (-14) & 0xFFFFFFFF

    def test_macd_repeat_fir_kernel(self):
        # 3-tap convolution with line aging, the canonical MACD use
        b = Board()
        b.load(asm_image("LRLK AR1,22h\nLARP AR1\nRPTK 2\nMACD 100h,*-\nAPAC"))
        b.prog[0x100:0x103] = [3, 2, 1]          # h2 h1 h0
        b.data[0x20:0x23] = [10, 20, 30]         # x[n] x[n-1] x[n-2]
        for _ in range(5):
            b.step()
        assert b.cpu.acc == 3 * 30 + 2 * 20 + 1 * 10
        assert b.data[0x21:0x24] == [10, 20, 30]  # line aged one slot

    def test_macd_zero_p_first(self):
        b = Board()
        b.load(asm_image("MACD 100h,10h"))
        b.prog[0x100] = 5
        b.data[0x10] = 4
        b.step()
        assert b.cpu.acc == 0 and b.cpu.preg == 20 and b.data[0x11] == 4

    def test_push_then_pop_identity(self):
        b, _ = run_vec("PUSH\nZAC\nPOP", pre={"acc": 0xABCD}, steps=3)
        check(b.cpu, acc=0xABCD)

    def test_pop_shifts_stack_up(self):
        b, _ = run_vec("POP", pre={"stack": [1, 2, 3, 4, 5, 6, 7, 8]})
        assert b.cpu.acc == 1 and b.cpu.stack[0] == 2

    def test_push_keeps_low_word_only(self):
        b, _ = run_vec("PUSH", pre={"acc": 0xFFFF0001})
        assert b.cpu.stack[0] == 1

    def test_rovm_sovm_roundtrip(self):
        b, _ = run_vec("SOVM\nROVM\nSOVM", steps=3)
        check(b.cpu, ovm=1)

    def test_sovm_makes_adds_saturate(self):
        b, _ = run_vec("SOVM\nADDK 2", pre={"acc": 0x7FFFFFFF}, steps=2)
        check(b.cpu, acc=0x7FFFFFFF, ov=1)

    def test_rsxm_makes_lac_zero_extend(self):
        b, _ = run_vec("RSXM\nLAC 10h", data={0x10: 0x8000}, steps=2)
        check(b.cpu, acc=0x8000)

    def test_rsxm_ssxm_sfr(self):
        b, _ = run_vec("RSXM\nSFR\nSSXM\nSFR",
                       pre={"acc": 0x80000000}, steps=4)
        check(b.cpu, acc=0x20000000, sxm=1)

    def test_sfl_sfr_inverse_for_small_values(self):
        b, _ = run_vec("SFL\nSFR", pre={"acc": 0x1234}, steps=2)
        check(b.cpu, acc=0x1234)

    def test_sfl_feeds_ov_never(self):
        b, _ = run_vec("SFL\nSFL", pre={"acc": 0x40000000, "ovm": 1}, steps=2)
        check(b.cpu, acc=0, ov=0)

    def test_spm_shifts_products(self):
        for pm, want in [(0, 12), (1, 24), (2, 192)]:
            b, _ = run_vec(f"SPM {pm}\nPAC", pre={"preg": 12}, steps=2)
            assert b.cpu.acc == want, pm

    def test_spm3_arithmetic_right6(self):
        b, _ = run_vec("SPM 3\nPAC", pre={"preg": (-640) & 0xFFFFFFFF},
                       steps=2)
        check(b.cpu, acc=(-10) & 0xFFFFFFFF)

    def test_tblw_copies_one_word(self):
        b = Board()
        b.load(asm_image("TBLW 10h"))
        b.data[0x10] = 0x1234
        b.cpu.acc = 0x2000
        b.step()
        assert b.prog[0x2000] == 0x1234

    def test_tblw_then_execute_written_code(self):
        # self-modifying path: write LACK 7 into program space, then run it
        b = Board()
        b.load(asm_image("TBLW 10h\nB 2000h"))
        b.data[0x10] = 0xCA07
        b.cpu.acc = 0x2000
        b.step()
        b.step()
        b.step()
        check(b.cpu, acc=7)

    def test_trap_intm_already_set(self):
        b, _ = run_vec("TRAP", pre={"intm": 1})
        check(b.cpu, pc=0x1E, intm=1)
