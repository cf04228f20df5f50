"""Instruction-set tables for the supported TMS320C25 subset.

Everything that both the encoder/decoder and the execution engine need to
agree on lives here: opcode layout, indirect-addressing field codes,
interrupt vectors and the status-word bit layout.

Word formats (16-bit words, big-endian bit numbering within a word):

  memory-reference   OOOO OOOO I AAA AAAA   I=0 direct (AAAAAAA = dma),
                                            I=1 indirect (see below)
  indirect low byte  1 MMM N RRR            MMM = update code, N = "load
                                            next ARP" flag, RRR = next ARP
  shift group        high nibble selects op, low nibble carries the shift
  immediates         8-bit (low byte), 9-bit (LDPK), 13-bit (MPYK),
                     16-bit (second word; LALK/ADLK/SBLK/LRLK)
  branch group       0xF0..0xFF high byte, low byte is an indirect field
                     (bit 7 must be 1), second word = program address
  fixed group        0xCE00-prefixed single words, plus NOP = 0x5500

Indirect update codes: 0 "*", 1 "*-", 2 "*+", 3 illegal, 4 "*BR0-",
5 "*0-", 6 "*0+", 7 "*BR0+".  *BR0x modes add/subtract AR0 with reverse
carry propagation (bit-reversed indexing).
"""

# interrupt lines (bit positions in IMR / pending mask)
INT0, INT1, INT2, TINT, RINT, XINT = 0, 1, 2, 3, 4, 5

INT_NAMES = {INT0: "INT0", INT1: "INT1", INT2: "INT2",
             TINT: "TINT", RINT: "RINT", XINT: "XINT"}
INT_BY_NAME = {v: k for k, v in INT_NAMES.items()}

# vector addresses: reset, the six maskable lines, software trap
RESET_VECTOR = 0x0000
TRAP_VECTOR = 0x001E
VECTORS = {INT0: 0x0002, INT1: 0x0004, INT2: 0x0006,
           TINT: 0x0018, RINT: 0x001A, XINT: 0x001C}

# indirect update codes
IND_NONE, IND_DEC, IND_INC, IND_BR0_DEC, IND_AR0_DEC, IND_AR0_INC, IND_BR0_INC = \
    0, 1, 2, 4, 5, 6, 7
IND_NAMES = {IND_NONE: "*", IND_DEC: "*-", IND_INC: "*+",
             IND_BR0_DEC: "*BR0-", IND_AR0_DEC: "*0-",
             IND_AR0_INC: "*0+", IND_BR0_INC: "*BR0+"}
IND_BY_NAME = {v.upper(): k for k, v in IND_NAMES.items()}

# -- opcode map --------------------------------------------------------------
# shift-carrying memory ops: high byte = base | shift
OP_ADD = 0x00          # shift 0-15
OP_SUB = 0x10
OP_LAC = 0x20
OP_LAR = 0x30          # | ar 0-7
OP_MPY = 0x38
OP_LT = 0x3A
OP_LTA = 0x3B
OP_LTD = 0x3D
OP_ZALH = 0x3E
OP_ZALS = 0x3F
OP_ADDH = 0x40
OP_ADDS = 0x41
OP_RPT = 0x43
OP_XOR = 0x44
OP_OR = 0x45
OP_AND = 0x46
OP_SUBH = 0x47
OP_SUBS = 0x48
OP_LST = 0x50
OP_LST1 = 0x51
OP_LDP = 0x52
OP_MAR = 0x55          # direct form is NOP, indirect *,n is LARP n
OP_DMOV = 0x56
OP_TBLR = 0x58
OP_TBLW = 0x59
OP_MACD = 0x5C         # two words, second = program address
OP_MAC = 0x5D
OP_SACL = 0x60         # | shift 0-7
OP_SACH = 0x68         # | shift 0-7
OP_SAR = 0x70          # | ar 0-7
OP_SST = 0x78
OP_SST1 = 0x79
OP_IN = 0x80           # | port 0-15
OP_MPYK = 0xA0         # 0xA0-0xBF, 13-bit immediate
OP_LARK = 0xC0         # | ar 0-7, 8-bit immediate
OP_LDPK = 0xC8         # 0xC8-0xC9, 9-bit immediate
OP_LACK = 0xCA
OP_RPTK = 0xCB
OP_ADDK = 0xCC
OP_SUBK = 0xCD
OP_FIXED = 0xCE        # CE group, low byte selects
OP_IMM16 = 0xD0        # 0xD0-0xDF: low byte 0=LRLK 1=LALK 2=ADLK 3=SBLK
OP_OUT = 0xE0          # | port 0-15

# CE-group low bytes
CE_EINT = 0x00
CE_DINT = 0x01
CE_ROVM = 0x02
CE_SOVM = 0x03
CE_CNFD = 0x04
CE_CNFP = 0x05
CE_RSXM = 0x06
CE_SSXM = 0x07
CE_SPM = 0x08          # 0x08-0x0B, low 2 bits = product shift mode
CE_PAC = 0x14
CE_APAC = 0x15
CE_SPAC = 0x16
CE_SFL = 0x18
CE_SFR = 0x19
CE_ABS = 0x1B
CE_PUSH = 0x1C
CE_POP = 0x1D
CE_TRAP = 0x1E
CE_IDLE = 0x1F
CE_NEG = 0x23
CE_RET = 0x26
CE_CMPL = 0x27

CE_FIXED = {
    CE_EINT: "EINT", CE_DINT: "DINT", CE_ROVM: "ROVM", CE_SOVM: "SOVM",
    CE_CNFD: "CNFD", CE_CNFP: "CNFP", CE_RSXM: "RSXM", CE_SSXM: "SSXM",
    CE_PAC: "PAC", CE_APAC: "APAC", CE_SPAC: "SPAC", CE_SFL: "SFL",
    CE_SFR: "SFR", CE_ABS: "ABS", CE_PUSH: "PUSH", CE_POP: "POP",
    CE_TRAP: "TRAP", CE_IDLE: "IDLE", CE_NEG: "NEG", CE_RET: "RET",
    CE_CMPL: "CMPL",
}
CE_BY_NAME = {v: k for k, v in CE_FIXED.items()}

# branch group: high byte -> mnemonic (all two-word, low byte = indirect field)
BRANCHES = {
    0xF0: "BV", 0xF1: "BGZ", 0xF2: "BLEZ", 0xF3: "BLZ", 0xF4: "BGEZ",
    0xF5: "BNZ", 0xF6: "BZ", 0xFB: "BANZ", 0xFE: "CALL", 0xFF: "B",
}
BRANCH_BY_NAME = {v: k for k, v in BRANCHES.items()}

# plain memory-reference ops (single fixed high byte, direct/indirect operand)
MEM_PLAIN = {
    OP_MPY: "MPY", OP_LT: "LT", OP_LTA: "LTA", OP_LTD: "LTD",
    OP_ZALH: "ZALH", OP_ZALS: "ZALS", OP_ADDH: "ADDH", OP_ADDS: "ADDS",
    OP_RPT: "RPT", OP_XOR: "XOR", OP_OR: "OR", OP_AND: "AND",
    OP_SUBH: "SUBH", OP_SUBS: "SUBS", OP_LST: "LST", OP_LST1: "LST1",
    OP_LDP: "LDP", OP_DMOV: "DMOV", OP_TBLR: "TBLR", OP_TBLW: "TBLW",
    OP_SST: "SST", OP_SST1: "SST1",
}
MEM_PLAIN_BY_NAME = {v: k for k, v in MEM_PLAIN.items()}

# immediate-8 ops
IMM8 = {OP_LACK: "LACK", OP_RPTK: "RPTK", OP_ADDK: "ADDK", OP_SUBK: "SUBK"}
IMM8_BY_NAME = {v: k for k, v in IMM8.items()}

# 16-bit-immediate group sub-ops (low byte of first word)
IMM16_LRLK = 0x00
IMM16_LALK = 0x01
IMM16_ADLK = 0x02
IMM16_SBLK = 0x03
IMM16_SUBOPS = {IMM16_LALK: "LALK", IMM16_ADLK: "ADLK", IMM16_SBLK: "SBLK"}
IMM16_BY_NAME = {v: k for k, v in IMM16_SUBOPS.items()}

# instructions the repeat counter applies to; anything else under RPT runs once
REPEATABLE = frozenset([
    "ADD", "ADDH", "ADDK", "ADDS", "AND", "DMOV", "LAC", "LT", "LTA",
    "LTD", "MAC", "MACD", "MAR", "MPY", "NOP", "OR", "SACH", "SACL",
    "SFL", "SFR", "SUB", "SUBH", "SUBK", "SUBS", "TBLR", "TBLW", "XOR",
    "ZALH", "ZALS", "IN", "OUT",
])

# every mnemonic the assembler/debugger must know (module docs list the subset)
ALL_MNEMONICS = sorted(
    ["ADD", "SUB", "LAC", "LAR", "SACL", "SACH", "SAR", "IN", "OUT",
     "MAC", "MACD", "MAR", "NOP", "LARP", "MPYK", "LARK", "LDPK",
     "SPM", "LRLK", "LALK", "ADLK", "SBLK", "ZAC"]
    + list(MEM_PLAIN.values()) + list(IMM8.values())
    + list(CE_FIXED.values()) + list(BRANCHES.values())
)

# status-word bit layout used by LST/SST and friends.
# ST0: ARP(15-13) OV(12) OVM(11) 1(10) INTM(9) DP(8-0)
# ST1: ARB(15-13) CNF(12) TC(11) SXM(10) XF(4) PM(1-0), unmodeled bits read 0
ST0_ARP_SHIFT = 13
ST0_OV = 1 << 12
ST0_OVM = 1 << 11
ST0_ONE = 1 << 10
ST0_INTM = 1 << 9
ST0_DP_MASK = 0x1FF
ST1_ARB_SHIFT = 13
ST1_CNF = 1 << 12
ST1_TC = 1 << 11
ST1_SXM = 1 << 10
ST1_XF = 1 << 4
ST1_PM_MASK = 0x3
