"""TI COFF reader: converts fully linked (absolute) COFF objects to images.

Accepted containers, sniffed from the first 16-bit little-endian value:

  version 0   20-byte file header starting with the C2x target magic 0x0090
  version 1   22-byte file header starting with version word 0x00C1 and
              ending with the target magic

Section headers are 40 bytes either way: name[8], paddr u32, vaddr u32,
size u32, scnptr u32, relptr u32, lnnoptr u32, nreloc u16, nlnno u16,
flags u16, reserved u8, mempage u8.  Sizes and addresses count 16-bit
words on this word-addressable target; raw section data is 2*size bytes,
each pair combined little-endian.  The optional header (28 bytes, when
present) carries the entry point at byte offset 16.

Relocatable inputs are rejected outright rather than half-linked.
"""

from __future__ import annotations

import struct

from .image import ObjectImage, ObjectFormatError, Record

TARGET_MAGIC = 0x0090          # TMS320C2x
VERSION1_MAGIC = 0x00C1
VERSION2_MAGIC = 0x00C2

STYP_DSECT = 0x0001
STYP_NOLOAD = 0x0002
STYP_COPY = 0x0010
STYP_TEXT = 0x0020
STYP_DATA = 0x0040
STYP_BSS = 0x0080


class BadMagic(ObjectFormatError):
    pass


class TruncatedFile(ObjectFormatError):
    pass


class UnsupportedRelocation(ObjectFormatError):
    pass


def _take(data: bytes, offset: int, size: int) -> bytes:
    if offset + size > len(data):
        raise TruncatedFile(f"need {offset + size} bytes, file has {len(data)}")
    return data[offset:offset + size]


def convert_coff(data: bytes) -> ObjectImage:
    """Convert a TI COFF object/executable into an ObjectImage.

    .text-class sections become PROG records at their physical addresses,
    initialized .data-class sections become DATA records; BSS and other
    uninitialized sections are skipped.  Any relocation entry anywhere is
    an error.
    """
    first = struct.unpack_from("<H", _take(data, 0, 2))[0]
    if first == VERSION1_MAGIC:
        hdr = _take(data, 0, 22)
        (_ver, nscns, _timdat, _symptr, _nsyms,
         opthdr, _flags, magic) = struct.unpack("<HHllLHHH", hdr)
        if magic != TARGET_MAGIC:
            raise BadMagic(f"target magic {magic:#06x}, expected 0x0090")
        shoff = 22
    elif first == VERSION2_MAGIC:
        raise BadMagic("COFF2 files are not supported (version 0/1 only)")
    elif first == TARGET_MAGIC:
        hdr = _take(data, 0, 20)
        (_magic, nscns, _timdat, _symptr, _nsyms,
         opthdr, _flags) = struct.unpack("<HHllLHH", hdr)
        shoff = 20
    else:
        raise BadMagic(f"unrecognized file magic {first:#06x}")

    img = ObjectImage()
    if opthdr:
        opt = _take(data, shoff, opthdr)
        if opthdr >= 20:
            img.entry = struct.unpack_from("<L", opt, 16)[0] & 0xFFFF
        shoff += opthdr

    for i in range(nscns):
        sh = _take(data, shoff + 40 * i, 40)
        name = sh[0:8].split(b"\0", 1)[0].decode("ascii", "replace")
        (paddr, _vaddr, size, scnptr, _relptr, _lnnoptr,
         nreloc, _nlnno, flags, _res, _page) = struct.unpack("<LLLLLLHHHBB", sh[8:])
        if nreloc:
            raise UnsupportedRelocation(
                f"section {name!r} has {nreloc} relocation entries")
        if flags & (STYP_BSS | STYP_NOLOAD | STYP_DSECT | STYP_COPY):
            continue
        if size == 0 or scnptr == 0:
            continue
        raw = _take(data, scnptr, 2 * size)
        words = [raw[j] | (raw[j + 1] << 8) for j in range(0, 2 * size, 2)]
        if flags & STYP_TEXT:
            space = "P"
        elif flags & STYP_DATA:
            space = "D"
        else:
            continue
        img.records.append(Record(space, paddr & 0xFFFF, words))

    img.validate()
    return img
