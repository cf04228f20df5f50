"""Loadable object images: the native DPX25 text format and a TI COFF
converter for bridging from the vendor toolchain."""

from .image import ObjectImage, Record, Symbol, ObjectFormatError, OverlapError, RangeError
from .dpx25 import read_object, write_object, CountMismatch, ObjSyntaxError
from .coff import convert_coff, BadMagic, TruncatedFile, UnsupportedRelocation

__all__ = [
    "ObjectImage", "Record", "Symbol",
    "ObjectFormatError", "OverlapError", "RangeError",
    "read_object", "write_object", "CountMismatch", "ObjSyntaxError",
    "convert_coff", "BadMagic", "TruncatedFile", "UnsupportedRelocation",
]
