"""
Image representation, phantoms, degradation and PGM I/O
"""

from imagecore.degrade import degrade
from imagecore.image import DegradationSpec, Image, devectorize, vectorize
from imagecore.pgm import decode_pgm, encode_pgm, read_pgm, write_pgm
from imagecore.phantoms import PHANTOMS, list_phantoms, make_phantom

__all__ = [
    "Image",
    "DegradationSpec",
    "vectorize",
    "devectorize",
    "degrade",
    "make_phantom",
    "list_phantoms",
    "PHANTOMS",
    "read_pgm",
    "write_pgm",
    "decode_pgm",
    "encode_pgm",
]
