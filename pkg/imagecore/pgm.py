"""
Binary PGM (P5, maxval 255) reader and writer

Byte b maps to pixel b / 255. Writing clamps to [0, 1] and rounds half up.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from errors import FormatError
from imagecore.image import Image

logger = logging.getLogger(__name__)

MAXVAL = 255


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments"""
    length = len(data)
    while pos < length:
        if data[pos : pos + 1] == b"#":
            while pos < length and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif data[pos : pos + 1].isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < length and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _parse_int(token: bytes, field: str) -> int:
    try:
        value = int(token.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise FormatError(field, f"expected an integer, got {token!r}")
    if value <= 0:
        raise FormatError(field, f"must be positive, got {value}")
    return value


def decode_pgm(data: bytes) -> Image:
    """Decode P5 bytes into an Image"""
    magic, pos = _read_token(data, 0)
    if magic != b"P5":
        raise FormatError("magic", f"expected b'P5', got {magic!r}")

    token, pos = _read_token(data, pos)
    width = _parse_int(token, "width")
    token, pos = _read_token(data, pos)
    height = _parse_int(token, "height")
    token, pos = _read_token(data, pos)
    maxval = _parse_int(token, "maxval")

    if maxval != MAXVAL:
        raise FormatError("maxval", f"only {MAXVAL} is supported, got {maxval}")
    if width != height:
        raise FormatError("height", f"image must be square, got width={width} height={height}")

    # Exactly one whitespace byte separates the header from the raster
    payload = data[pos + 1 :]
    expected = width * height
    if len(payload) < expected:
        raise FormatError("payload", f"expected {expected} bytes, got {len(payload)}")

    raster = np.frombuffer(payload[:expected], dtype=np.uint8).reshape((height, width))
    return Image.from_array(raster.astype(np.float64) / MAXVAL)


def encode_pgm(img: Image) -> bytes:
    """Encode an Image as P5 bytes"""
    array = np.clip(img.as_array(), 0.0, 1.0)
    raster = np.floor(array * MAXVAL + 0.5).astype(np.uint8)
    header = f"P5\n{img.n} {img.n}\n{MAXVAL}\n".encode("ascii")
    return header + raster.tobytes()


def read_pgm(path: Union[str, Path]) -> Image:
    """Read a square binary PGM file"""
    data = Path(path).read_bytes()
    img = decode_pgm(data)
    logger.debug(f"Read {img.n}x{img.n} PGM from {path}")
    return img


def write_pgm(img: Image, path: Union[str, Path]) -> Path:
    """Write an Image as binary PGM, creating parent directories"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_pgm(img))
    logger.info(f"Wrote {img.n}x{img.n} PGM to {path}")
    return path
