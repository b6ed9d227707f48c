"""Binary netpbm codecs: P5 graymaps for masks, P6 pixmaps for images.

Encoding is canonical (single header layout, LF separators, maxval 255) so
that encode/decode round trips are byte-identical. The decoder tolerates
standard netpbm whitespace and ``#`` comments in the header.
"""

from pathlib import Path

import numpy as np

from .errors import MissingFile, ParseError

MAXVAL = 255

# Legal byte codes for label masks.
AUTHENTIC = 0
PADDING = 128
MANIPULATED = 255
LABEL_CODES = (AUTHENTIC, PADDING, MANIPULATED)


def encode_pgm(grid: np.ndarray) -> bytes:
    """Encode a (H, W) uint8 grid as a binary P5 graymap."""
    grid = np.ascontiguousarray(grid, dtype=np.uint8)
    if grid.ndim != 2:
        raise ParseError(f"P5 payload must be 2-D, got shape {grid.shape}")
    h, w = grid.shape
    return b"P5\n%d %d\n%d\n" % (w, h, MAXVAL) + grid.tobytes()


def encode_ppm(pixels: np.ndarray) -> bytes:
    """Encode a (H, W, 3) uint8 array as a binary P6 pixmap."""
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ParseError(f"P6 payload must be (H, W, 3), got shape {pixels.shape}")
    h, w = pixels.shape[:2]
    return b"P6\n%d %d\n%d\n" % (w, h, MAXVAL) + pixels.tobytes()


def decode_pgm(data: bytes) -> np.ndarray:
    """Decode a binary P5 graymap into a (H, W) uint8 array."""
    w, h, raster = _parse_header(data, b"P5", samples_per_pixel=1)
    return np.frombuffer(raster, dtype=np.uint8).reshape(h, w).copy()


def decode_ppm(data: bytes) -> np.ndarray:
    """Decode a binary P6 pixmap into a (H, W, 3) uint8 array."""
    w, h, raster = _parse_header(data, b"P6", samples_per_pixel=3)
    return np.frombuffer(raster, dtype=np.uint8).reshape(h, w, 3).copy()


def decode_label_grid(data: bytes, source: str = "<bytes>") -> np.ndarray:
    """Decode a P5 mask and reject any byte outside the three label codes."""
    grid = decode_pgm(data)
    bad = ~np.isin(grid, LABEL_CODES)
    if bad.any():
        y, x = np.argwhere(bad)[0]
        raise ParseError(
            f"{source}: illegal mask byte {grid[y, x]} at ({x}, {y}); "
            f"expected one of {LABEL_CODES}"
        )
    return grid


def read_pgm(path) -> np.ndarray:
    return decode_pgm(_read_bytes(path))


def read_ppm(path) -> np.ndarray:
    return decode_ppm(_read_bytes(path))


def read_label_grid(path) -> np.ndarray:
    return decode_label_grid(_read_bytes(path), source=str(path))


def write_pgm(path, grid: np.ndarray) -> None:
    Path(path).write_bytes(encode_pgm(grid))


def write_ppm(path, pixels: np.ndarray) -> None:
    Path(path).write_bytes(encode_ppm(pixels))


def _read_bytes(path) -> bytes:
    p = Path(path)
    if not p.is_file():
        raise MissingFile(str(p))
    return p.read_bytes()


def _parse_header(data: bytes, magic: bytes, samples_per_pixel: int):
    """Parse a binary netpbm header and return (width, height, raster)."""
    if not data.startswith(magic):
        raise ParseError(f"expected {magic.decode()} magic, got {data[:2]!r}")
    pos = len(magic)
    fields = []
    while len(fields) < 3:
        if pos >= len(data):
            raise ParseError("truncated netpbm header")
        c = data[pos:pos + 1]
        if c == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise ParseError("unterminated comment in netpbm header")
            pos = nl + 1
        elif c.isspace():
            pos += 1
        elif c.isdigit():
            end = pos
            while end < len(data) and data[end:end + 1].isdigit():
                end += 1
            fields.append(int(data[pos:end]))
            pos = end
        else:
            raise ParseError(f"unexpected byte {c!r} in netpbm header")
    w, h, maxval = fields
    if w < 1 or h < 1:
        raise ParseError(f"invalid netpbm dimensions {w}x{h}")
    if maxval != MAXVAL:
        raise ParseError(f"unsupported maxval {maxval}, expected {MAXVAL}")
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise ParseError("missing whitespace after netpbm maxval")
    pos += 1
    expected = w * h * samples_per_pixel
    raster = data[pos:pos + expected]
    if len(raster) != expected:
        raise ParseError(
            f"netpbm raster truncated: expected {expected} bytes, "
            f"got {len(raster)}"
        )
    return w, h, raster
