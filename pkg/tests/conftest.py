"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

from maskseq.masks import Mask, RegionMask

# Character shorthand for building grids in tests:
#   '.' AUTHENTIC, 'p' PADDING, 'x' MANIPULATED
_CODES = {".": 0, "p": 128, "x": 255}


def mask(*rows: str) -> Mask:
    grid = np.array([[_CODES[c] for c in row] for row in rows], dtype=np.uint8)
    return Mask(grid)


def region(*rows: str) -> RegionMask:
    grid = np.array([[c == "x" for c in row] for row in rows], dtype=bool)
    return RegionMask(grid)


def rect_region(width, height, x, y, w, h) -> RegionMask:
    member = np.zeros((height, width), dtype=bool)
    member[y:y + h, x:x + w] = True
    return RegionMask(member)


def brute_dilate(member: np.ndarray, k: int) -> np.ndarray:
    """Reference morphology: direct window scan, window clipped to the grid."""
    h, w = member.shape
    out = np.zeros_like(member, dtype=bool)
    for y in range(h):
        for x in range(w):
            window = member[max(0, y - k):y + k + 1, max(0, x - k):x + k + 1]
            out[y, x] = window.any()
    return out


def brute_erode(member: np.ndarray, k: int) -> np.ndarray:
    h, w = member.shape
    out = np.zeros_like(member, dtype=bool)
    for y in range(h):
        for x in range(w):
            window = member[max(0, y - k):y + k + 1, max(0, x - k):x + k + 1]
            out[y, x] = window.all()
    return out


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))
