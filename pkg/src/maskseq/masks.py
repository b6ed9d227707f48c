"""Pixel-label masks, region set algebra, stepwise F1, and boundary extraction.

A :class:`Mask` is a grid of three labels (AUTHENTIC / MANIPULATED /
PADDING); a :class:`RegionMask` is a pure boolean region. All operations
are pure functions on immutable arrays and are safe to call concurrently.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import kernels
from .errors import ContainmentViolation, DimensionMismatch, InvalidDimensions


class PixelLabel(IntEnum):
    """The three pixel labels; values are the on-disk P5 byte codes."""

    AUTHENTIC = 0
    PADDING = 128
    MANIPULATED = 255


_LEGAL = np.array([int(v) for v in PixelLabel], dtype=np.uint8)


@dataclass(frozen=True, eq=False)
class Mask:
    """Immutable (H, W) grid of :class:`PixelLabel` byte codes."""

    labels: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.labels, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidDimensions(f"mask grid must be 2-D and nonempty, got shape {arr.shape}")
        if not np.isin(arr, _LEGAL).all():
            bad = sorted(set(np.unique(arr)) - set(_LEGAL.tolist()))
            raise InvalidDimensions(f"illegal label values {bad}; expected {_LEGAL.tolist()}")
        arr.flags.writeable = False
        object.__setattr__(self, "labels", arr)

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def shape(self):
        return self.labels.shape

    @classmethod
    def filled(cls, width: int, height: int, label: PixelLabel) -> "Mask":
        if width < 1 or height < 1:
            raise InvalidDimensions(f"mask dimensions must be >= 1, got {width}x{height}")
        return cls(np.full((height, width), int(label), dtype=np.uint8))

    def __eq__(self, other):
        if not isinstance(other, Mask):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)


@dataclass(frozen=True, eq=False)
class RegionMask:
    """Immutable (H, W) boolean region."""

    member: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.member, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidDimensions(f"region grid must be 2-D and nonempty, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "member", arr)

    @property
    def width(self) -> int:
        return self.member.shape[1]

    @property
    def height(self) -> int:
        return self.member.shape[0]

    @property
    def shape(self):
        return self.member.shape

    @property
    def area(self) -> int:
        return int(np.count_nonzero(self.member))

    @property
    def is_empty(self) -> bool:
        return self.area == 0

    @classmethod
    def empty(cls, width: int, height: int) -> "RegionMask":
        if width < 1 or height < 1:
            raise InvalidDimensions(f"region dimensions must be >= 1, got {width}x{height}")
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def full(cls, width: int, height: int) -> "RegionMask":
        if width < 1 or height < 1:
            raise InvalidDimensions(f"region dimensions must be >= 1, got {width}x{height}")
        return cls(np.ones((height, width), dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, RegionMask):
            return NotImplemented
        return np.array_equal(self.member, other.member)


def manipulated_set(m: Mask) -> RegionMask:
    """Binary view of a mask: the pixels labeled MANIPULATED."""
    return RegionMask(m.labels == PixelLabel.MANIPULATED)


def is_subset(a: RegionMask, b: RegionMask) -> bool:
    """True iff every member pixel of a is a member pixel of b."""
    _check_same_shape(a, b)
    return kernels.is_subset(a.member, b.member)


def union(a: RegionMask, b: RegionMask) -> RegionMask:
    _check_same_shape(a, b)
    return RegionMask(a.member | b.member)


def f1_score(pred: Mask, gt: Mask) -> float:
    """Binary F1 with MANIPULATED positive and every other label negative.

    Computed over the full grid. Returns 1.0 when both manipulated sets
    are empty, so a correct "nothing new" step is not punished.
    """
    _check_same_shape(pred, gt)
    tp, fp, fn = kernels.confusion_counts(pred.labels, gt.labels,
                                          int(PixelLabel.MANIPULATED))
    denom = 2 * tp + fp + fn
    if denom == 0:
        return 1.0
    return 2.0 * tp / denom


def delta(m_next: Mask, m_prev: Mask) -> RegionMask:
    """Incremental region: manipulated in m_next but not in m_prev.

    Requires the previous manipulated set to be contained in the next one.
    """
    _check_same_shape(m_next, m_prev)
    prev = manipulated_set(m_prev)
    nxt = manipulated_set(m_next)
    if not kernels.is_subset(prev.member, nxt.member):
        raise ContainmentViolation("previous manipulated set is not contained in the next one")
    return RegionMask(nxt.member & ~prev.member)


def boundary(r: RegionMask, k: int = 1) -> RegionMask:
    """Morphological gradient: dilate(r, k) minus erode(r, k).

    Uses a (2k+1) square structuring element with replicate (grid-clipped)
    borders, so a full-grid region has an empty boundary.
    """
    if k < 1:
        raise ValueError(f"structuring element radius must be >= 1, got {k}")
    grown = kernels.dilate(r.member, k)
    kept = kernels.erode(r.member, k)
    return RegionMask(grown & ~kept)


def mask_from_region(region: RegionMask, background: PixelLabel) -> Mask:
    """Label mask with MANIPULATED inside the region, `background` outside."""
    labels = np.full(region.shape, int(background), dtype=np.uint8)
    labels[region.member] = int(PixelLabel.MANIPULATED)
    return Mask(labels)


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"grid shapes differ: {a.shape} vs {b.shape}")
