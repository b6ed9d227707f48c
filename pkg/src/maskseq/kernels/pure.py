"""Numpy implementations of the pixel kernels.

Same contract as the compiled module: label grids are raw uint8 byte
codes, region grids are uint8 0/1. Returned region grids are uint8 0/1.
"""

import numpy as np


def confusion_counts(pred, gt, positive=255):
    """Single-label confusion counts (tp, fp, fn) over the full grid."""
    p = pred == positive
    g = gt == positive
    tp = int(np.count_nonzero(p & g))
    fp = int(np.count_nonzero(p)) - tp
    fn = int(np.count_nonzero(g)) - tp
    return tp, fp, fn


def subset_u8(a, b):
    """True iff every nonzero pixel of a is nonzero in b."""
    return not bool(np.any((a != 0) & (b == 0)))


def dilate_u8(member, k):
    """OR over the (2k+1) square window, clipped to the grid."""
    m = member != 0
    return _slide(_slide(m, k, 1, True), k, 0, True).view(np.uint8)


def erode_u8(member, k):
    """AND over the (2k+1) square window, clipped to the grid."""
    m = member != 0
    return _slide(_slide(m, k, 1, False), k, 0, False).view(np.uint8)


def _slide(m, k, axis, use_or):
    # Separable 1-D pass: combine each pixel with its in-grid neighbors at
    # offsets 1..k in both directions along `axis`.
    out = m.copy()
    op = np.logical_or if use_or else np.logical_and
    for d in range(1, k + 1):
        if axis == 1:
            op(out[:, :-d], m[:, d:], out=out[:, :-d])
            op(out[:, d:], m[:, :-d], out=out[:, d:])
        else:
            op(out[:-d, :], m[d:, :], out=out[:-d, :])
            op(out[d:, :], m[:-d, :], out=out[d:, :])
    return out
