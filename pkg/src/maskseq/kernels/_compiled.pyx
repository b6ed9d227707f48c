# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pixel kernels.

Fused single-pass confusion counts, early-exit subset tests, and
separable square-window morphology with grid-clipped borders. The
contract mirrors ``maskseq.kernels.pure``.
"""

import numpy as np


def confusion_counts(const unsigned char[:, ::1] pred,
                     const unsigned char[:, ::1] gt,
                     int positive=255):
    cdef Py_ssize_t h = pred.shape[0]
    cdef Py_ssize_t w = pred.shape[1]
    cdef Py_ssize_t y, x
    cdef long long tp = 0, fp = 0, fn = 0
    cdef bint p, g
    for y in range(h):
        for x in range(w):
            p = pred[y, x] == positive
            g = gt[y, x] == positive
            if p:
                if g:
                    tp += 1
                else:
                    fp += 1
            elif g:
                fn += 1
    return int(tp), int(fp), int(fn)


def subset_u8(const unsigned char[:, ::1] a,
              const unsigned char[:, ::1] b):
    cdef Py_ssize_t h = a.shape[0]
    cdef Py_ssize_t w = a.shape[1]
    cdef Py_ssize_t y, x
    for y in range(h):
        for x in range(w):
            if a[y, x] != 0 and b[y, x] == 0:
                return False
    return True


def dilate_u8(const unsigned char[:, ::1] member, int k):
    return _morph(member, k, 1)


def erode_u8(const unsigned char[:, ::1] member, int k):
    return _morph(member, k, 0)


def _morph(const unsigned char[:, ::1] member, int k, bint hit):
    # Two separable passes; `hit` selects OR (dilate) vs AND (erode).
    cdef Py_ssize_t h = member.shape[0]
    cdef Py_ssize_t w = member.shape[1]
    tmp_arr = np.empty((h, w), dtype=np.uint8)
    out_arr = np.empty((h, w), dtype=np.uint8)
    cdef unsigned char[:, ::1] tmp = tmp_arr
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t y, x, i, lo, hi
    cdef unsigned char v
    for y in range(h):
        for x in range(w):
            lo = x - k if x - k > 0 else 0
            hi = x + k if x + k < w - 1 else w - 1
            v = not hit
            for i in range(lo, hi + 1):
                if (member[y, i] != 0) == hit:
                    v = hit
                    break
            tmp[y, x] = v
    for x in range(w):
        for y in range(h):
            lo = y - k if y - k > 0 else 0
            hi = y + k if y + k < h - 1 else h - 1
            v = not hit
            for i in range(lo, hi + 1):
                if (tmp[i, x] != 0) == hit:
                    v = hit
                    break
            out[y, x] = v
    return out_arr
