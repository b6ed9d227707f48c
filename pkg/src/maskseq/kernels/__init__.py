"""Pixel kernels with a compiled core and a numpy fallback.

The compiled extension is preferred when it was built; otherwise the
numpy implementation is used. ``MASKSEQ_KERNELS=pure`` forces the
fallback, ``MASKSEQ_KERNELS=compiled`` fails loudly if the extension is
missing. Both backends share one contract, checked by the test suite
and compared by ``benchmarks/bench_kernels.py``.
"""

import importlib
import os

import numpy as np

from . import pure

_compiled = None
_choice = os.environ.get("MASKSEQ_KERNELS", "auto").strip().lower() or "auto"
if _choice not in ("auto", "pure", "compiled"):
    raise ImportError(f"MASKSEQ_KERNELS must be auto, pure or compiled, got {_choice!r}")
if _choice != "pure":
    try:
        _compiled = importlib.import_module("._compiled", __name__)
    except ImportError:
        _compiled = None
    if _choice == "compiled" and _compiled is None:
        raise ImportError("MASKSEQ_KERNELS=compiled but the extension is not built")

_active = _compiled if _compiled is not None else pure


def backend_name() -> str:
    """Name of the backend selected at import: 'compiled' or 'pure'."""
    return "pure" if _active is pure else "compiled"


def available_backends() -> dict:
    """Importable backend modules keyed by name."""
    out = {"pure": pure}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def confusion_counts(pred: np.ndarray, gt: np.ndarray, positive: int = 255):
    """(tp, fp, fn) with `positive` as the positive byte code."""
    return _active.confusion_counts(_u8(pred), _u8(gt), positive)


def is_subset(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(_active.subset_u8(_u8(a), _u8(b)))


def dilate(member: np.ndarray, k: int) -> np.ndarray:
    return _active.dilate_u8(_u8(member), k).view(bool)


def erode(member: np.ndarray, k: int) -> np.ndarray:
    return _active.erode_u8(_u8(member), k).view(bool)


def _u8(arr: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(arr)
    if a.dtype == np.bool_:
        return a.view(np.uint8)
    if a.dtype != np.uint8:
        raise TypeError(f"kernel input must be uint8 or bool, got {a.dtype}")
    return a
