"""Hierarchical sequential scoring of predicted mask sequences.

A prediction is compared against every reference sequence of a path set:
stepwise F1 matrix, best non-decreasing alignment found by dynamic
programming, max over references, then a length penalty on the step-count
mismatch. A brute-force enumerator certifies the dynamic program.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, EmptyPathSet
from .masks import f1_score
from .sampler import MaskSequence, PathSet

BRUTE_FORCE_MAX_STEPS = 8


@dataclass(frozen=True)
class HssConfig:
    alpha: float = 0.1  # length penalty strength

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")


@dataclass(frozen=True)
class HssReport:
    per_path_scores: tuple[float, ...]
    best_path_index: int
    f1_match: float
    t_p: int
    t_g: int
    length_penalty: float
    score: float
    alignment: tuple[int, ...]  # 0-based reference index per prediction step

    def to_dict(self) -> dict:
        return {
            "per_path_scores": list(self.per_path_scores),
            "best_path_index": self.best_path_index,
            "f1_match": self.f1_match,
            "t_p": self.t_p,
            "t_g": self.t_g,
            "length_penalty": self.length_penalty,
            "score": self.score,
            "alignment": list(self.alignment),
        }


def f1_matrix(pred: MaskSequence, gt: MaskSequence) -> np.ndarray:
    """Pairwise F1 between the content steps of two sequences."""
    p = pred.content_masks
    g = gt.content_masks
    out = np.empty((len(p), len(g)), dtype=np.float64)
    for i, pm in enumerate(p):
        for j, gm in enumerate(g):
            out[i, j] = f1_score(pm, gm)
    return out


def monotonic_match(f: np.ndarray):
    """Best average F1 over non-decreasing step alignments.

    Fills D[i, j] = F[i, j] + max_{k <= j} D[i-1, k] and returns
    (max_j D[T_p-1, j] / T_p, alignment), the alignment recovered by
    backtracking with ties broken toward the smallest reference index.
    A zero-length prediction (or an empty reference) scores 0.
    """
    f = np.asarray(f, dtype=np.float64)
    t_p, t_g = f.shape
    if t_p == 0 or t_g == 0:
        return 0.0, ()
    d = np.empty_like(f)
    d[0] = f[0]
    for i in range(1, t_p):
        d[i] = f[i] + np.maximum.accumulate(d[i - 1])
    j = int(np.argmax(d[-1]))  # np.argmax picks the first (smallest) index
    score = float(d[-1, j]) / t_p
    alignment = [0] * t_p
    alignment[-1] = j
    for i in range(t_p - 1, 0, -1):
        j = int(np.argmax(d[i - 1, :j + 1]))
        alignment[i - 1] = j
    return score, tuple(alignment)


def brute_force_match(f: np.ndarray) -> float:
    """Exhaustive maximum over every non-decreasing alignment.

    Independent oracle for :func:`monotonic_match`; refuses matrices
    beyond an 8x8 step budget.
    """
    f = np.asarray(f, dtype=np.float64)
    t_p, t_g = f.shape
    if t_p > BRUTE_FORCE_MAX_STEPS or t_g > BRUTE_FORCE_MAX_STEPS:
        raise BudgetExceeded(
            f"enumeration limited to {BRUTE_FORCE_MAX_STEPS} steps per side, "
            f"got {t_p}x{t_g}")
    if t_p == 0 or t_g == 0:
        return 0.0
    maps = np.array(
        list(itertools.combinations_with_replacement(range(t_g), t_p)),
        dtype=np.intp)
    totals = f[np.arange(t_p)[None, :], maps].sum(axis=1)
    return float(totals.max()) / t_p


def length_penalty(t_p: int, t_g: int, cfg: HssConfig = HssConfig()) -> float:
    """exp(-alpha * (t_p - t_g)^2 / max(t_g, 1))."""
    if t_p < 0 or t_g < 0:
        raise ValueError("step counts must be >= 0")
    return math.exp(-cfg.alpha * (t_p - t_g) ** 2 / max(t_g, 1))


def hss_score(pred: MaskSequence, paths: PathSet,
              cfg: HssConfig = HssConfig(), threads: int = 1) -> HssReport:
    """Score a prediction against a path set.

    The matched F1 is the maximum monotonic-alignment score over all
    reference sequences (ties toward the lowest index); the length penalty
    uses the step count of that argmax reference. Per-path matches are
    independent, so `threads` > 1 maps them over a pool; the reduction
    order is fixed, so results do not depend on the thread count.
    """
    if not paths.sequences:
        raise EmptyPathSet("path set contains no sequences")
    _check_grids(pred, paths)
    t_p = len(pred.content_masks)

    def match(gt):
        return monotonic_match(f1_matrix(pred, gt))

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            matched = list(pool.map(match, paths.sequences))
    else:
        matched = [match(gt) for gt in paths.sequences]
    per_path = [score for score, _ in matched]
    alignments = [alignment for _, alignment in matched]
    best = 0
    for i, s in enumerate(per_path):
        if s > per_path[best]:
            best = i
    f1m = per_path[best]
    t_g = len(paths.sequences[best].content_masks)
    lam = length_penalty(t_p, t_g, cfg)
    return HssReport(
        per_path_scores=tuple(per_path),
        best_path_index=best,
        f1_match=f1m,
        t_p=t_p,
        t_g=t_g,
        length_penalty=lam,
        score=lam * f1m,
        alignment=alignments[best],
    )


def run_oracle_trials(trials: int, max_steps: int, seed: int):
    """Random-matrix equivalence run: dynamic program vs enumeration.

    Returns (trial descriptions of mismatches beyond 1e-12, trial count).
    """
    if max_steps > BRUTE_FORCE_MAX_STEPS:
        raise BudgetExceeded(
            f"max_steps {max_steps} exceeds the enumeration budget "
            f"{BRUTE_FORCE_MAX_STEPS}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    mismatches = []
    for trial in range(trials):
        t_p = int(rng.integers(0, max_steps + 1))
        t_g = int(rng.integers(0, max_steps + 1))
        f = rng.random((t_p, t_g))
        dp, alignment = monotonic_match(f)
        oracle = brute_force_match(f)
        if abs(dp - oracle) > 1e-12:
            mismatches.append(
                f"trial {trial}: dp={dp!r} oracle={oracle!r} shape={t_p}x{t_g}")
            continue
        if t_p and t_g:
            direct = _alignment_score(f, alignment)
            if direct != dp:
                mismatches.append(
                    f"trial {trial}: alignment re-evaluation {direct!r} != dp {dp!r}")
    return mismatches, trials


def _check_grids(pred: MaskSequence, paths: PathSet) -> None:
    shapes = {m.shape for m in pred.content_masks}
    for seq in paths.sequences:
        shapes.update(m.shape for m in seq.content_masks)
    if len(shapes) > 1:
        raise DimensionMismatch(f"sequences mix grid shapes: {sorted(shapes)}")


def _alignment_score(f: np.ndarray, alignment) -> float:
    # Re-evaluate an alignment with the same left-to-right addition order
    # as the DP accumulation, so an optimal alignment reproduces the score
    # bit-for-bit.
    total = 0.0
    for i, j in enumerate(alignment):
        total += f[i, j]
    return total / f.shape[0]
