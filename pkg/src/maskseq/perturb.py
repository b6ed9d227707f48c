"""Deterministic sequence perturbations for exercising the scorer.

Each mode probes one metric component: step dropping/duplication hits the
length penalty, dilation/erosion the stepwise F1, and relabeling both.
Outputs may violate containment on purpose; the validator reports it and
the scorer still runs.
"""

import numpy as np

from . import kernels
from .errors import UnknownMode
from .masks import Mask, PixelLabel
from .sampler import MaskSequence, SequenceStep

MODES = ("drop-last-step", "duplicate-step", "dilate-masks", "erode-masks",
         "relabel-fraction")


def perturb_sequence(seq: MaskSequence, mode: str, magnitude: float,
                     seed: int) -> MaskSequence:
    """Apply one perturbation mode; magnitude 0 is always the identity."""
    if mode not in MODES:
        raise UnknownMode(f"unknown perturbation mode {mode!r}; pick one of {MODES}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    masks = seq.content_masks
    if mode == "drop-last-step":
        keep = len(masks) - int(magnitude)
        masks = masks[:max(keep, 0)]
    elif mode == "duplicate-step":
        for _ in range(int(magnitude)):
            if not masks:
                break
            at = int(rng.integers(len(masks)))
            masks.insert(at + 1, masks[at])
    elif mode == "dilate-masks":
        masks = [_grow(m, int(magnitude)) for m in masks]
    elif mode == "erode-masks":
        masks = [_shrink(m, int(magnitude)) for m in masks]
    else:  # relabel-fraction
        masks = [_relabel(m, float(magnitude), rng) for m in masks]
    steps = tuple(SequenceStep(m) for m in masks) + (SequenceStep.eos(),)
    return MaskSequence(steps, path=seq.path)


def _grow(mask: Mask, k: int) -> Mask:
    if k <= 0:
        return mask
    grown = kernels.dilate(mask.labels == PixelLabel.MANIPULATED, k)
    labels = mask.labels.copy()
    labels[grown] = int(PixelLabel.MANIPULATED)
    return Mask(labels)


def _shrink(mask: Mask, k: int) -> Mask:
    if k <= 0:
        return mask
    member = mask.labels == PixelLabel.MANIPULATED
    kept = kernels.erode(member, k)
    labels = mask.labels.copy()
    # Demoted pixels take the mask's background label.
    background = PixelLabel.PADDING if (mask.labels == PixelLabel.PADDING).any() \
        else PixelLabel.AUTHENTIC
    labels[member & ~kept] = int(background)
    return Mask(labels)


def _relabel(mask: Mask, fraction: float, rng) -> Mask:
    count = int(round(fraction * mask.labels.size))
    if count <= 0:
        return mask
    flat = rng.choice(mask.labels.size, size=min(count, mask.labels.size),
                      replace=False)
    codes = np.array([int(v) for v in PixelLabel], dtype=np.uint8)
    labels = mask.labels.copy()
    labels.flat[flat] = rng.choice(codes, size=len(flat))
    return Mask(labels)
