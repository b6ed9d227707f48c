"""Mask sequences: reverse leaf sampling, accumulation, and validation.

A tree is turned into forward manipulation orders by repeatedly removing
a uniform random leaf and reversing the removal order. Each order becomes
a sequence of accumulated masks (not-yet-revealed pixels are PADDING),
followed by a full-reveal step (AUTHENTIC complement) and a terminal EOS.
One-shot binary masks decompose into the same schema with a single
content region.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyTree, InvalidPath
from .masks import (Mask, PixelLabel, RegionMask, is_subset, manipulated_set,
                    mask_from_region)
from .tree import ROOT_ID, ManipulationTree


@dataclass(frozen=True)
class SequenceStep:
    """One sequence element; EOS steps carry no mask."""

    mask: Mask | None
    is_eos: bool = False

    @classmethod
    def eos(cls) -> "SequenceStep":
        return cls(mask=None, is_eos=True)


@dataclass(frozen=True)
class MaskSequence:
    steps: tuple[SequenceStep, ...]
    path: tuple[int, ...] = ()

    @property
    def content_masks(self) -> list[Mask]:
        return [s.mask for s in self.steps if not s.is_eos]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class PathSet:
    sequences: tuple[MaskSequence, ...]
    tree_ref: str | None = None


@dataclass(frozen=True)
class SequenceViolation:
    kind: str
    step: int  # index of the offending step, -1 for whole-sequence issues
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[SequenceViolation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations


def start_mask(width: int, height: int) -> Mask:
    """The all-PADDING initial mask."""
    return Mask.filled(width, height, PixelLabel.PADDING)


def reverse_sample_path(t: ManipulationTree, rng: np.random.Generator) -> tuple[int, ...]:
    """Draw one forward manipulation order from a tree.

    Repeatedly removes a uniform random non-root leaf from a scratch copy
    until only the root remains, then reverses the removal order. The
    result is a linear extension: ancestors precede descendants.
    """
    scratch = t.copy()
    removed = []
    while len(scratch.nodes) > 1:
        leaf_ids = sorted(i for i in scratch.leaves() if i != ROOT_ID)
        pick = leaf_ids[int(rng.integers(len(leaf_ids)))]
        scratch.remove_leaf(pick)
        removed.append(pick)
    if not removed:
        raise EmptyTree("tree has no non-root nodes to sample")
    return tuple(reversed(removed))


def path_to_sequence(t: ManipulationTree, path) -> MaskSequence:
    """Accumulated mask sequence for one forward order.

    Step t shows the union of the first t node regions as MANIPULATED and
    everything else as PADDING; a full-reveal step (AUTHENTIC complement)
    and an EOS marker are appended.
    """
    path = tuple(path)
    non_root = set(t.non_root_ids())
    if set(path) != non_root or len(path) != len(non_root):
        raise InvalidPath(f"path {path} is not a permutation of the non-root nodes")
    seen = {ROOT_ID}
    for node_id in path:
        parent = t.node(node_id).parent
        if parent not in seen:
            raise InvalidPath(
                f"node {node_id} appears before its ancestor {parent}")
        seen.add(node_id)
    steps = []
    acc = np.zeros((t.height, t.width), dtype=bool)
    for node_id in path:
        acc = acc | t.node(node_id).region.member
        steps.append(SequenceStep(mask_from_region(RegionMask(acc), PixelLabel.PADDING)))
    steps.append(SequenceStep(mask_from_region(RegionMask(acc), PixelLabel.AUTHENTIC)))
    steps.append(SequenceStep.eos())
    return MaskSequence(tuple(steps), path=path)


def sample_path_set(t: ManipulationTree, n: int, rng: np.random.Generator,
                    tree_ref: str | None = None) -> PathSet:
    """n independent reverse-sampled sequences (duplicates are kept)."""
    if n < 1:
        raise ValueError(f"path count must be >= 1, got {n}")
    sequences = tuple(path_to_sequence(t, reverse_sample_path(t, rng))
                      for _ in range(n))
    return PathSet(sequences, tree_ref=tree_ref)


def decompose_one_shot(binary: RegionMask) -> MaskSequence:
    """Reinterpret a one-shot binary mask as a two-step sequence.

    Step 1 shows the region as MANIPULATED with a PADDING complement,
    step 2 is the full reveal with an AUTHENTIC complement, then EOS.
    """
    steps = (
        SequenceStep(mask_from_region(binary, PixelLabel.PADDING)),
        SequenceStep(mask_from_region(binary, PixelLabel.AUTHENTIC)),
        SequenceStep.eos(),
    )
    return MaskSequence(steps)


def validate_sequence(s: MaskSequence) -> ValidationReport:
    """Check EOS placement, uniform dimensions, and stepwise containment.

    Violations are reported as data, never raised.
    """
    violations = []
    eos_positions = [i for i, step in enumerate(s.steps) if step.is_eos]
    if not eos_positions:
        violations.append(SequenceViolation("missing-eos", -1, "sequence has no EOS step"))
    else:
        if len(eos_positions) > 1:
            violations.append(SequenceViolation(
                "multiple-eos", eos_positions[1],
                f"{len(eos_positions)} EOS steps present"))
        if eos_positions[-1] != len(s.steps) - 1:
            violations.append(SequenceViolation(
                "misplaced-eos", eos_positions[-1], "EOS step is not last"))
    content = [(i, step.mask) for i, step in enumerate(s.steps) if not step.is_eos]
    if not content:
        violations.append(SequenceViolation("empty", -1, "sequence has no content steps"))
        return ValidationReport(tuple(violations))
    shape = content[0][1].shape
    for i, mask in content[1:]:
        if mask.shape != shape:
            violations.append(SequenceViolation(
                "dimension-mismatch", i,
                f"step {i} shape {mask.shape} differs from {shape}"))
    if any(v.kind == "dimension-mismatch" for v in violations):
        return ValidationReport(tuple(violations))
    for (i, prev), (j, nxt) in zip(content, content[1:]):
        if not is_subset(manipulated_set(prev), manipulated_set(nxt)):
            violations.append(SequenceViolation(
                "containment", j,
                f"manipulated set of step {i} is not contained in step {j}"))
    return ValidationReport(tuple(violations))
