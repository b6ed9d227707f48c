"""maskseq: tree-structured manipulation mask datasets and sequence scoring.

Synthesizes multi-step copy-move composites with containment trees, turns
trees (and one-shot binary masks) into autoregressive mask sequences, and
scores predicted sequences with a length-penalized monotonic-alignment
metric certified against a brute-force oracle.
"""

__version__ = "0.1.0"

from .errors import MaskSeqError
from .hss import (HssConfig, HssReport, brute_force_match, f1_matrix,
                  hss_score, length_penalty, monotonic_match)
from .kernels import backend_name as kernel_backend
from .masks import (Mask, PixelLabel, RegionMask, boundary, delta, f1_score,
                    is_subset, manipulated_set, mask_from_region, union)
from .sampler import (MaskSequence, PathSet, SequenceStep, decompose_one_shot,
                      path_to_sequence, reverse_sample_path, sample_path_set,
                      start_mask, validate_sequence)
from .synth import (ImageBuffer, SynthConfig, SynthSample, apply_copy_move,
                    generate_texture, sample_region, synthesize)
from .tree import ManipulationTree, TreeNode, new_tree

__all__ = [
    "MaskSeqError",
    "HssConfig", "HssReport", "brute_force_match", "f1_matrix", "hss_score",
    "length_penalty", "monotonic_match",
    "kernel_backend",
    "Mask", "PixelLabel", "RegionMask", "boundary", "delta", "f1_score",
    "is_subset", "manipulated_set", "mask_from_region", "union",
    "MaskSequence", "PathSet", "SequenceStep", "decompose_one_shot",
    "path_to_sequence", "reverse_sample_path", "sample_path_set",
    "start_mask", "validate_sequence",
    "ImageBuffer", "SynthConfig", "SynthSample", "apply_copy_move",
    "generate_texture", "sample_region", "synthesize",
    "ManipulationTree", "TreeNode", "new_tree",
]
