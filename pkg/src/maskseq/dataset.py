"""On-disk datasets: canonical JSON manifest plus netpbm payload files.

Layout under a dataset directory:

    manifest.json
    images/<sample_id>.ppm                      P6 composites
    masks/<sample_id>/nodes/<node_id>.pgm       tree node regions
    masks/<sample_id>/<ps>/<seq>/<step>.pgm     sequence content steps
    boundaries/<sample_id>/<ps>/<seq>/<step>.pgm  optional edge targets

EOS steps are manifest entries ("eos": true), never files. The manifest
is serialized canonically (sorted keys, two-space indent, LF) so that
save -> load -> save is byte-identical.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import netpbm
from .errors import MissingFile, ParseError, ValidationFailed
from .masks import (Mask, PixelLabel, RegionMask, boundary, delta,
                    manipulated_set, mask_from_region)
from .sampler import (MaskSequence, PathSet, SequenceStep, start_mask,
                      validate_sequence)
from .synth import ImageBuffer
from .tree import ROOT_ID, ManipulationTree, TreeNode

FORMAT_VERSION = 1


@dataclass
class PathSetRecord:
    seed: int
    path_set: PathSet


@dataclass
class SampleRecord:
    sample_id: str
    image: ImageBuffer
    tree: ManipulationTree
    path_sets: list[PathSetRecord] = field(default_factory=list)


@dataclass
class Dataset:
    width: int
    height: int
    samples: list[SampleRecord] = field(default_factory=list)
    boundary_radius: int | None = None
    violations: list[str] = field(default_factory=list)


def emit_boundary_targets(sequence: MaskSequence, k: int = 1) -> list[RegionMask]:
    """Edge-supervision targets: boundary of each step's incremental region.

    The first delta is taken against the all-PADDING start mask, so the
    list has one entry per content step.
    """
    masks = sequence.content_masks
    if not masks:
        return []
    prev = start_mask(masks[0].width, masks[0].height)
    targets = []
    for mask in masks:
        targets.append(boundary(delta(mask, prev), k))
        prev = mask
    return targets


def save_dataset(dataset: Dataset, out_dir) -> Path:
    """Write all payload files plus the canonical manifest.

    Returns the manifest path. When ``dataset.boundary_radius`` is set,
    boundary targets are recomputed and stored per content step.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "format_version": FORMAT_VERSION,
        "grid": {"width": dataset.width, "height": dataset.height},
        "samples": [],
    }
    if dataset.boundary_radius is not None:
        manifest["boundary_radius"] = dataset.boundary_radius
    for sample in dataset.samples:
        manifest["samples"].append(_save_sample(sample, out, dataset.boundary_radius))
    manifest_path = out / "manifest.json"
    manifest_path.write_text(canonical_json(manifest), encoding="utf-8")
    return manifest_path


def _save_sample(sample: SampleRecord, out: Path, boundary_radius) -> dict:
    sid = sample.sample_id
    image_rel = f"images/{sid}.ppm"
    _write(out / image_rel, netpbm.encode_ppm(sample.image.data))
    nodes = []
    for node_id in sorted(sample.tree.nodes):
        if node_id == ROOT_ID:
            continue
        node = sample.tree.nodes[node_id]
        rel = f"masks/{sid}/nodes/{node_id}.pgm"
        _write(out / rel, netpbm.encode_pgm(
            mask_from_region(node.region, PixelLabel.AUTHENTIC).labels))
        nodes.append({
            "id": node.id,
            "parent_id": node.parent,
            "mask_file": rel,
            "depth": node.depth,
            "area": node.area,
        })
    path_sets = []
    for ps_idx, record in enumerate(sample.path_sets):
        sequences = []
        for seq_idx, seq in enumerate(record.path_set.sequences):
            steps = []
            for step_idx, mask in enumerate(seq.content_masks):
                rel = f"masks/{sid}/{ps_idx}/{seq_idx}/{step_idx}.pgm"
                _write(out / rel, netpbm.encode_pgm(mask.labels))
                steps.append(rel)
            entry = {"path": list(seq.path), "steps": steps, "eos": True}
            if boundary_radius is not None:
                entry["boundary_files"] = _save_boundaries(
                    seq, sid, ps_idx, seq_idx, out, boundary_radius)
            sequences.append(entry)
        path_sets.append({"seed": record.seed, "sequences": sequences})
    return {
        "sample_id": sid,
        "image_file": image_rel,
        "tree": {"nodes": nodes,
                 "insertion_order": list(sample.tree.insertion_order)},
        "path_sets": path_sets,
    }


def _save_boundaries(seq, sid, ps_idx, seq_idx, out: Path, k: int) -> list[str]:
    rels = []
    for step_idx, target in enumerate(emit_boundary_targets(seq, k)):
        rel = f"boundaries/{sid}/{ps_idx}/{seq_idx}/{step_idx}.pgm"
        _write(out / rel, netpbm.encode_pgm(
            mask_from_region(target, PixelLabel.AUTHENTIC).labels))
        rels.append(rel)
    return rels


def load_dataset(manifest_path, lenient: bool = False) -> Dataset:
    """Load and validate a dataset.

    File decode problems and grid mismatches always raise; sequence and
    tree containment violations raise ValidationFailed unless ``lenient``,
    in which case they are collected on ``Dataset.violations``.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise MissingFile(str(manifest_path))
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{manifest_path}: {exc}") from None
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported manifest format_version {version!r}")
    grid = manifest.get("grid", {})
    width, height = grid.get("width"), grid.get("height")
    if not (isinstance(width, int) and isinstance(height, int)) or width < 1 or height < 1:
        raise ParseError(f"invalid manifest grid {grid!r}")
    base = manifest_path.parent
    issues: list[str] = []
    dataset = Dataset(width, height,
                      boundary_radius=manifest.get("boundary_radius"))
    for entry in manifest.get("samples", []):
        dataset.samples.append(
            _load_sample(entry, base, width, height, dataset.boundary_radius, issues))
    if issues and not lenient:
        raise ValidationFailed(
            f"{len(issues)} violation(s); first: {issues[0]}")
    dataset.violations = issues
    return dataset


def _load_sample(entry: dict, base: Path, width, height, boundary_radius,
                 issues: list[str]) -> SampleRecord:
    sid = entry["sample_id"]
    pixels = netpbm.read_ppm(base / entry["image_file"])
    if pixels.shape != (height, width, 3):
        raise ParseError(
            f"{entry['image_file']}: image shape {pixels.shape[:2]} does not "
            f"match manifest grid {(height, width)}")
    tree = _load_tree(entry.get("tree", {}), base, sid, width, height, issues)
    path_sets = []
    for ps_idx, ps in enumerate(entry.get("path_sets", [])):
        sequences = []
        for seq_idx, seq_entry in enumerate(ps.get("sequences", [])):
            seq = _load_sequence(seq_entry, base, width, height)
            report = validate_sequence(seq)
            for v in report.violations:
                issues.append(f"{sid}: path_set {ps_idx} sequence {seq_idx}: "
                              f"{v.kind} at step {v.step}: {v.message}")
            _check_boundaries(seq_entry, base, width, height, boundary_radius)
            sequences.append(seq)
        path_sets.append(PathSetRecord(
            seed=ps.get("seed", 0),
            path_set=PathSet(tuple(sequences), tree_ref=sid)))
    return SampleRecord(sid, ImageBuffer(pixels), tree, path_sets)


def _load_tree(tree_entry: dict, base: Path, sid: str, width, height,
               issues: list[str]) -> ManipulationTree:
    tree = ManipulationTree(width, height)
    for node_entry in tree_entry.get("nodes", []):
        node_id = node_entry["id"]
        parent_id = node_entry["parent_id"]
        grid = netpbm.read_label_grid(base / node_entry["mask_file"])
        if grid.shape != (height, width):
            raise ParseError(
                f"{node_entry['mask_file']}: mask shape {grid.shape} does not "
                f"match manifest grid {(height, width)}")
        region = manipulated_set(Mask(grid))
        if parent_id not in tree.nodes:
            raise ParseError(
                f"{sid}: node {node_id} references unknown parent {parent_id}")
        parent = tree.nodes[parent_id]
        node = TreeNode(node_id, region, parent=parent_id, depth=parent.depth + 1)
        if node_entry.get("depth") != node.depth:
            issues.append(f"{sid}: node {node_id} recorded depth "
                          f"{node_entry.get('depth')} != {node.depth}")
        if node_entry.get("area") != region.area:
            issues.append(f"{sid}: node {node_id} recorded area "
                          f"{node_entry.get('area')} != {region.area}")
        tree.nodes[node_id] = node
        parent.children.append(node_id)
        tree._next_id = max(tree._next_id, node_id + 1)
    order = tree_entry.get("insertion_order", [])
    if sorted(order) != sorted(tree.non_root_ids()):
        raise ParseError(f"{sid}: insertion_order {order} is not a "
                         f"permutation of the stored nodes")
    tree.insertion_order = list(order)
    for problem in tree.check_invariants():
        issues.append(f"{sid}: tree: {problem}")
    return tree


def _load_sequence(seq_entry: dict, base: Path, width, height) -> MaskSequence:
    steps = []
    for rel in seq_entry["steps"]:
        grid = netpbm.read_label_grid(base / rel)
        if grid.shape != (height, width):
            raise ParseError(f"{rel}: mask shape {grid.shape} does not match "
                             f"manifest grid {(height, width)}")
        steps.append(SequenceStep(Mask(grid)))
    if seq_entry.get("eos", False):
        steps.append(SequenceStep.eos())
    return MaskSequence(tuple(steps), path=tuple(seq_entry.get("path", ())))


def _check_boundaries(seq_entry, base, width, height, boundary_radius):
    if boundary_radius is None:
        return
    for rel in seq_entry.get("boundary_files", []):
        grid = netpbm.read_label_grid(base / rel)
        if grid.shape != (height, width):
            raise ParseError(f"{rel}: boundary shape {grid.shape} does not "
                             f"match manifest grid {(height, width)}")


def load_sequence_dir(path) -> MaskSequence:
    """Read a directory of numbered step .pgm files as one sequence.

    Files sort by integer stem; an EOS step is appended (it has no file).
    """
    p = Path(path)
    if not p.is_dir():
        raise MissingFile(str(p))
    files = sorted(p.glob("*.pgm"), key=_numeric_stem)
    if not files:
        raise MissingFile(f"{p}: no .pgm step files")
    steps = [SequenceStep(Mask(netpbm.read_label_grid(f))) for f in files]
    steps.append(SequenceStep.eos())
    return MaskSequence(tuple(steps))


def save_sequence_dir(seq: MaskSequence, path) -> list[Path]:
    """Write a sequence's content steps as numbered .pgm files."""
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    written = []
    for idx, mask in enumerate(seq.content_masks):
        f = p / f"{idx}.pgm"
        f.write_bytes(netpbm.encode_pgm(mask.labels))
        written.append(f)
    return written


def canonical_json(obj) -> str:
    """Stable manifest serialization: sorted keys, 2-space indent, LF."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _numeric_stem(path: Path):
    try:
        return (0, int(path.stem))
    except ValueError:
        return (1, path.stem)


def _write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
