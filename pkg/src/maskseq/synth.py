"""Synthetic multi-step copy-move manipulation generator.

Builds a composite image plus its containment tree from a base image
(procedural value-noise textures stand in for photographs). Every draw
flows from one seed, so (base bytes, config) -> sample is a pure function.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (EmptyRegion, InvalidDimensions, NoValidSourceOffset,
                     PlacementFailed)
from .masks import RegionMask, is_subset
from .tree import ManipulationTree, new_tree

PLACEMENT_RETRIES = 64
SAMPLE_RETRIES = 8
OFFSET_RETRIES = 64


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Immutable (H, W, 3) uint8 RGB image."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidDimensions(f"image must be (H, W, 3), got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return np.array_equal(self.data, other.data)


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    nodes_min: int = 2
    nodes_max: int = 6
    nest_prob: float = 0.5
    area_frac_min: float = 0.05
    area_frac_max: float = 0.40
    shapes: tuple[str, ...] = ("rectangle", "ellipse")
    max_depth: int = 4

    def __post_init__(self):
        if not 0.0 <= self.nest_prob <= 1.0:
            raise ValueError(f"nest_prob must be in [0, 1], got {self.nest_prob}")
        if not 0.0 < self.area_frac_min <= self.area_frac_max < 1.0:
            raise ValueError("need 0 < area_frac_min <= area_frac_max < 1")
        if self.nodes_min < 1 or self.nodes_max < self.nodes_min:
            raise ValueError("need 1 <= nodes_min <= nodes_max")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        unknown = set(self.shapes) - {"rectangle", "ellipse"}
        if not self.shapes or unknown:
            raise ValueError(f"unsupported shapes: {sorted(unknown) or 'none given'}")


@dataclass(frozen=True)
class NodeProvenance:
    node_id: int
    source_rect: tuple[int, int, int, int]  # x, y, w, h of the copied patch bbox
    target_region: RegionMask


@dataclass(frozen=True)
class SynthSample:
    image: ImageBuffer
    tree: ManipulationTree
    provenance: tuple[NodeProvenance, ...] = field(default_factory=tuple)


def generate_texture(width: int, height: int, seed: int) -> ImageBuffer:
    """Deterministic smooth RGB value-noise texture."""
    if width < 16 or height < 16:
        raise InvalidDimensions(f"texture must be at least 16x16, got {width}x{height}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    acc = np.zeros((height, width, 3), dtype=np.float64)
    amp_total = 0.0
    for cell, amp in ((16, 1.0), (8, 0.5), (4, 0.25)):
        acc += amp * _value_noise(rng, width, height, cell)
        amp_total += amp
    acc /= amp_total
    return ImageBuffer(np.round(acc * 255.0).astype(np.uint8))


def _value_noise(rng, width, height, cell):
    """One octave: random lattice values, smoothstep-bilinear upsampling."""
    gw = width // cell + 2
    gh = height // cell + 2
    lattice = rng.random((gh, gw, 3))
    xs = np.arange(width) / cell
    ys = np.arange(height) / cell
    x0 = xs.astype(int)
    y0 = ys.astype(int)
    tx = _smoothstep(xs - x0)[None, :, None]
    ty = _smoothstep(ys - y0)[:, None, None]
    a = lattice[np.ix_(y0, x0)]
    b = lattice[np.ix_(y0, x0 + 1)]
    c = lattice[np.ix_(y0 + 1, x0)]
    d = lattice[np.ix_(y0 + 1, x0 + 1)]
    top = a + (b - a) * tx
    bottom = c + (d - c) * tx
    return top + (bottom - top) * ty


def _smoothstep(t):
    return t * t * (3.0 - 2.0 * t)


def sample_region(container: RegionMask, cfg: SynthConfig, rng: np.random.Generator) -> RegionMask:
    """Rectangle or ellipse fully inside `container`, with pixel area in
    [area_frac_min, area_frac_max] of the container's area.

    Retries placement up to 64 times before giving up.
    """
    area = container.area
    if area == 0:
        raise EmptyRegion("container region is empty")
    ys, xs = np.nonzero(container.member)
    y0, y1 = int(ys.min()), int(ys.max())
    x0, x1 = int(xs.min()), int(xs.max())
    box_h, box_w = y1 - y0 + 1, x1 - x0 + 1
    lo = cfg.area_frac_min * area
    hi = cfg.area_frac_max * area
    h, w = container.shape
    for _ in range(PLACEMENT_RETRIES):
        shape = cfg.shapes[int(rng.integers(len(cfg.shapes)))]
        target = float(rng.uniform(lo, hi))
        aspect = float(rng.uniform(0.5, 2.0))  # height / width
        if shape == "rectangle":
            member = _place_rectangle(target, aspect, x0, y0, box_w, box_h, w, h, rng)
        else:
            member = _place_ellipse(target, aspect, x0, y0, box_w, box_h, w, h, rng)
        if member is None:
            continue
        n = int(member.sum())
        if not lo <= n <= hi:
            continue
        cand = RegionMask(member)
        if not is_subset(cand, container):
            continue
        return cand
    raise PlacementFailed(
        f"no admissible region after {PLACEMENT_RETRIES} attempts "
        f"(container area {area}, target range [{lo:.1f}, {hi:.1f}])")


def _place_rectangle(target, aspect, x0, y0, box_w, box_h, w, h, rng):
    rh = max(1, round(math.sqrt(target * aspect)))
    rw = max(1, round(target / rh))
    if rh > box_h or rw > box_w:
        return None
    ty = y0 + int(rng.integers(box_h - rh + 1))
    tx = x0 + int(rng.integers(box_w - rw + 1))
    member = np.zeros((h, w), dtype=bool)
    member[ty:ty + rh, tx:tx + rw] = True
    return member


def _place_ellipse(target, aspect, x0, y0, box_w, box_h, w, h, rng):
    ry = math.sqrt(target * aspect / math.pi)  # semi-axes
    rx = target / (math.pi * ry)
    if 2 * ry > box_h or 2 * rx > box_w:
        return None
    cy = float(rng.uniform(y0 + ry, y0 + box_h - ry))
    cx = float(rng.uniform(x0 + rx, x0 + box_w - rx))
    yy = (np.arange(h, dtype=np.float64) - cy) / ry
    xx = (np.arange(w, dtype=np.float64) - cx) / rx
    return yy[:, None] ** 2 + xx[None, :] ** 2 <= 1.0


def apply_copy_move(img: ImageBuffer, target: RegionMask, rng: np.random.Generator):
    """Fill `target` with pixels copied from an equal-shape source elsewhere.

    Returns (new image, source bbox rect). Pixels outside the target are
    bit-identical to the input.
    """
    if target.shape != (img.height, img.width):
        raise InvalidDimensions(
            f"target shape {target.shape} does not match image "
            f"{(img.height, img.width)}")
    if target.is_empty:
        raise EmptyRegion("copy-move target region is empty")
    ys, xs = np.nonzero(target.member)
    y0, y1 = int(ys.min()), int(ys.max())
    x0, x1 = int(xs.min()), int(xs.max())
    dy_lo, dy_hi = -y0, img.height - 1 - y1
    dx_lo, dx_hi = -x0, img.width - 1 - x1
    if (dy_hi - dy_lo + 1) * (dx_hi - dx_lo + 1) <= 1:
        raise NoValidSourceOffset("target bounding box spans the whole grid")
    for _ in range(OFFSET_RETRIES):
        dy = int(rng.integers(dy_lo, dy_hi + 1))
        dx = int(rng.integers(dx_lo, dx_hi + 1))
        if (dy, dx) != (0, 0):
            break
    else:
        raise NoValidSourceOffset("could not draw a nonzero source offset")
    out = img.data.copy()
    out[ys, xs] = img.data[ys + dy, xs + dx]
    rect = (x0 + dx, y0 + dy, x1 - x0 + 1, y1 - y0 + 1)
    return ImageBuffer(out), rect


def synthesize(base: ImageBuffer, cfg: SynthConfig) -> SynthSample:
    """Generate one composite sample: image plus containment tree.

    Draws the node count uniformly from [nodes_min, nodes_max]. Each new
    region nests inside a uniformly chosen non-root leaf (below the depth
    cap) with probability nest_prob, else goes under the root. A failed
    placement restarts the whole sample with a derived seed, up to 8 times.
    """
    streams = np.random.SeedSequence(cfg.seed).spawn(SAMPLE_RETRIES + 1)
    last_err = None
    for stream in streams:
        rng = np.random.Generator(np.random.PCG64(stream))
        try:
            return _synthesize_once(base, cfg, rng)
        except (PlacementFailed, NoValidSourceOffset) as exc:
            last_err = exc
    raise PlacementFailed(
        f"sample failed after {SAMPLE_RETRIES + 1} seeded attempts: {last_err}")


def _synthesize_once(base: ImageBuffer, cfg: SynthConfig, rng) -> SynthSample:
    tree = new_tree(base.width, base.height)
    img = base
    provenance = []
    n = int(rng.integers(cfg.nodes_min, cfg.nodes_max + 1))
    for _ in range(n):
        nest = bool(rng.random() < cfg.nest_prob)
        container = tree.root
        if nest:
            candidates = sorted(
                i for i in tree.leaves()
                if i != tree.root.id and tree.node(i).depth < cfg.max_depth)
            if candidates:
                container = tree.node(candidates[int(rng.integers(len(candidates)))])
        region = sample_region(container.region, cfg, rng)
        img, src_rect = apply_copy_move(img, region, rng)
        node_id = tree.insert_region(region)
        provenance.append(NodeProvenance(node_id, src_rect, region))
    return SynthSample(img, tree, tuple(provenance))
