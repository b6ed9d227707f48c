import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from maskseq.errors import ContainmentViolation, DimensionMismatch, InvalidDimensions
from maskseq.masks import (Mask, PixelLabel, RegionMask, boundary, delta,
                           f1_score, is_subset, manipulated_set,
                           mask_from_region, union)
from tests.conftest import brute_dilate, brute_erode, mask, rect_region, region

regions_2x2 = st.builds(
    RegionMask, hnp.arrays(bool, (2, 2)))


def test_mask_rejects_illegal_labels():
    with pytest.raises(InvalidDimensions, match="illegal label"):
        Mask(np.array([[0, 7]], dtype=np.uint8))


def test_mask_is_immutable():
    m = mask("x.", ".x")
    with pytest.raises(ValueError):
        m.labels[0, 0] = 0


def test_manipulated_set_trivial_cases():
    assert manipulated_set(mask("pp", "pp")).is_empty
    assert manipulated_set(mask("xx", "xx")) == RegionMask.full(2, 2)
    assert manipulated_set(mask("x.", "..")) == region("x.", "..")


def test_is_subset_basics():
    empty = RegionMask.empty(2, 2)
    a = region("x.", "..")
    b = region("..", ".x")
    assert is_subset(empty, a)
    assert is_subset(a, a)
    assert not is_subset(a, b)
    with pytest.raises(DimensionMismatch):
        is_subset(a, RegionMask.empty(3, 3))


def test_union_basics():
    a = region("x.", "..")
    b = region("..", ".x")
    empty = RegionMask.empty(2, 2)
    assert union(a, empty) == a
    assert union(a, a) == a
    assert union(a, b) == region("x.", ".x")
    with pytest.raises(DimensionMismatch):
        union(a, RegionMask.empty(3, 3))


@given(a=hnp.arrays(bool, (3, 4)), b=hnp.arrays(bool, (3, 4)),
       c=hnp.arrays(bool, (3, 4)))
@settings(max_examples=50)
def test_union_algebra(a, b, c):
    ra, rb, rc = RegionMask(a), RegionMask(b), RegionMask(c)
    assert union(ra, rb) == union(rb, ra)
    assert union(union(ra, rb), rc) == union(ra, union(rb, rc))
    assert union(ra, ra) == ra
    assert union(ra, RegionMask.empty(4, 3)) == ra
    assert is_subset(ra, union(ra, rb))


def test_f1_identical_nonempty_is_one():
    m = mask("xx..", )
    assert f1_score(m, m) == 1.0


def test_f1_no_overlap_is_zero():
    pred = mask("....")
    gt = mask("xx..")
    assert f1_score(pred, gt) == 0.0


def test_f1_hand_counted_half():
    # pred positives {0,1}, gt positives {1,2}: TP=1, FP=1, FN=1.
    pred = mask("xx..")
    gt = mask(".xx.")
    assert f1_score(pred, gt) == 0.5


def test_f1_both_empty_convention():
    a = mask("pp..")
    b = mask("..pp")
    assert f1_score(a, b) == 1.0
    assert f1_score(b, a) == 1.0


def test_f1_padding_counts_as_negative():
    pred = mask("xp")
    gt = mask("x.")
    assert f1_score(pred, gt) == 1.0


@given(a=hnp.arrays(bool, (3, 3)), b=hnp.arrays(bool, (3, 3)))
@settings(max_examples=60)
def test_f1_is_one_iff_sets_equal(a, b):
    pred = mask_from_region(RegionMask(a), PixelLabel.AUTHENTIC)
    gt = mask_from_region(RegionMask(b), PixelLabel.AUTHENTIC)
    if np.array_equal(a, b):
        assert f1_score(pred, gt) == 1.0
    else:
        assert f1_score(pred, gt) < 1.0


def test_f1_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        f1_score(mask("x"), mask("xx"))


def test_delta_identity_is_empty():
    m = mask("x.", ".p")
    assert delta(m, m).is_empty


def test_delta_from_empty_is_full_set():
    prev = mask("pp", "pp")
    nxt = mask("xp", "px")
    assert delta(nxt, prev) == region("x.", ".x")


def test_delta_nested_rectangles_ring():
    # 4x4 outer minus 2x2 inner leaves a 12-pixel ring.
    outer = mask_from_region(rect_region(4, 4, 0, 0, 4, 4), PixelLabel.PADDING)
    inner = mask_from_region(rect_region(4, 4, 1, 1, 2, 2), PixelLabel.PADDING)
    ring = delta(outer, inner)
    assert ring.area == 12
    assert not ring.member[1:3, 1:3].any()


def test_delta_containment_violation():
    prev = mask("x.")
    nxt = mask(".x")
    with pytest.raises(ContainmentViolation):
        delta(nxt, prev)


def test_delta_union_recomposes():
    prev = mask("xp", "pp")
    nxt = mask("xx", "pp")
    assert union(manipulated_set(prev), delta(nxt, prev)) == manipulated_set(nxt)


def test_boundary_empty_region():
    assert boundary(RegionMask.empty(5, 5), 1).is_empty


def test_boundary_full_grid_is_empty():
    # Clamped borders: erosion of the full grid stays full.
    assert boundary(RegionMask.full(5, 5), 1).is_empty


def test_boundary_center_pixel_is_3x3_block():
    r = rect_region(5, 5, 2, 2, 1, 1)
    b = boundary(r, 1)
    assert b.area == 9
    assert b.member[1:4, 1:4].all()


def test_boundary_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        boundary(RegionMask.empty(3, 3), 0)


@given(member=hnp.arrays(bool, hnp.array_shapes(min_dims=2, max_dims=2,
                                                min_side=1, max_side=12)),
       k=st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_boundary_matches_direct_morphology(member, k):
    r = RegionMask(member)
    expected = brute_dilate(member, k) & ~brute_erode(member, k)
    got = boundary(r, k)
    assert np.array_equal(got.member, expected)
    # Gradient is disjoint from the erosion and contained in the dilation.
    assert not (got.member & brute_erode(member, k)).any()
    assert is_subset(got, RegionMask(brute_dilate(member, k)))


def test_mask_from_region_backgrounds():
    r = region("x.", "..")
    assert mask_from_region(r, PixelLabel.PADDING) == mask("xp", "pp")
    assert mask_from_region(r, PixelLabel.AUTHENTIC) == mask("x.", "..")
