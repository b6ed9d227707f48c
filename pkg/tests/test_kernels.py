"""Backend equivalence: every kernel must agree across pure and compiled."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from maskseq import kernels
from tests.conftest import brute_dilate, brute_erode

BACKENDS = sorted(kernels.available_backends())


def backend(name):
    return kernels.available_backends()[name]


def random_labels(rng, h, w):
    return rng.choice(np.array([0, 128, 255], dtype=np.uint8), size=(h, w))


@pytest.mark.parametrize("name", BACKENDS)
def test_confusion_counts_match_numpy_reference(name, rng):
    mod = backend(name)
    for _ in range(25):
        h, w = rng.integers(1, 40, size=2)
        pred = random_labels(rng, h, w)
        gt = random_labels(rng, h, w)
        tp, fp, fn = mod.confusion_counts(pred, gt, 255)
        p, g = pred == 255, gt == 255
        assert tp == np.count_nonzero(p & g)
        assert fp == np.count_nonzero(p & ~g)
        assert fn == np.count_nonzero(~p & g)


@pytest.mark.parametrize("name", BACKENDS)
def test_subset_matches_numpy_reference(name, rng):
    mod = backend(name)
    for _ in range(50):
        h, w = rng.integers(1, 20, size=2)
        a = (rng.random((h, w)) < 0.3).astype(np.uint8)
        b = (rng.random((h, w)) < 0.6).astype(np.uint8)
        assert mod.subset_u8(a, b) == bool(not np.any((a != 0) & (b == 0)))
        assert mod.subset_u8(a, a)
        assert mod.subset_u8(np.zeros_like(a), a)


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_morphology_matches_window_scan(name, k, rng):
    mod = backend(name)
    for _ in range(20):
        h, w = rng.integers(1, 16, size=2)
        member = (rng.random((h, w)) < 0.4)
        got_d = mod.dilate_u8(member.view(np.uint8), k).view(bool)
        got_e = mod.erode_u8(member.view(np.uint8), k).view(bool)
        assert np.array_equal(got_d, brute_dilate(member, k))
        assert np.array_equal(got_e, brute_erode(member, k))


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@given(member=hnp.arrays(bool, hnp.array_shapes(min_dims=2, max_dims=2,
                                                min_side=1, max_side=24)),
       k=st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_backends_agree_on_morphology(member, k):
    pure = kernels.available_backends()["pure"]
    comp = kernels.available_backends()["compiled"]
    m = member.view(np.uint8)
    assert np.array_equal(pure.dilate_u8(m, k), comp.dilate_u8(m, k))
    assert np.array_equal(pure.erode_u8(m, k), comp.erode_u8(m, k))


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree_on_confusion_and_subset(rng):
    pure = kernels.available_backends()["pure"]
    comp = kernels.available_backends()["compiled"]
    for _ in range(50):
        h, w = rng.integers(1, 64, size=2)
        pred = random_labels(rng, h, w)
        gt = random_labels(rng, h, w)
        assert pure.confusion_counts(pred, gt, 255) == comp.confusion_counts(pred, gt, 255)
        a = (pred == 255).view(np.uint8)
        b = (gt == 255).view(np.uint8)
        assert pure.subset_u8(a, b) == comp.subset_u8(a, b)


def test_wrapper_rejects_wrong_dtype():
    with pytest.raises(TypeError):
        kernels.is_subset(np.zeros((2, 2), dtype=np.int32),
                          np.zeros((2, 2), dtype=np.int32))
