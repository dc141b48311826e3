import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satfeat.stats import STAT_NAMES, entropy, log2_mean_exp2, safe_ratio, summarize


def test_empty_is_zero():
    s = summarize([])
    assert all(v == 0.0 for v in s.values())
    assert len(s.values()) == 13


def test_basic_values():
    s = summarize([1, 2, 2, 3, 7])
    assert s.count == 5 and s.min == 1 and s.max == 7
    assert s.mean == pytest.approx(3.0)
    assert s.std == pytest.approx(np.sqrt(np.mean((np.array([1, 2, 2, 3, 7]) - 3) ** 2)))
    assert s.cv == pytest.approx(s.std / 3)
    assert (s.q1, s.median, s.q3) == (2.0, 2.0, 3.0)
    assert s.mode == 2 and s.mode_rate == pytest.approx(0.4)
    assert s.zeros == 0
    p = np.array([1, 2, 1, 1]) / 5
    assert s.entropy == pytest.approx(-(p * np.log(p)).sum())


def test_mode_tie_smallest():
    assert summarize([3, 1, 3, 1]).mode == 1


def test_cv_zero_mean():
    assert summarize([-1, 1]).cv == 0.0


def test_zeros_counted():
    assert summarize([0, 0, 1]).zeros == 2


def test_entropy_binned_for_reals():
    x = np.linspace(0, 1, 1000) + 1e-3
    assert entropy(x) == pytest.approx(math.log(100), rel=1e-3)
    assert entropy([0.5, 0.5]) == 0.0


def test_schedule_subset_and_unknown():
    s = summarize([1, 2], ("mean", "max"))
    assert s.as_dict() == {"mean": 1.5, "max": 2.0}
    assert s.values(("max", "mean")) == [2.0, 1.5]
    with pytest.raises(ValueError):
        summarize([1], ("bogus",))


def test_helpers():
    assert safe_ratio(1, 0) == 0.0 and safe_ratio(1, 4) == 0.25
    assert log2_mean_exp2([3000, 3000]) == pytest.approx(3000)
    assert log2_mean_exp2([1, 3]) == pytest.approx(math.log2(5))


floats = st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=40)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(floats, st.randoms(use_true_random=False))
def test_permutation_invariant(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    a, b = summarize(xs).values(), summarize(ys).values()
    np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-9)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.lists(st.integers(0, 1000), min_size=1, max_size=40), st.integers(1, 50))
def test_positive_scaling(xs, c):
    a, b = summarize(xs), summarize([c * x for x in xs])
    for name in ("min", "max", "mean", "std", "median", "q1", "q3", "mode"):
        assert getattr(b, name) == pytest.approx(c * getattr(a, name), rel=1e-9, abs=1e-9)
    for name in ("cv", "mode_rate", "entropy", "count", "zeros"):
        assert getattr(b, name) == pytest.approx(getattr(a, name), rel=1e-9, abs=1e-9)


def test_stat_names_order():
    assert STAT_NAMES[0] == "count" and len(STAT_NAMES) == 13
