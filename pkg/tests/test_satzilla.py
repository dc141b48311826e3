import pytest

from oracles import E1
from satfeat.cnf import Cnf
from satfeat.satzilla import (
    BASE_NAMES, PROBING_NAMES, DegenerateInstance, base_vector, clause_biases, horn_features,
    size_features, variable_biases,
)


def test_name_counts():
    assert len(BASE_NAMES) == 38
    assert len(PROBING_NAMES) == 31
    assert not set(BASE_NAMES) & set(PROBING_NAMES)


def test_e1_values():
    feats = dict(zip(BASE_NAMES, base_vector(E1)))
    assert feats["clause_var_ratio"] == pytest.approx(4 / 3, abs=1e-9)
    assert feats["horn_fraction"] == pytest.approx(0.5, abs=1e-9)
    assert feats["binary_fraction"] == pytest.approx(0.75, abs=1e-9)
    assert feats["ternary_fraction"] == pytest.approx(0.25, abs=1e-9)
    assert feats["clause_bias_mean"] == pytest.approx(0.75, abs=1e-9)
    assert feats["var_bias_mean"] == pytest.approx(1 / 3, abs=1e-9)
    assert feats["vcg_var_deg_mean"] == 3 and feats["vcg_clause_deg_max"] == 3
    assert feats["vg_deg_mean"] == 2
    assert feats["pre_vars_removed_fraction"] == 0.0


def test_biases():
    assert variable_biases(E1).tolist() == pytest.approx([1 / 3] * 3)
    assert clause_biases(E1).tolist() == [1.0, 0.0, 1.0, 1.0]


def test_horn_occurrences():
    frac, counts = horn_features(E1)
    assert frac == 0.5
    assert counts.tolist() == [1, 1, 2]  # horn clauses are (-1, 3) and (-2, -3)


def test_removed_fractions():
    original = Cnf(4, ((1,), (-1, 2, 3), (2, -3), (3, 4)))
    reduced = Cnf(3, ((1, 2), (1, -2), (2, 3)))
    feats = dict(zip(BASE_NAMES, base_vector(reduced, original)))
    assert feats["pre_vars_removed_fraction"] == 0.25
    assert feats["pre_clauses_removed_fraction"] == 0.25


def test_degenerate():
    with pytest.raises(DegenerateInstance):
        size_features(Cnf(0, ()))
