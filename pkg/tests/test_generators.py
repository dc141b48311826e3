import pytest

from oracles import brute_sat
from satfeat.cnf import parse_dimacs, write_dimacs
from satfeat.generators import FAMILIES, generate, graph_coloring, pigeonhole, random_ksat


def test_random_ksat_shape():
    f = random_ksat(100, 4.2, 3, seed=0)
    assert f.num_vars == 100 and f.num_clauses == 420
    assert all(len({abs(l) for l in c}) == 3 for c in f.clauses)


def test_random_ksat_deterministic():
    assert random_ksat(50, seed=3) == random_ksat(50, seed=3)
    assert random_ksat(50, seed=3) != random_ksat(50, seed=4)


def test_random_ksat_invalid():
    with pytest.raises(ValueError):
        random_ksat(2, k=3)


def test_pigeonhole():
    f = pigeonhole(2)
    assert f.num_vars == 6 and f.num_clauses == 9
    assert not brute_sat(f)
    with pytest.raises(ValueError):
        pigeonhole(0)


def test_graph_coloring():
    f = graph_coloring(4, 0.0, 2, seed=0)
    assert brute_sat(f)
    # K3 is not 2-colourable
    assert not brute_sat(graph_coloring(3, 1.0, 2, seed=0))
    assert brute_sat(graph_coloring(3, 1.0, 3, seed=0))


@pytest.mark.parametrize("family", FAMILIES)
def test_generate_roundtrip(family):
    f = generate(family, seed=1)
    assert parse_dimacs(write_dimacs(f)) == f


def test_unknown_family():
    with pytest.raises(ValueError):
        generate("nope")
