import io
import math
import random

import numpy as np
import pytest

import oracles
from oracles import E1, gate_cnf, random_cnf
from satfeat.cnf import Cnf
from satfeat.graphs import (
    BUILDERS, CLAUSE, VAR, Gate, build_and_graph, build_band_graph, build_big, build_clause_graph,
    build_cv_signed, build_cvig, build_exo_graph, build_resolution_graph, build_vcg, build_vg,
    build_vig, detect_and_gates, detect_band_gates, detect_exo_gates, index_lit, lit_index,
    write_edge_list,
)


def same_graph(g, ref):
    assert set(g.edges) == set(ref)
    for e, w in ref.items():
        assert math.isclose(g.edges[e], float(w), rel_tol=1e-12), e


def test_lit_index_roundtrip():
    for lit in (1, -1, 2, -2, 17, -17):
        assert index_lit(lit_index(lit)) == lit
    assert lit_index(1) == 0 and lit_index(-1) == 1 and lit_index(2) == 2


def test_vcg_e1():
    g = build_vcg(E1)
    assert g.degrees(VAR).tolist() == [3, 3, 3]
    assert g.degrees(CLAUSE).tolist() == [2, 2, 2, 3]


def test_vg_e1():
    g = build_vg(E1)
    assert set(g.edges) == {(0, 1), (0, 2), (1, 2)}
    assert g.degrees().tolist() == [2, 2, 2]


def test_vig_e1():
    g = build_vig(E1)
    assert all(math.isclose(w, 4 / 3, rel_tol=1e-12) for w in g.edges.values())
    assert len(g.edges) == 3


def test_cvig_e1():
    g = build_cvig(E1)
    assert g.edges[(0, 3 + 0)] == 0.5
    assert math.isclose(g.edges[(0, 3 + 3)], 1 / 3)


def test_cv_signed_e1():
    assert build_cv_signed(E1, +1).degrees(CLAUSE).tolist() == [2, 1, 0, 3]
    assert build_cv_signed(E1, -1).degrees(CLAUSE).tolist() == [0, 1, 2, 0]


def test_clause_graph_e1():
    assert build_clause_graph(E1).edges == {(0, 3): 2.0, (1, 3): 1.0}


def test_resolution_graph_e1():
    assert set(build_resolution_graph(E1).edges) == {(0, 1), (0, 2), (1, 2), (1, 3)}


def test_big_e1():
    g = build_big(E1)
    want = {(-1, 2), (-2, 1), (1, 3), (-3, -1), (2, -3), (3, -2)}
    assert {(index_lit(u), index_lit(v)) for u, v in g.edges} == want
    assert g.directed and g.num_edges == 6


def test_no_gates_in_e1():
    assert detect_and_gates(E1) == []
    assert detect_band_gates(E1) == []
    assert detect_exo_gates(E1) == []


def test_and_gate():
    f = Cnf(3, ((-3, 1), (-3, 2), (3, -1, -2)))
    assert detect_and_gates(f) == [Gate("AND", 3, (1, 2))]
    g = build_and_graph(f)
    assert g.edges == {(lit_index(1), lit_index(3)): 0.25, (lit_index(2), lit_index(3)): 0.25}
    # the long clause makes it a full definition, so not a BAND
    assert detect_band_gates(f) == []


def test_band_gate():
    f = Cnf(3, ((-3, 1), (-3, 2)))
    assert detect_band_gates(f) == [Gate("BAND", 3, (1, 2))]
    assert build_band_graph(f).num_edges == 2
    # the body is every binary partner of -3
    assert detect_band_gates(Cnf(4, ((-3, 1), (-3, 2), (-3, 4)))) == [Gate("BAND", 3, (1, 2, 4))]
    assert detect_band_gates(Cnf(4, ((-3, 1), (-3, 2), (-3, 4, 1, 2)))) == [Gate("BAND", 3, (1, 2))]
    # a clause with -3 and no body literal breaks blockedness
    assert detect_band_gates(Cnf(5, ((-3, 1), (-3, 2), (-3, 4, 5)))) == []


def test_exo_gate():
    f = Cnf(3, ((1, 2, 3), (-1, -2), (-1, -3), (-2, -3)))
    gates = detect_exo_gates(f)
    assert Gate("EXO", None, (1, 2, 3)) in gates
    g = build_exo_graph(f)
    assert not g.weighted
    assert {(lit_index(1), lit_index(2)), (lit_index(1), lit_index(3)),
            (lit_index(2), lit_index(3))} <= set(g.edges)
    # (-2, -3) missing: the ternary clause is no longer exactly-one
    partial = detect_exo_gates(Cnf(3, ((1, 2, 3), (-1, -2), (-1, -3))))
    assert all(gt.body != (1, 2, 3) for gt in partial)


def test_tautological_binary_skipped():
    assert build_big(Cnf(1, ((1, -1),))).num_edges == 0


@pytest.mark.parametrize("name", sorted(oracles.ORACLES))
def test_builders_match_oracle(name):
    rng = random.Random(name)
    for i in range(60):
        f = random_cnf(rng, taut_rate=0.1) if i % 2 else gate_cnf(rng)
        same_graph(BUILDERS[name](f), oracles.ORACLES[name](f))


def test_resolution_weight():
    g = build_resolution_graph(Cnf(4, ((1, 2, 3), (-1, 4))))
    assert g.edges == {(0, 1): 2.0 ** -3}


def test_empty_formula_graphs():
    f = Cnf(0, ())
    for build in BUILDERS.values():
        g = build(f)
        assert g.num_edges == 0
        assert g.degrees().size == g.num_vertices


def test_degrees_and_weights():
    g = build_vig(E1)
    np.testing.assert_allclose(g.weighted_degrees(), [8 / 3] * 3)
    assert g.total_weight() == pytest.approx(4.0)


def test_edge_list_dump():
    buf = io.StringIO()
    write_edge_list(build_clause_graph(E1), buf)
    assert buf.getvalue() == "0 3 2.0\n1 3 1.0\n"
