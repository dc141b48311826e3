import itertools
import random

from oracles import E1, brute_sat, random_cnf
from satfeat.cnf import Cnf
from satfeat.preprocess import Status, is_tautology, preprocess, remove_tautologies, unit_propagate


def test_e1_unchanged():
    assert remove_tautologies(E1) == E1
    res = preprocess(E1)
    assert res.status is Status.REDUCED and res.cnf == E1
    assert res.var_map == (1, 2, 3)


def test_tautology_removed():
    f = Cnf(3, ((1, -1),) + E1.clauses)
    assert is_tautology((1, -1)) and not is_tautology((1, 2))
    res = preprocess(f)
    assert res.status is Status.REDUCED and res.cnf == E1
    assert res.removed_tautologies == 1


def test_units():
    assert preprocess(Cnf(1, ((1,), (-1,)))).status is Status.SOLVED_UNSAT
    assert preprocess(Cnf(2, ((1,), (-1, 2)))).status is Status.SOLVED_SAT
    res = preprocess(Cnf(3, ((1,), (-1, 2, 3), (2, -3))))
    assert res.status is Status.REDUCED
    assert res.forced == (1,)
    assert res.cnf == Cnf(2, ((1, 2), (1, -2)))
    assert res.var_map == (2, 3)


def test_empty_clause_unsat():
    assert preprocess(Cnf(2, ((1, 2), ()))).status is Status.SOLVED_UNSAT


def test_no_renumber_keeps_width():
    res = unit_propagate(Cnf(3, ((1,), (-1, 2, 3), (2, -3))))
    assert res.cnf.num_vars == 3
    assert res.cnf.clauses == ((2, 3), (2, -3))


def test_residual_has_no_units_and_equisatisfiable():
    rng = random.Random(3)
    for _ in range(300):
        f = random_cnf(rng, max_vars=8, max_clauses=20, max_len=3)
        res = preprocess(f)
        if res.status is Status.REDUCED:
            assert all(len(c) >= 2 for c in res.cnf.clauses)
            assert brute_sat(res.cnf) == brute_sat(f)
        else:
            assert (res.status is Status.SOLVED_SAT) == brute_sat(f)


def test_clause_order_confluent():
    rng = random.Random(5)
    for _ in range(100):
        f = random_cnf(rng, max_vars=8, max_clauses=20, max_len=3)
        shuffled = list(f.clauses)
        rng.shuffle(shuffled)
        a, b = preprocess(f), preprocess(Cnf(f.num_vars, tuple(shuffled)))
        assert a.status is b.status
        if a.cnf is not None:
            assert sorted(a.cnf.clauses) == sorted(b.cnf.clauses)


def test_exhaustive_two_var_two_clause():
    lits = [1, -1, 2, -2]
    clauses = [c for k in (1, 2) for c in itertools.combinations(lits, k)]
    for pair in itertools.product(clauses, repeat=2):
        f = Cnf(2, pair)
        res = preprocess(f)
        if res.solved:
            assert (res.status is Status.SOLVED_SAT) == brute_sat(f)
        else:
            assert brute_sat(res.cnf) == brute_sat(f)
