from math import comb

import pytest

from lieconf.confspace import betti_unordered, euclidean
from lieconf.envelope import free_en_series, pbw_check, sphere_model, u_n_underlying
from lieconf.graded import GradedVectorSpace, PoincareSeries
from lieconf.lie import abelian, free_lie, sl2
from lieconf.verify import battery


def V(*triples):
    return GradedVectorSpace.from_triples(triples)


def test_sphere_model():
    A = sphere_model(3)
    assert [(b.degree, b.weight) for b in A.space.basis] == [(-3, 0)]
    assert A.mul("e", "e") == {}


def test_abelian_n1_polynomial():
    r = u_n_underlying(abelian(V(("x", 0, 1))), 1, 5)
    assert r.series.coefficients == {(0, w): 1 for w in range(6)}


def test_abelian_n2_exterior():
    r = u_n_underlying(abelian(V(("x", 0, 1))), 2, 5)
    assert r.series.coefficients == {(0, 0): 1, (-1, 1): 1}


def test_sl2_n1():
    r = u_n_underlying(sl2(), 1, 3)
    assert [r.series[(0, w)] for w in range(4)] == [comb(w + 2, 2) for w in range(4)]


def test_free_en_examples():
    s = free_en_series(V(("v", 0, 1)), 2, 3)
    assert s.coefficients == {(0, 0): 1, (0, 1): 1, (0, 2): 1, (1, 2): 1, (0, 3): 1, (1, 3): 1}
    s = free_en_series(V(("v", 0, 1)), 3, 3)
    assert s.coefficients == {(0, k): 1 for k in range(4)}
    assert free_en_series(GradedVectorSpace(), 2, 3).coefficients == {(0, 0): 1}


def test_pbw_examples():
    assert pbw_check(abelian(V(("a", 0, 1), ("b", 3, 2))), 2, 4).ok
    assert pbw_check(sl2(), 2, 4).ok
    rep = pbw_check(free_lie(V(("x", 1, 1)), 4), 2, 4)
    assert rep.ok and not rep.mismatches()
    # x[-1] even in degree 0, [x,x][-1] odd in degree 1
    r = u_n_underlying(free_lie(V(("x", 1, 1)), 4), 2, 4)
    expect = {(0, 0): 1, (0, 1): 1, (0, 2): 1, (1, 2): 1, (0, 3): 1, (1, 3): 1, (0, 4): 1, (1, 4): 1}
    assert r.series.coefficients == expect


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pbw_battery(n):
    for name, L in battery():
        assert pbw_check(L, n, 4), (name, n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_free_en_matches_configurations(n):
    K = 6 if n < 4 else 4
    fe = free_en_series(V(("v", 0, 1)), n, K)
    t = betti_unordered(euclidean(n), K)
    agg = {(d, k): b for (k, d), b in t.table.items()}
    agg[(0, 0)] = 1
    assert fe == PoincareSeries(agg, K)


@pytest.mark.parametrize("gens", [[("a", 0, 1), ("b", 1, 1)], [("a", 2, 1)], [("a", -1, 1), ("b", 0, 1)]])
def test_free_en_weight_one_and_nonneg(gens):
    Vs = V(*gens)
    s = free_en_series(Vs, 2, 4)
    assert all(c > 0 for c in s.coefficients.values())
    assert s.weight_part(1) == {b.degree: 1 for b in Vs.basis}


def test_n_positive():
    with pytest.raises(ValueError):
        u_n_underlying(sl2(), 0, 3)
