from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lieconf.envelope import sphere_model
from lieconf.graded import GradedVectorSpace, PoincareSeries, sym_series
from lieconf.lie import (Cdga, GradedLieAlgebra, LieFormatError, abelian, change_basis, dumps_lie, free_lie,
                         loads_lie, lyndon_words, sl2, tensor_cdga_lie, validate, validate_cdga)
from lieconf.verify import random_dg_lie


def V(*triples):
    return GradedVectorSpace.from_triples(triples)


def dims_by_weight(L, K):
    c = Counter(b.weight for b in L.space.basis)
    return {w: c.get(w, 0) for w in range(1, K + 1)}


def test_free_lie_examples():
    assert dims_by_weight(free_lie(V(("x", 0, 1)), 3), 3) == {1: 1, 2: 0, 3: 0}
    L = free_lie(V(("x", 1, 1)), 3)
    assert dims_by_weight(L, 3) == {1: 1, 2: 1, 3: 0}
    assert sorted((b.degree, b.weight) for b in L.space.basis) == [(1, 1), (2, 2)]
    assert dims_by_weight(free_lie(V(("x", 0, 1), ("y", 0, 1)), 3), 3) == {1: 2, 2: 1, 3: 2}


def _mobius(n):
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


@pytest.mark.parametrize("g", [1, 2, 3])
def test_witt_necklace(g):
    K = 6 if g < 3 else 5
    L = free_lie(GradedVectorSpace.from_triples([(f"x{i}", 0, 1) for i in range(g)]), K)
    got = dims_by_weight(L, K)
    for w in range(1, K + 1):
        assert got[w] == sum(_mobius(d) * g ** (w // d) for d in range(1, w + 1) if w % d == 0) // w


def _tensor_series(V_, K):
    acc, total = Counter({(0, 0): 1}), Counter({(0, 0): 1})
    for _ in range(K):
        nxt = Counter()
        for (d, w), c in acc.items():
            for b in V_.basis:
                if w + b.weight <= K:
                    nxt[(d + b.degree, w + b.weight)] += c
        acc = nxt
        total.update(acc)
    return PoincareSeries(dict(total), K)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-1, 2), min_size=1, max_size=3), st.integers(1, 5))
def test_pbw_identity_and_validity(degs, K):
    gens = GradedVectorSpace.from_triples([(f"x{i}", d, 1) for i, d in enumerate(degs)])
    if len(degs) == 3:
        K = min(K, 4)
    L = free_lie(gens, K)
    assert sym_series(L.space, K) == _tensor_series(gens, K)
    assert validate(L) == []


def test_lyndon_words_count():
    # necklace count for 2 letters, length 5: (2^5 - 2) / 5 = 6
    assert sum(1 for w in lyndon_words(2, 5) if len(w) == 5) == 6


def test_validate_examples():
    assert validate(abelian(V(("a", 0, 1), ("b", 1, 2)))) == []
    assert validate(free_lie(V(("x", 1, 1)), 4)) == []
    sp = V(("x", 0, 1), ("y", 0, 1), ("z", 0, 2))
    bad = GradedLieAlgebra(sp, {("x", "y"): {"z": 1}}, {}, 2)
    vs = validate(bad)
    assert [v.kind for v in vs] == ["antisymmetry"]


def test_validate_catches_jacobi_and_differential():
    sp = V(("a", 0, 1), ("b", 0, 1), ("c", 0, 1), ("p", 0, 2), ("q", 0, 3))
    br = {}
    for x, y, v in [("a", "b", "p"), ("p", "c", "q")]:
        br[(x, y)] = {v: 1}
        br[(y, x)] = {v: -1}
    assert any(v.kind == "jacobi" for v in validate(GradedLieAlgebra(sp, br, {}, 3)))
    sp2 = V(("x", 1, 1), ("y", 0, 1))
    bad_d = GradedLieAlgebra(sp2, {}, {"x": {"y": 1}, "y": {"x": 1}}, None)
    assert validate(bad_d)


def test_sl2():
    L = sl2()
    assert validate(L) == []
    assert L.br("h", "e") == {"e": 2} and L.br("e", "f") == {"h": 1}


def test_tensor_with_unit_only_is_copy():
    Q = Cdga(V(("1", 0, 0)), {("1", "1"): {"1": 1}}, "1", {})
    L = free_lie(V(("x", 1, 1)), 3)
    T = tensor_cdga_lie(Q, L, 3)
    assert validate(T) == []
    assert T.space.dims() == L.space.dims()
    assert T.br("1⊗x", "1⊗x") == {"1⊗[x,x]": 1} and L.br("x", "x") == {"[x,x]": 1}


def test_tensor_with_sphere_model():
    T = tensor_cdga_lie(sphere_model(2), free_lie(V(("x", 1, 1)), 2), 2)
    assert sorted((b.label, b.degree, b.weight) for b in T.space.basis) == [("e⊗[x,x]", 0, 2), ("e⊗x", -1, 1)]
    assert T.is_abelian


def test_tensor_two_class_algebra():
    A = Cdga(V(("u", 0, 0), ("t", -2, 0)),
             {("u", "u"): {"u": 1}, ("u", "t"): {"t": 1}, ("t", "u"): {"t": 1}}, "u", {})
    assert validate_cdga(A) == []
    T = tensor_cdga_lie(A, free_lie(V(("x", 1, 1)), 3), 3)
    assert T.br("t⊗x", "u⊗x") == {"t⊗[x,x]": 1}
    assert validate(T) == []


def test_controls_random():
    for name, L in random_dg_lie(3, 40):
        if name.startswith("rebased"):
            assert validate(L) == []


def test_change_basis_is_isomorphism():
    L = free_lie(V(("x", 0, 1), ("y", 0, 1)), 3)
    M = change_basis(L, {(0, 1): [[1, 1], [0, 1]]})
    assert validate(M) == []
    assert M.space.dims() == L.space.dims()
    # [x', y'] with x' = x, y' = x + y equals [x, y] in the new basis
    assert M.br("x'", "y'")


def test_text_round_trip():
    for L in (sl2(), free_lie(V(("x", 1, 1), ("y", 0, 1)), 3)):
        text = dumps_lie(L)
        L2 = loads_lie(text)
        assert dumps_lie(L2) == text
        assert L2.table == L.table


def test_text_rationals():
    sp = V(("x", 0, 1), ("y", 0, 2))
    L = GradedLieAlgebra(sp, {}, {}, 2)
    L2 = loads_lie(dumps_lie(L).replace("[bracket]", "[bracket]\nx x = 1/2 y\n"))
    assert L2.br("x", "x") == {"y": Fraction(1, 2)}


@pytest.mark.parametrize("text", ["", "garbage", "# lieconf lie-algebra v1\n[basis]\nx notanint 1\n",
                                  "# lieconf lie-algebra v1\n[basis]\nx 0 1\n[bracket]\nx x = 1 q\n"])
def test_malformed_text(text):
    with pytest.raises(LieFormatError):
        loads_lie(text)
