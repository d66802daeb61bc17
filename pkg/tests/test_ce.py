from collections import Counter

import pytest

from lieconf.ce import betti_csv, ce_complex, ce_homology, ce_words, gr_dims
from lieconf.confspace import conf_lie, euclidean
from lieconf.graded import GradedVectorSpace, PoincareSeries, homology
from lieconf.lie import GradedLieAlgebra, InvalidAlgebra, abelian, free_lie, sl2
from lieconf.verify import battery, random_dg_lie


def V(*triples):
    return GradedVectorSpace.from_triples(triples)


def nonzero(h):
    return {k: v for k, v in h.items() if v}


def test_abelian_degree_zero():
    cx = ce_complex(abelian(V(("x", 0, 1))), 3)
    assert cx.bigraded_dims().coefficients == {(0, 0): 1, (1, 1): 1}
    assert not cx.differentials


def test_sl2_homology():
    assert nonzero(ce_homology(sl2(), 3)) == {(0, 0): 1, (3, 3): 1}


def test_free_lie_odd_generator():
    h = nonzero(ce_homology(free_lie(V(("x", 1, 1)), 3), 3))
    h.pop((0, 0))
    assert h == {(1, 2): 1}


@pytest.mark.parametrize("gens", [[("x", 0, 1), ("y", 0, 1)], [("x", 1, 1), ("y", 0, 1)], [("x", 2, 1)]])
def test_free_lie_homology_is_generators(gens):
    K = 4
    h = nonzero(ce_homology(free_lie(V(*gens), K), K))
    h.pop((0, 0))
    assert h == dict(Counter((1, d + 1) for _, d, _ in gens))


def test_gr_dims_examples():
    assert gr_dims(abelian(V(("x", 0, 1))), 3).coefficients == {(0, 0): 1, (1, 1): 1}
    s = gr_dims(sl2(), 3)
    assert [sum(s.weight_part(w).values()) for w in range(4)] == [1, 3, 3, 1]
    K = 5
    g = gr_dims(conf_lie(euclidean(2), K), K)
    poly = PoincareSeries({(0, k): 1 for k in range(K + 1)}, K)
    assert g == (poly * PoincareSeries({(0, 0): 1, (1, 2): 1}, K)).truncate(K)


def test_battery_associated_graded():
    for name, L in battery():
        cx = ce_complex(L, 4)
        assert cx.bigraded_dims() == gr_dims(L, 4), name


def test_abelian_homology_equals_gr_dims():
    L = abelian(V(("a", 0, 1), ("b", 1, 1), ("c", -1, 2)))
    h = homology(ce_complex(L, 4))
    assert PoincareSeries({(d, w): b for (w, d), b in h.items()}, 4) == gr_dims(L, 4)


def test_weight_one_homology_is_shifted_generators():
    for name, L in battery():
        if not L.weight_graded:
            continue
        h = ce_homology(L, 3)
        w1 = {d: b for (w, d), b in h.items() if w == 1 and b}
        assert w1 == dict(Counter(b.degree + 1 for b in L.space.basis if b.weight == 1)), name


def test_random_controls_square_zero_iff_valid():
    from lieconf.graded import DifferentialSquareNonzero
    from lieconf.lie import validate
    seen = set()
    for name, L in random_dg_lie(11, 30):
        clean = not validate(L)
        try:
            ce_complex(L, 3, check=False)
            sq = True
        except DifferentialSquareNonzero:
            sq = False
        assert clean == sq, name
        seen.add(clean)
    assert seen == {True, False}


def test_invalid_algebra_rejected():
    sp = V(("x", 0, 1), ("y", 0, 1), ("z", 0, 2))
    with pytest.raises(InvalidAlgebra):
        ce_complex(GradedLieAlgebra(sp, {("x", "y"): {"z": 1}}, {}, 2), 2)


def test_words_and_csv():
    words = ce_words(abelian(V(("x", 0, 1), ("y", 1, 1))), 2)
    labels = [w.label for w in words]
    assert "1" in labels and "sy^2" in labels and "sx^2" not in labels
    csv = betti_csv({(0, 0): 1, (3, 3): 1, (1, 1): 0})
    assert csv == "weight,degree,betti\n0,0,1\n3,3,1\n"


def test_max_weight_positive():
    with pytest.raises(ValueError):
        ce_complex(sl2(), 0)
