"""Acceptance criteria; each prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
import os
import subprocess
import sys
import time
from collections import Counter

import pytest

from lieconf.ce import ce_complex, ce_homology, gr_dims
from lieconf.confspace import arnold_dims, betti_unordered, euclidean, ordered_series_oracle
from lieconf.envelope import free_en_series, pbw_check
from lieconf.graded import DifferentialSquareNonzero, GradedVectorSpace, PoincareSeries
from lieconf.lie import validate
from lieconf.ranconv import (CardinalityFunctor, canonical_factorization, compose, compose_masks, cover_masks,
                             enumerate_covers, to_masks,
                             graded_vanish_expected, minimal_factorizations, nilpotence_check, star_sym_expected,
                             sym_power)
from lieconf.verify import associativity_exhaustive, battery, random_dg_lie


def report(n, title, ok, elapsed, limit=None, detail=""):
    timing = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
    line = f"[acceptance {n:2d}] {'PASS' if ok else 'FAIL'}  {title}  {timing}" + (f"  {detail}" if detail else "")
    return line


def emit(capsys, line):
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def criterion_1():
    t = time.perf_counter()
    bad = []
    for n in (2, 3):
        for k in range(1, 7):
            got = {d: c for d, c in arnold_dims(k, n).items() if c}
            want = {d: c for (d, _), c in ordered_series_oracle(k, n).coefficients.items()}
            if got != want:
                bad.append((k, n))
    el = time.perf_counter() - t
    return not bad and el < 60, "Arnold presentation = product formula, k<=6, n in {2,3}", el, 60, str(bad or "")


def criterion_2():
    t = time.perf_counter()
    tab = betti_unordered(euclidean(2), 8)
    ok = all(tab.row(k) == {0: 1, 1: 1} for k in range(2, 9))
    el = time.perf_counter() - t
    return ok and el < 30, "braid groups B_k(R^2), 2<=k<=8", el, 30, ""


def criterion_3():
    t = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 5):
        row = betti_unordered(euclidean(n), 2).row(2)
        rp = {0: 1, n - 1: 1} if (n - 1) % 2 == 1 else {0: 1}   # H_*(RP^{n-1}; Q)
        if row != rp:
            bad.append((n, row))
    return not bad, "B_2(R^n) ~ RP^(n-1), n in {2,3,4,5}", time.perf_counter() - t, None, str(bad or "")


def criterion_4():
    t = time.perf_counter()
    bad = [(name, n) for name, L in battery(4) for n in (1, 2, 3) if not pbw_check(L, n, 4).ok]
    el = time.perf_counter() - t
    return not bad and el < 60, "PBW: U_n(L) underlying = Sym(L[1-n]), battery x n in {1,2,3}, K=4", el, 60, str(bad or "")


def criterion_5():
    t = time.perf_counter()
    bad = [name for name, L in battery(4) if ce_complex(L, 4).bigraded_dims() != gr_dims(L, 4)]
    return not bad, "associated graded of CE = Sym(L[1]) on battery", time.perf_counter() - t, None, str(bad or "")


def criterion_6():
    t = time.perf_counter()
    bad = []
    for name, L in battery(4):
        if validate(L):
            bad.append(name)
        try:
            ce_complex(L, 4)
        except DifferentialSquareNonzero:
            bad.append(name + ":d2")
    kinds = Counter()
    for name, L in random_dg_lie(2024, 100):
        clean = not validate(L)
        try:
            ce_complex(L, 3, check=False)
            sq = True
        except DifferentialSquareNonzero:
            sq = False
        positive = name.startswith("rebased")
        kinds[(positive, clean)] += 1
        if positive and not (clean and sq):
            bad.append(name)
        if clean != sq:
            bad.append(name + ":mismatch")
    ok = not bad and kinds[(False, False)] > 0
    detail = f"controls {dict((('pos' if p else 'neg') + ('-valid' if c else '-invalid'), v) for (p, c), v in sorted(kinds.items()))}"
    return ok, "d^2=0 and validate clean on battery + 100 random dg Lie", time.perf_counter() - t, None, (
        str(bad) if bad else detail)


def criterion_7():
    t = time.perf_counter()
    bad = []
    for n in (2, 3):
        fe = free_en_series(GradedVectorSpace.from_triples([("v", 0, 1)]), n, 6)
        tab = betti_unordered(euclidean(n), 6)
        agg = {(d, k): b for (k, d), b in tab.table.items()}
        agg[(0, 0)] = 1
        if fe != PoincareSeries(agg, 6):
            bad.append(n)
    return not bad, "free E_n series = sum_k H_*(B_k(R^n)), n in {2,3}", time.perf_counter() - t, None, str(bad or "")


def criterion_8():
    t = time.perf_counter()
    import itertools
    ok = True
    for a in range(5):
        for b in range(5):
            I, J = tuple(range(a)), tuple(range(b))
            subsets = [frozenset(c) for r in range(a + 1) for c in itertools.combinations(I, r)]
            brute = sum(1 for parts in itertools.product(subsets, repeat=b) if frozenset().union(*parts) == frozenset(I))
            ok &= len(enumerate_covers(I, J)) == (2 ** b - 1) ** a == brute
    assoc, triples = associativity_exhaustive(3)
    ok &= assoc
    # the mask path agrees with compose() on every composable pair up to size 3 in the middle
    for a, b, c in itertools.product(range(1, 4), range(1, 3), range(1, 4)):
        I, J, K = tuple(range(a)), tuple(f"j{x}" for x in range(b)), tuple(f"k{x}" for x in range(c))
        Sm, Tm = cover_masks(a, b), cover_masks(b, c)
        for s_i, S in enumerate(enumerate_covers(I, J)):
            for t_i, T in enumerate(enumerate_covers(J, K)):
                ok &= to_masks(compose(T, S)) == list(compose_masks(Tm[t_i], Sm[s_i]))
    for a in range(1, 4):
        for b in range(1, 4):
            for S in enumerate_covers(tuple(range(a)), tuple("abc"[:b])):
                sp, fn = canonical_factorization(S)
                ok &= sp.is_splitting() and fn.is_function() and compose(fn, sp).same_as(S)
                ok &= len(minimal_factorizations(S)) == 1
    el = time.perf_counter() - t
    return (ok and el < 30, "cover counts, compose associativity, canonical factorization", el, 30,
            f"{triples} triples")


def criterion_9():
    t = time.perf_counter()
    bad = []
    for dim in (1, 2):
        for par in itertools_product((0, 1), dim):
            F1 = GradedVectorSpace.from_triples([(f"v{i}", p, 1) for i, p in enumerate(par)])
            F = CardinalityFunctor.diagonal(F1, 3)
            for j in range(1, 4):
                for k in range(1, 4):
                    d = dict(Counter(b.degree for b in sym_power(F, j, k, "disjoint").basis))
                    if d != graded_vanish_expected(F1, j, k):
                        bad.append(("vanish", par, j, k))
                    o = dict(Counter(b.degree for b in sym_power(F, j, k, "overlap").basis))
                    if o != star_sym_expected(F1, j, k):
                        bad.append(("star", par, j, k))
    return not bad, "graded-vanish and star-sym by brute-force coinvariants, j,k<=3", time.perf_counter() - t, None, str(
        bad or "")


def itertools_product(values, n):
    import itertools
    return itertools.product(values, repeat=n)


def criterion_10():
    import random
    t = time.perf_counter()
    rng = random.Random(10)
    ok = True
    for r in range(0, 5):
        for trial in range(3):
            fs = []
            for s in range(r + 1):
                vals = {k: GradedVectorSpace.from_triples([(f"f{s}_{k}_{i}", rng.randint(0, 2), k)
                                                           for i in range(rng.randint(1, 2))])
                        for k in range(1, r + 1)}
                fs.append(CardinalityFunctor(vals, max(r, 1)))
            ok &= nilpotence_check(fs, r)
    return ok, "(r+1)-fold disjoint tensors vanish in truncation r<=4", time.perf_counter() - t, None, ""


def criterion_11():
    t = time.perf_counter()
    h = ce_homology(__import__("lieconf.lie", fromlist=["sl2"]).sl2(), 3)
    tot = Counter()
    for (w, d), b in h.items():
        tot[d] += b
    el = time.perf_counter() - t
    got = {d: b for d, b in tot.items() if b}
    return got == {0: 1, 3: 1} and el < 5, "sl2 CE homology = {deg 0: 1, deg 3: 1}", el, 5, str(got)


def criterion_12():
    t = time.perf_counter()
    cmds = [
        ["verify", "--suite", "all", "--seed", "7", "--format", "json"],
        ["conf", "betti", "--manifold", "Sigma2", "--max-k", "4", "--format", "json"],
        ["env", "pbw", "--lie", "sl2", "--n", "2", "--max-weight", "4", "--format", "csv"],
        ["cov", "enum", "--source", "3", "--target", "2", "--format", "json"],
    ]
    ok = True
    for cmd in cmds:
        outs = set()
        for hashseed in ("0", "1", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            r = subprocess.run([sys.executable, "-m", "lieconf.cli", *cmd], capture_output=True, env=env)
            ok &= r.returncode == 0
            outs.add(r.stdout)
        ok &= len(outs) == 1
    return ok, "byte-identical output across runs and hash seeds", time.perf_counter() - t, None, ""


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8,
            criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("n", range(1, 13))
def test_acceptance(n, capsys):
    ok, title, el, limit, detail = CRITERIA[n - 1]()
    emit(capsys, report(n, title, ok, el, limit, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, title, el, limit, detail = fn()
        print(report(i, title, ok, el, limit, detail))
        results.append(ok)
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
