"""Property-verification suites over small exhaustive and seeded random instances.

Each suite yields :class:`Check` records; nothing raises on a failed
property.  Randomness comes only from ``random.Random(seed)`` so a seed fixes
the output byte for byte.
"""
from __future__ import annotations

import itertools
import random

import numpy as np
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .ce import ce_complex, gr_dims
from .confspace import arnold_dims, betti_unordered, euclidean, ordered_series_oracle
from .envelope import free_en_series, pbw_check
from .exactla import SparseMatrix
from .graded import DifferentialSquareNonzero, GradedVectorSpace, PoincareSeries, homology, sym_series
from .lie import Cdga, GradedLieAlgebra, abelian, change_basis, free_lie, sl2, tensor_cdga_lie, validate
from .ranconv import (CardinalityFunctor, canonical_factorization, compose, cover_masks, enumerate_covers,
                      graded_vanish_expected, iterated_tensor, lax_projection, minimal_factorizations,
                      nilpotence_check, star_sym_expected, sym_power, tensor_map, tensor_power, to_masks, union_table)

__all__ = ["Check", "SUITES", "run_suite", "battery", "random_dg_lie", "format_checks", "associativity_exhaustive"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    instance: str
    passed: bool
    detail: str = ""


def format_checks(checks: Sequence[Check]) -> str:
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.suite:8s} {c.name:24s} {c.instance}"
             + (f"  ({c.detail})" if c.detail and not c.passed else "") for c in checks]
    npass = sum(c.passed for c in checks)
    lines.append(f"{npass}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Lie-algebra battery


def battery(max_weight: int = 4) -> List[Tuple[str, GradedLieAlgebra]]:
    """abelian in degrees -1, 0, 1; sl2; free on one generator of degree 0, 1, 2."""
    out = []
    for d in (-1, 0, 1):
        out.append((f"abelian:{d}", abelian(GradedVectorSpace.from_triples([("x", d, 1)]), f"abelian:{d}")))
    out.append(("sl2", sl2()))
    for d in (0, 1, 2):
        out.append((f"freelie:{d}:1", free_lie(GradedVectorSpace.from_triples([("x", d, 1)]), max_weight)))
    return out


def _arrow_cdga() -> Cdga:
    """Unital CDGA ``Q{1, a, b}``, ``|a| = 1``, ``|b| = 0``, ``da = b``, all products of a, b zero."""
    sp = GradedVectorSpace.from_triples([("1", 0, 0), ("a", 1, 0), ("b", 0, 0)])
    prod = {("1", "1"): {"1": 1}, ("1", "a"): {"a": 1}, ("a", "1"): {"a": 1},
            ("1", "b"): {"b": 1}, ("b", "1"): {"b": 1}}
    return Cdga(sp, prod, "1", {"a": {"b": 1}}, name="arrow")


def _random_invertible(rng: random.Random, n: int) -> List[List[int]]:
    """Permuted unitriangular matrix with small integer entries."""
    U = [[(1 if i == j else (rng.randint(-2, 2) if j > i else 0)) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    return [U[perm[i]] for i in range(n)]


def _random_positive(rng: random.Random) -> GradedLieAlgebra:
    kind = rng.randrange(3)
    if kind == 0:
        gens = [(f"x{i}", rng.randint(0, 2), 1) for i in range(rng.randint(1, 2))]
        base = free_lie(GradedVectorSpace.from_triples(gens), 3)
    elif kind == 1:
        base = sl2()
    else:
        inner = free_lie(GradedVectorSpace.from_triples([("x", rng.randint(0, 1), 1)]), 3)
        base = tensor_cdga_lie(_arrow_cdga(), inner, 3)
    blocks = Counter((b.degree, b.weight) for b in base.space.basis)
    mats = {key: _random_invertible(rng, n) for key, n in blocks.items()}
    return change_basis(base, mats)


def _random_bracket(rng: random.Random) -> GradedLieAlgebra:
    """Random antisymmetric weight-graded bracket on a small even space (may break Jacobi)."""
    sp = GradedVectorSpace.from_triples([("u", 0, 1), ("v", 0, 1), ("w", 0, 1), ("p", 0, 2), ("q", 0, 2), ("r", 0, 3), ("s", 0, 3)])
    by_w: Dict[int, List[str]] = {}
    for b in sp.basis:
        by_w.setdefault(b.weight, []).append(b.label)
    br = {}
    labels = sp.labels
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            w = sp.element(x).weight + sp.element(y).weight
            tgt = by_w.get(w, [])
            v = {z: rng.randint(-1, 1) for z in tgt}
            v = {z: c for z, c in v.items() if c}
            if v:
                br[(x, y)] = v
                br[(y, x)] = {z: -c for z, c in v.items()}
    return GradedLieAlgebra(sp, br, {}, 3, "random")


def random_dg_lie(seed: int, count: int = 100) -> List[Tuple[str, GradedLieAlgebra]]:
    """Alternating positive controls (rebased valid algebras) and random brackets."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append((f"rebased#{i}", _random_positive(rng)))
        else:
            out.append((f"random#{i}", _random_bracket(rng)))
    return out


def _ce_square_zero(L: GradedLieAlgebra, K: int) -> bool:
    try:
        ce_complex(L, K, check=False)
    except DifferentialSquareNonzero:
        return False
    return True


def _tensor_algebra_series(V: GradedVectorSpace, K: int) -> PoincareSeries:
    """Series of the tensor algebra on ``V``, keyed ``(degree, weight)``."""
    acc = {(0, 0): 1}
    total = Counter(acc)
    for _ in range(K):
        nxt: Counter = Counter()
        for (d, w), c in acc.items():
            for b in V.basis:
                if w + b.weight <= K:
                    nxt[(d + b.degree, w + b.weight)] += c
        acc = nxt
        total.update(acc)
    return PoincareSeries(dict(total), K)


def suite_lie(seed: int) -> Iterator[Check]:
    for name, L in battery():
        bad = validate(L)
        yield Check("lie", "validate-clean", name, not bad, "; ".join(map(str, bad[:3])))
    for gens in ([("x", 0, 1), ("y", 0, 1)], [("x", 1, 1)], [("x", 0, 1), ("y", 1, 1)], [("x", 2, 1), ("y", 1, 1)]):
        V = GradedVectorSpace.from_triples(gens)
        L = free_lie(V, 5)
        ok = sym_series(L.space, 5) == _tensor_algebra_series(V, 5)
        yield Check("lie", "pbw-tensor-algebra", "freelie" + "".join(f"{l}{d}" for l, d, _ in gens), ok)
    for name, L in random_dg_lie(seed):
        clean = not validate(L)
        sq = _ce_square_zero(L, 3)
        if name.startswith("rebased"):
            yield Check("lie", "positive-control", name, clean and sq)
        else:
            yield Check("lie", "validate<->d2", name, clean == sq, f"validate clean={clean}, d2=0 {sq}")


def suite_ce(seed: int) -> Iterator[Check]:
    for name, L in battery():
        try:
            cx = ce_complex(L, 4)
        except DifferentialSquareNonzero:
            yield Check("ce", "d2=0", name, False)
            continue
        yield Check("ce", "d2=0", name, True)
        yield Check("ce", "gr-dims=Sym(L[1])", name, cx.bigraded_dims() == gr_dims(L, 4))
    h = homology(ce_complex(sl2(), 3))
    tot = Counter()
    for (w, d), b in h.items():
        tot[d] += b
    yield Check("ce", "sl2-homology", "sl2", dict(tot) == {0: 1, 3: 1}, str(dict(tot)))
    rng = random.Random(seed)
    for i in range(5):
        L = _random_positive(rng)
        yield Check("ce", "d2=0", f"rebased#{i}", _ce_square_zero(L, 3))


def suite_env(seed: int) -> Iterator[Check]:
    for name, L in battery():
        for n in (1, 2, 3):
            rep = pbw_check(L, n, 4)
            yield Check("env", "pbw", f"{name} n={n}", rep.ok, str(rep.mismatches()[:2]))


def suite_conf(seed: int) -> Iterator[Check]:
    for n in (2, 3):
        for k in range(1, 6):
            got = arnold_dims(k, n)
            want = {d: c for (d, _), c in ordered_series_oracle(k, n).coefficients.items()}
            got = {d: c for d, c in got.items() if c}
            yield Check("conf", "arnold=product", f"k={k} n={n}", got == want, f"{got} vs {want}")
    R2 = betti_unordered(euclidean(2), 8)
    yield Check("conf", "braid-groups", "R2 k<=8",
                all(R2.row(k) == {0: 1, 1: 1} for k in range(2, 9)), str(R2.table))
    for n in (2, 3, 4, 5):
        row = betti_unordered(euclidean(n), 2).row(2)
        want = {0: 1, n - 1: 1} if n % 2 == 0 else {0: 1}
        yield Check("conf", "two-points=RP^(n-1)", f"n={n}", row == want, str(row))
    for n in (2, 3):
        V = GradedVectorSpace.from_triples([("v", 0, 1)])
        fe = free_en_series(V, n, 6)
        bt = betti_unordered(euclidean(n), 6)
        agg = {(d, k): b for (k, d), b in bt.table.items()}
        agg[(0, 0)] = 1
        yield Check("conf", "free-En=configurations", f"n={n}", fe == PoincareSeries(agg, 6))


def _random_space(rng: random.Random, dim: int, prefix: str) -> GradedVectorSpace:
    return GradedVectorSpace.from_triples([(f"{prefix}{i}", rng.randint(0, 1), 1) for i in range(dim)])


def associativity_exhaustive(max_size: int = 3) -> Tuple[bool, int]:
    """``U o (T o S) == (U o T) o S`` on every composable triple of covers between sets of size <= ``max_size``.

    Works on bitmask covers: both bracketings are computed for every triple.
    Returns (all equal, number of triples).
    """
    ok, count = True, 0
    sizes = range(1, max_size + 1)
    for a, b, c, d in itertools.product(sizes, repeat=4):
        Ss, Ts, Us = cover_masks(a, b), cover_masks(b, c), cover_masks(c, d)
        HT = union_table(Ts)                 # (N_T, 2^c): unions of T-parts, masks over J
        UT = HT[:, Us]                       # (N_T, N_U, d): U o T
        for S in Ss:
            fS = union_table(S)              # subsets of J -> masks over I
            TS = fS[Ts]                      # (N_T, c): T o S
            left = union_table(TS)[np.arange(len(Ts))[:, None, None], Us[None, :, :]]   # U o (T o S)
            right = fS[UT]                   # (U o T) o S
            ok &= bool(np.array_equal(left, right))
            count += len(Ts) * len(Us)
    return ok, count


def suite_ranconv(seed: int) -> Iterator[Check]:
    rng = random.Random(seed)
    for a in range(0, 5):
        for b in range(0, 5):
            I, J = tuple(range(a)), tuple("abcd"[:b])
            covers = enumerate_covers(I, J)
            brute = sum(1 for parts in itertools.product(
                [frozenset(c) for r in range(a + 1) for c in itertools.combinations(I, r)], repeat=b)
                if frozenset().union(*parts) == frozenset(I))
            ok = len(covers) == (2 ** b - 1) ** a == brute
            yield Check("ranconv", "cover-count", f"|I|={a} |J|={b}", ok, f"{len(covers)} vs {brute}")
    ok, count = associativity_exhaustive(3)
    yield Check("ranconv", "compose-associative", f"{count} triples, sizes<=3", ok)
    ok = True
    for a, b, c in itertools.product(range(1, 3), repeat=3):
        I, J, K = tuple(range(a)), tuple(f"j{x}" for x in range(b)), tuple(f"k{x}" for x in range(c))
        Sm, Tm = cover_masks(a, b), cover_masks(b, c)
        for s_i, S in enumerate(enumerate_covers(I, J)):
            for t_i, T in enumerate(enumerate_covers(J, K)):
                ok &= to_masks(compose(T, S)) == list(union_table(Sm[s_i])[Tm[t_i]])
    yield Check("ranconv", "mask-compose=compose", "sizes<=2", ok)
    ok_re, ok_un, n = True, True, 0
    for a in range(1, 4):
        for b in range(1, 4):
            for S in enumerate_covers(tuple(range(a)), tuple("abc"[:b])):
                n += 1
                sp, fn = canonical_factorization(S)
                if not (sp.is_splitting() and fn.is_function() and compose(fn, sp).same_as(S)):
                    ok_re = False
                found = minimal_factorizations(S)
                canon = Counter((i, j) for j, p in zip(S.target, S.parts) for i in p)
                if found != [canon]:
                    ok_un = False
    yield Check("ranconv", "factorization-recomposes", f"{n} covers", ok_re)
    yield Check("ranconv", "factorization-unique", f"{n} covers", ok_un)
    for dim in (1, 2):
        for parities in itertools.product((0, 1), repeat=dim):
            F1 = GradedVectorSpace.from_triples([(f"v{i}", p, 1) for i, p in enumerate(parities)])
            F = CardinalityFunctor.diagonal(F1, 3)
            for j in range(1, 4):
                for k in range(1, 4):
                    got = dict(Counter(b.degree for b in sym_power(F, j, k, "disjoint").basis))
                    yield Check("ranconv", "graded-vanish", f"F1={parities} j={j} k={k}",
                                got == graded_vanish_expected(F1, j, k), str(got))
                    got = dict(Counter(b.degree for b in sym_power(F, j, k, "overlap").basis))
                    yield Check("ranconv", "star-sym", f"F1={parities} j={j} k={k}",
                                got == star_sym_expected(F1, j, k), str(got))
    for r in range(1, 5):
        fs = [CardinalityFunctor({k: _random_space(rng, rng.randint(0, 2), f"f{t}_{k}_") for k in range(1, r + 1)}, r,
                                 f"F{t}") for t in range(r + 1)]
        yield Check("ranconv", "nilpotence", f"r={r}", nilpotence_check(fs, r))
    for mode in ("disjoint", "overlap"):
        fs = [CardinalityFunctor({k: _random_space(rng, rng.randint(1, 2), f"g{t}_{k}_") for k in range(1, 4)}, 3)
              for t in range(3)]
        for k in range(1, 4):
            a = tensor_power(fs, k, mode)
            b = iterated_tensor(fs, k, mode)
            ok = sorted(map(repr, a.index())) == sorted(map(repr, b.index()))
            yield Check("ranconv", "iterated=direct", f"{mode} k={k}", ok)
    F = CardinalityFunctor({k: _random_space(rng, 2, f"a{k}_") for k in (1, 2, 3)}, 3)
    G = CardinalityFunctor({k: _random_space(rng, 2, f"b{k}_") for k in (1, 2, 3)}, 3)
    phi = {k: _random_map(rng, F(k), F(k)) for k in (1, 2, 3)}
    psi = {k: _random_map(rng, G(k), G(k)) for k in (1, 2, 3)}
    for k in (1, 2, 3):
        p = lax_projection(F, G, k)
        over = tensor_map(phi, F, F, psi, G, G, k, "overlap").matrix
        disj = tensor_map(phi, F, F, psi, G, G, k, "disjoint").matrix
        yield Check("ranconv", "lax-projection-natural", f"k={k}",
                    p.matrix @ over == disj @ p.matrix and p.is_surjective())


def _random_map(rng: random.Random, A: GradedVectorSpace, B: GradedVectorSpace) -> SparseMatrix:
    """Random degree-preserving matrix ``A -> B``."""
    ent = {}
    for j, a in enumerate(A.basis):
        for i, b in enumerate(B.basis):
            if a.degree == b.degree:
                ent[(i, j)] = Fraction(rng.randint(-3, 3))
    return SparseMatrix(B.dim, A.dim, ent)


SUITES: Dict[str, Callable[[int], Iterator[Check]]] = {
    "lie": suite_lie,
    "ce": suite_ce,
    "env": suite_env,
    "conf": suite_conf,
    "ranconv": suite_ranconv,
}


def run_suite(name: str, seed: int = 0) -> List[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](seed)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    return list(SUITES[name](seed))
