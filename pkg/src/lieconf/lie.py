"""Differential graded Lie algebras over Q.

Elements are linear combinations ``{label: Fraction}`` of basis labels.  The
single sign rule used everywhere: moving a symbol of degree ``a`` past one of
degree ``b`` costs ``(-1)**(a*b)``.

Free Lie algebras use the super-Lyndon basis.  Elements are realised inside
the tensor algebra as noncommutative polynomials (word -> coefficient); a
Lyndon word ``w`` has standard bracketing ``P_w = w + (larger words)`` and an
odd Lyndon word contributes ``[P_w, P_w] = 2 ww + ...`` as well, so any Lie
polynomial is rewritten to the basis by peeling off lexicographically least
words.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactla import as_rational
from .graded import BasisElement, GradedVectorSpace

__all__ = [
    "LinComb",
    "GradedLieAlgebra",
    "Cdga",
    "Violation",
    "NonUnitWeightGenerator",
    "InvalidAlgebra",
    "free_lie",
    "abelian",
    "sl2",
    "validate",
    "validate_cdga",
    "tensor_cdga_lie",
    "lyndon_words",
    "dumps_lie",
    "loads_lie",
    "change_basis",
]

LinComb = Dict[str, Fraction]


class NonUnitWeightGenerator(ValueError):
    pass


class InvalidAlgebra(ValueError):
    """An input algebra failed validation; ``violations`` holds the report."""

    def __init__(self, violations: Sequence["Violation"], what: str = "algebra"):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"invalid {what}: {head}{more}")


@dataclass(frozen=True)
class Violation:
    kind: str
    where: Tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}{self.where}{': ' + self.detail if self.detail else ''}"


def _sign(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


def _clean(v: Mapping[str, object]) -> LinComb:
    return {k: as_rational(c) for k, c in v.items() if c}


def _axpy(acc: Dict[str, Fraction], c, v: Mapping[str, Fraction]) -> None:
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def _sub(u: Mapping[str, Fraction], v: Mapping[str, Fraction]) -> LinComb:
    out = dict(u)
    _axpy(out, -1, v)
    return out


class _Structure:
    """Shared plumbing for algebras given by a basis and a multiplication table."""

    space: GradedVectorSpace
    _table: Dict[Tuple[str, str], LinComb]
    _diff: Dict[str, LinComb]

    def _init_common(self, space, table, differential):
        self.space = space
        self._deg = {b.label: b.degree for b in space.basis}
        self._wt = {b.label: b.weight for b in space.basis}
        self._table = {}
        for (a, b), v in (table or {}).items():
            for lab in (a, b, *v):
                if lab not in self._deg:
                    raise KeyError(f"unknown basis label {lab!r}")
            v = _clean(v)
            if v:
                self._table[(a, b)] = v
        self._diff = {}
        for a, v in (differential or {}).items():
            for lab in (a, *v):
                if lab not in self._deg:
                    raise KeyError(f"unknown basis label {lab!r}")
            v = _clean(v)
            if v:
                self._diff[a] = v

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.space.labels

    def degree(self, label: str) -> int:
        return self._deg[label]

    def weight(self, label: str) -> int:
        return self._wt[label]

    @property
    def table(self) -> Dict[Tuple[str, str], LinComb]:
        return {k: dict(v) for k, v in self._table.items()}

    @property
    def differential(self) -> Dict[str, LinComb]:
        return {k: dict(v) for k, v in self._diff.items()}

    @property
    def has_differential(self) -> bool:
        return bool(self._diff)

    def _mul(self, u: Mapping[str, Fraction], v: Mapping[str, Fraction]) -> LinComb:
        out: Dict[str, Fraction] = {}
        for a, x in u.items():
            for b, y in v.items():
                r = self._table.get((a, b))
                if r:
                    _axpy(out, x * y, r)
        return out

    def d(self, u) -> LinComb:
        if isinstance(u, str):
            u = {u: Fraction(1)}
        out: Dict[str, Fraction] = {}
        for a, x in u.items():
            r = self._diff.get(a)
            if r:
                _axpy(out, x, r)
        return out


class GradedLieAlgebra(_Structure):
    """Graded Lie algebra over Q with optional internal differential.

    ``bracket`` maps ordered label pairs to linear combinations; pairs that
    are absent bracket to zero, so both ``(x, y)`` and ``(y, x)`` must be
    present for a well-formed table.  ``differential`` maps labels to
    linear combinations (degree -1, weight preserving).

    With ``weight_graded=False`` weights are only a filtration: a bracket
    may land in weight *at most* the sum (sl_2 with every basis element in
    weight 1 is the motivating case).
    """

    def __init__(self, space: GradedVectorSpace,
                 bracket: Optional[Mapping[Tuple[str, str], Mapping[str, object]]] = None,
                 differential: Optional[Mapping[str, Mapping[str, object]]] = None,
                 max_weight: Optional[int] = None, name: str = "",
                 weight_graded: bool = True):
        self._init_common(space, bracket, differential)
        self.max_weight = max_weight
        self.name = name
        self.weight_graded = weight_graded

    def br(self, u, v) -> LinComb:
        """Bracket of two elements (labels or linear combinations)."""
        if isinstance(u, str):
            u = {u: Fraction(1)}
        if isinstance(v, str):
            v = {v: Fraction(1)}
        return self._mul(u, v)

    @property
    def bracket(self) -> Dict[Tuple[str, str], LinComb]:
        return self.table

    def is_abelian(self) -> bool:
        return not self._table

    def truncated(self, max_weight: int) -> "GradedLieAlgebra":
        keep = [b for b in self.space.basis if b.weight <= max_weight]
        ok = {b.label for b in keep}
        br = {k: v for k, v in self._table.items() if k[0] in ok and k[1] in ok}
        br = {k: {l: c for l, c in v.items() if l in ok} for k, v in br.items()}
        df = {k: {l: c for l, c in v.items() if l in ok} for k, v in self._diff.items() if k in ok}
        mw = max_weight if self.max_weight is None else min(max_weight, self.max_weight)
        return GradedLieAlgebra(GradedVectorSpace(tuple(keep)), br, df, mw, self.name, self.weight_graded)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<GradedLieAlgebra{tag} dim={self.space.dim} brackets={len(self._table)}>"


class Cdga(_Structure):
    """Graded-commutative (possibly non-unital) dg algebra over Q."""

    def __init__(self, space: GradedVectorSpace,
                 product: Optional[Mapping[Tuple[str, str], Mapping[str, object]]] = None,
                 unit: Optional[str] = None,
                 differential: Optional[Mapping[str, Mapping[str, object]]] = None,
                 name: str = ""):
        self._init_common(space, product, differential)
        if unit is not None and unit not in self._deg:
            raise KeyError(f"unit {unit!r} is not a basis label")
        self.unit = unit
        self.name = name

    def mul(self, u, v) -> LinComb:
        if isinstance(u, str):
            u = {u: Fraction(1)}
        if isinstance(v, str):
            v = {v: Fraction(1)}
        return self._mul(u, v)

    @property
    def product(self) -> Dict[Tuple[str, str], LinComb]:
        return self.table

    def __repr__(self) -> str:
        return f"<Cdga {self.name or ''} dim={self.space.dim}>"


# ---------------------------------------------------------------------------
# validation


def _homogeneity(alg: _Structure, report: List[Violation], op: str) -> None:
    for (a, b), v in alg._table.items():
        dd = alg.degree(a) + alg.degree(b)
        ww = alg.weight(a) + alg.weight(b)
        for t in v:
            if alg.degree(t) != dd:
                report.append(Violation("degree", (a, b, t), f"{op} should land in degree {dd}"))
            if isinstance(alg, GradedLieAlgebra):
                if alg.weight_graded and alg.weight(t) != ww:
                    report.append(Violation("weight", (a, b, t), f"{op} should land in weight {ww}"))
                elif alg.weight(t) > ww:
                    report.append(Violation("weight", (a, b, t), f"{op} should land in weight <= {ww}"))
    for a, v in alg._diff.items():
        for t in v:
            if alg.degree(t) != alg.degree(a) - 1:
                report.append(Violation("degree", (a, t), "differential must have degree -1"))
            if alg.weight(t) != alg.weight(a):
                report.append(Violation("weight", (a, t), "differential must preserve weight"))


def _differential_checks(alg: _Structure, mul, report: List[Violation], deriv_sign) -> None:
    labels = alg.labels
    for a in labels:
        if alg.d(alg.d(a)):
            report.append(Violation("d_squared", (a,)))
    if not alg._diff:
        return
    for a in labels:
        for b in labels:
            lhs = alg.d(mul(a, b))
            rhs = mul(alg.d(a), b)
            _axpy(rhs, deriv_sign(alg.degree(a)), mul(a, alg.d(b)))
            if _sub(lhs, rhs):
                report.append(Violation("derivation", (a, b)))


def validate(L: GradedLieAlgebra) -> List[Violation]:
    """Check the graded Lie axioms; an empty list means valid.

    Antisymmetry on every unordered pair, Jacobi on every multiset of three
    basis elements whose total weight fits the truncation, and for the
    differential: degree -1, ``d^2 = 0`` and the derivation rule
    ``d[x,y] = [dx,y] + (-1)^|x| [x,dy]``.
    """
    report: List[Violation] = []
    _homogeneity(L, report, "bracket")
    labels = L.labels
    deg = L.degree
    for i, x in enumerate(labels):
        for y in labels[i:]:
            lhs = L.br(x, y)
            rhs = {k: -_sign(deg(x), deg(y)) * c for k, c in L.br(y, x).items()}
            if _sub(lhs, rhs):
                report.append(Violation("antisymmetry", (x, y)))
    maxw = L.max_weight if L.max_weight is not None else float("inf")
    for i, x in enumerate(labels):
        for j in range(i, len(labels)):
            y = labels[j]
            if L.weight(x) + L.weight(y) > maxw:
                continue
            xy = L.br(x, y)
            for z in labels[j:]:
                if L.weight(x) + L.weight(y) + L.weight(z) > maxw:
                    continue
                lhs = L.br(x, L.br(y, z))
                rhs = L.br(xy, z)
                _axpy(rhs, _sign(deg(x), deg(y)), L.br(y, L.br(x, z)))
                if _sub(lhs, rhs):
                    report.append(Violation("jacobi", (x, y, z)))
    _differential_checks(L, L.br, report, lambda a: _sign(a, 1))
    return report


def validate_cdga(A: Cdga) -> List[Violation]:
    """Graded commutativity, associativity, unit law, Leibniz and ``d^2 = 0``."""
    report: List[Violation] = []
    _homogeneity(A, report, "product")
    labels = A.labels
    deg = A.degree
    for i, a in enumerate(labels):
        for b in labels[i:]:
            lhs = A.mul(a, b)
            rhs = {k: _sign(deg(a), deg(b)) * c for k, c in A.mul(b, a).items()}
            if _sub(lhs, rhs):
                report.append(Violation("commutativity", (a, b)))
    for a, b, c in itertools.product(labels, repeat=3):
        if _sub(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c))):
            report.append(Violation("associativity", (a, b, c)))
    if A.unit is not None:
        if deg(A.unit) != 0:
            report.append(Violation("unit", (A.unit,), "unit must have degree 0"))
        for a in labels:
            one = {a: Fraction(1)}
            if A.mul(A.unit, a) != one or A.mul(a, A.unit) != one:
                report.append(Violation("unit", (A.unit, a)))
    _differential_checks(A, A.mul, report, lambda a: _sign(a, 1))
    return report


# ---------------------------------------------------------------------------
# small builtin algebras


def abelian(space: GradedVectorSpace, name: str = "abelian") -> GradedLieAlgebra:
    return GradedLieAlgebra(space, {}, {}, None, name)


def sl2(degree: int = 0, weight: int = 1) -> GradedLieAlgebra:
    """sl_2 with basis e, f, h placed in one (even) degree."""
    if degree % 2:
        raise ValueError("sl2 must sit in even degree")
    sp = GradedVectorSpace.from_triples([("e", degree, weight), ("f", degree, weight), ("h", degree, weight)])
    br = {
        ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
        ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
        ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
    }
    return GradedLieAlgebra(sp, br, {}, None, "sl2", weight_graded=False)


# ---------------------------------------------------------------------------
# free Lie algebras


def lyndon_words(alphabet_size: int, max_length: int) -> List[Tuple[int, ...]]:
    """All Lyndon words of length <= ``max_length``, by Duval's algorithm."""
    if alphabet_size <= 0 or max_length <= 0:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
    return sorted(out, key=lambda t: (len(t), t))


def _standard_factorization(w: Tuple[int, ...], lyndon: set) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    for i in range(1, len(w)):
        if w[i:] in lyndon:
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


Poly = Dict[Tuple[int, ...], Fraction]


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for u, a in p.items():
        for v, b in q.items():
            out[u + v] += a * b
    return {k: v for k, v in out.items() if v}


def _commutator(p: Poly, dp: int, q: Poly, dq: int) -> Poly:
    out = _poly_mul(p, q)
    s = _sign(dp, dq)
    for k, v in _poly_mul(q, p).items():
        c = out.get(k, 0) - s * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def free_lie(generators: GradedVectorSpace, max_weight: int) -> GradedLieAlgebra:
    """Free graded Lie algebra on ``generators``, truncated at ``max_weight``.

    Basis: standard bracketings of Lyndon words, plus ``[P_w, P_w]`` for
    each Lyndon word ``w`` of odd degree.  Letters are ordered as the
    generators are listed.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    for b in generators.basis:
        if b.weight != 1:
            raise NonUnitWeightGenerator(f"generator {b.label!r} has weight {b.weight}, expected 1")
    gens = generators.basis
    g = len(gens)
    gdeg = [b.degree for b in gens]
    words = lyndon_words(g, max_weight)
    lyn = set(words)

    def wdeg(w):
        return sum(gdeg[i] for i in w)

    polys: Dict[str, Poly] = {}
    lead: Dict[Tuple[int, ...], Tuple[str, Fraction]] = {}
    label_of: Dict[Tuple[int, ...], str] = {}
    basis: List[BasisElement] = []
    for w in words:
        if len(w) == 1:
            lab = gens[w[0]].label
            p = {w: Fraction(1)}
        else:
            u, v = _standard_factorization(w, lyn)
            lab = f"[{label_of[u]},{label_of[v]}]"
            p = _commutator(polys[label_of[u]], wdeg(u), polys[label_of[v]], wdeg(v))
        label_of[w] = lab
        polys[lab] = p
        lead[w] = (lab, p[w])
        basis.append(BasisElement(lab, wdeg(w), len(w)))
    for w in words:
        if wdeg(w) % 2 and 2 * len(w) <= max_weight:
            lab = f"[{label_of[w]},{label_of[w]}]"
            p = _commutator(polys[label_of[w]], wdeg(w), polys[label_of[w]], wdeg(w))
            polys[lab] = p
            lead[w + w] = (lab, p[w + w])
            basis.append(BasisElement(lab, 2 * wdeg(w), 2 * len(w)))
    basis.sort(key=lambda b: (b.weight, b.degree, _word_key(b.label, polys)))
    space = GradedVectorSpace(tuple(basis))
    deg = {b.label: b.degree for b in basis}
    wt = {b.label: b.weight for b in basis}

    def to_basis(p: Poly) -> LinComb:
        p = dict(p)
        out: LinComb = {}
        while p:
            w = min(p)
            if w not in lead:
                raise ArithmeticError(f"word {w} is not a leading word; not a Lie polynomial")
            lab, c0 = lead[w]
            c = p[w] / c0
            out[lab] = c
            for k, v in polys[lab].items():
                x = p.get(k, 0) - c * v
                if x:
                    p[k] = x
                else:
                    p.pop(k, None)
        return out

    bracket: Dict[Tuple[str, str], LinComb] = {}
    labs = [b.label for b in basis]
    for i, a in enumerate(labs):
        for b in labs[i:]:
            if wt[a] + wt[b] > max_weight:
                continue
            v = to_basis(_commutator(polys[a], deg[a], polys[b], deg[b]))
            if v:
                bracket[(a, b)] = v
                if a != b:
                    s = -_sign(deg[a], deg[b])
                    bracket[(b, a)] = {k: s * c for k, c in v.items()}
    name = f"free_lie({','.join(b.label for b in gens)})"
    return GradedLieAlgebra(space, bracket, {}, max_weight, name)


def _word_key(label: str, polys: Mapping[str, Poly]) -> Tuple[int, ...]:
    return min(polys[label])


# ---------------------------------------------------------------------------
# A (x) L


def tensor_cdga_lie(A: Cdga, L: GradedLieAlgebra, max_weight: Optional[int] = None,
                    check: bool = True) -> GradedLieAlgebra:
    """The graded Lie algebra ``A (x) L``.

    Basis ``a(x)x`` in degree ``|a|+|x|`` and weight ``weight(x)``;
    ``[a(x)x, b(x)y] = (-1)^(|x||b|) ab (x) [x,y]`` and
    ``d(a(x)x) = dA(a)(x)x + (-1)^|a| a(x)dL(x)``.
    """
    if check:
        bad = validate_cdga(A)
        if bad:
            raise InvalidAlgebra(bad, "CDGA")
        bad = validate(L)
        if bad:
            raise InvalidAlgebra(bad, "Lie algebra")
    if max_weight is None:
        max_weight = L.max_weight if L.max_weight is not None else max(L.space.weights(), default=0)
    xs = [b for b in L.space.basis if b.weight <= max_weight]
    basis = []
    for a in A.space.basis:
        for x in xs:
            basis.append(BasisElement(f"{a.label}⊗{x.label}", a.degree + x.degree, x.weight))
    space = GradedVectorSpace(tuple(basis))

    def lab(a, x):
        return f"{a}⊗{x}"

    keep = {b.label for b in xs}
    bracket: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
    for (a, b), ab in A._table.items():
        for (x, y), xy in L._table.items():
            if x not in keep or y not in keep:
                continue
            s = _sign(L.degree(x), A.degree(b))
            out = bracket.setdefault((lab(a, x), lab(b, y)), {})
            for c, cc in ab.items():
                for z, zz in xy.items():
                    if z in keep:
                        _axpy(out, 1, {lab(c, z): s * cc * zz})
    diff: Dict[str, Dict[str, Fraction]] = {}
    for a in A.labels:
        for x in keep:
            out: Dict[str, Fraction] = {}
            for c, cc in A.d(a).items():
                _axpy(out, 1, {lab(c, x): cc})
            s = _sign(A.degree(a), 1)
            for z, zz in L.d(x).items():
                if z in keep:
                    _axpy(out, 1, {lab(a, z): s * zz})
            if out:
                diff[lab(a, x)] = out
    name = f"{A.name or 'A'}⊗{L.name or 'L'}"
    return GradedLieAlgebra(space, bracket, diff, max_weight, name, L.weight_graded)


def change_basis(L: GradedLieAlgebra, matrices: Mapping[Tuple[int, int], Sequence[Sequence[object]]]) -> GradedLieAlgebra:
    """Transport ``L`` along an invertible change of basis.

    ``matrices[(degree, weight)]`` is a square matrix ``M`` acting on the
    basis of that bigraded block (in basis order); new basis vector ``j`` is
    ``sum_i M[i][j] * old_i``.  Blocks not mentioned are left alone.  The
    new labels are ``old label + "'"``.
    """
    blocks: Dict[Tuple[int, int], List[str]] = defaultdict(list)
    for b in L.space.basis:
        blocks[(b.degree, b.weight)].append(b.label)
    new_label = {l: l + "'" for l in L.labels}
    fwd: Dict[str, LinComb] = {}   # new -> combination of old
    inv: Dict[str, LinComb] = {}   # old -> combination of new
    for key, labs in blocks.items():
        n = len(labs)
        M = matrices.get(key)
        if M is None:
            M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        M = [[as_rational(x) for x in row] for row in M]
        Minv = _invert(M)
        for j, lj in enumerate(labs):
            fwd[new_label[lj]] = {labs[i]: M[i][j] for i in range(n) if M[i][j]}
            inv[lj] = {new_label[labs[i]]: Minv[i][j] for i in range(n) if Minv[i][j]}

    def to_new(v: Mapping[str, Fraction]) -> LinComb:
        out: LinComb = {}
        for k, c in v.items():
            _axpy(out, c, inv[k])
        return out

    space = GradedVectorSpace(tuple(BasisElement(new_label[b.label], b.degree, b.weight) for b in L.space.basis))
    br = {}
    for a in space.labels:
        for b in space.labels:
            v = to_new(L.br(fwd[a], fwd[b]))
            if v:
                br[(a, b)] = v
    df = {}
    for a in space.labels:
        v = to_new(L.d(fwd[a]))
        if v:
            df[a] = v
    return GradedLieAlgebra(space, br, df, L.max_weight, L.name + "'", L.weight_graded)


def _invert(M: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular change of basis")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


# ---------------------------------------------------------------------------
# text format


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_comb(v: Mapping[str, Fraction]) -> str:
    return " ".join(f"{_fmt(c)} {k}" for k, c in v.items())


def dumps_lie(L: GradedLieAlgebra) -> str:
    """Serialize to the plain-text Lie algebra format.

    Sections ``[basis]`` (label degree weight), ``[bracket]``
    (``x y = c1 z1 c2 z2 ...``) and ``[differential]`` (``x = c1 z1 ...``).
    Coefficients are exact rationals written ``p/q``.
    """
    lines = ["# lieconf lie-algebra v1"]
    if L.name:
        lines.append(f"name = {L.name}")
    if L.max_weight is not None:
        lines.append(f"max_weight = {L.max_weight}")
    if not L.weight_graded:
        lines.append("weight_graded = false")
    lines.append("[basis]")
    for b in L.space.basis:
        lines.append(f"{b.label} {b.degree} {b.weight}")
    lines.append("[bracket]")
    order = {l: i for i, l in enumerate(L.labels)}
    for (a, b), v in sorted(L._table.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        lines.append(f"{a} {b} = {_fmt_comb(v)}")
    lines.append("[differential]")
    for a in L.labels:
        if a in L._diff:
            lines.append(f"{a} = {_fmt_comb(L._diff[a])}")
    return "\n".join(lines) + "\n"


class LieFormatError(ValueError):
    pass


def _parse_comb(tokens: List[str], lineno: int) -> Dict[str, Fraction]:
    if len(tokens) % 2:
        raise LieFormatError(f"line {lineno}: coefficients and labels must alternate")
    out: Dict[str, Fraction] = {}
    for c, lab in zip(tokens[::2], tokens[1::2]):
        try:
            q = Fraction(c)
        except (ValueError, ZeroDivisionError) as e:
            raise LieFormatError(f"line {lineno}: bad coefficient {c!r}") from e
        out[lab] = out.get(lab, 0) + q
    return out


def loads_lie(text: str) -> GradedLieAlgebra:
    section = None
    meta: Dict[str, str] = {}
    basis: List[BasisElement] = []
    bracket: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
    diff: Dict[str, Dict[str, Fraction]] = {}
    if not any(l.strip() == "[basis]" for l in text.splitlines()):
        raise LieFormatError("missing [basis] section")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]") and line[1:-1] in ("basis", "bracket", "differential"):
            section = line[1:-1]
            continue
        if section is None:
            if "=" not in line:
                raise LieFormatError(f"line {lineno}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            meta[k] = v
        elif section == "basis":
            parts = line.split()
            if len(parts) != 3:
                raise LieFormatError(f"line {lineno}: basis lines are 'label degree weight'")
            try:
                basis.append(BasisElement(parts[0], int(parts[1]), int(parts[2])))
            except ValueError as e:
                raise LieFormatError(f"line {lineno}: {e}") from e
        else:
            if "=" not in line:
                raise LieFormatError(f"line {lineno}: missing '='")
            lhs, rhs = line.split("=", 1)
            lhs = lhs.split()
            want = 2 if section == "bracket" else 1
            if len(lhs) != want:
                raise LieFormatError(f"line {lineno}: expected {want} label(s) before '='")
            comb = _parse_comb(rhs.split(), lineno)
            if section == "bracket":
                bracket[(lhs[0], lhs[1])] = comb
            else:
                diff[lhs[0]] = comb
    try:
        space = GradedVectorSpace(tuple(basis))
        mw = int(meta["max_weight"]) if "max_weight" in meta else None
        wg = meta.get("weight_graded", "true").lower()
        if wg not in ("true", "false"):
            raise LieFormatError(f"weight_graded must be true or false, got {wg!r}")
        return GradedLieAlgebra(space, bracket, diff, mw, meta.get("name", ""), wg == "true")
    except (KeyError, ValueError) as e:
        raise LieFormatError(str(e)) from e
