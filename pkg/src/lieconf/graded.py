"""Graded vector spaces, weight-graded chain complexes and Poincare series.

Grading is homological throughout.  Every basis element carries a degree and
a non-negative *weight* (number of configuration points / Sym-word length).
Differentials lower degree by one and preserve weight, except in complexes
built with :meth:`ChainComplex.filtered`, where they may also lower it.
"""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exactla import SparseMatrix, kernel_basis, rank

__all__ = [
    "BasisElement",
    "GradedVectorSpace",
    "ChainComplex",
    "PoincareSeries",
    "DifferentialSquareNonzero",
    "WeightZeroGenerator",
    "homology",
    "sym_series",
    "shift",
    "euler_characteristic",
]


class DifferentialSquareNonzero(ValueError):
    """``d o d != 0`` somewhere; ``where`` is the offending ``(weight, degree)``."""

    def __init__(self, where: Tuple[int, int], msg: str = ""):
        self.where = where
        super().__init__(msg or f"d^2 != 0 at (weight, degree) = {where}")


class WeightZeroGenerator(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BasisElement:
    label: str
    degree: int
    weight: int = 0

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError(f"negative weight on {self.label!r}")


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite ordered basis of labelled, bigraded elements."""

    basis: Tuple[BasisElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        seen = set()
        for b in self.basis:
            if b.label in seen:
                raise ValueError(f"duplicate basis label {b.label!r}")
            seen.add(b.label)

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[str, int, int]]) -> "GradedVectorSpace":
        return cls(tuple(BasisElement(l, d, w) for l, d, w in triples))

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self) -> Iterator[BasisElement]:
        return iter(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(b.label for b in self.basis)

    def index(self, label: str) -> int:
        for i, b in enumerate(self.basis):
            if b.label == label:
                return i
        raise KeyError(label)

    def element(self, label: str) -> BasisElement:
        return self.basis[self.index(label)]

    def in_degree(self, d: int) -> Tuple[BasisElement, ...]:
        return tuple(b for b in self.basis if b.degree == d)

    def in_weight(self, w: int) -> "GradedVectorSpace":
        return GradedVectorSpace(tuple(b for b in self.basis if b.weight == w))

    def degrees(self) -> List[int]:
        return sorted({b.degree for b in self.basis})

    def weights(self) -> List[int]:
        return sorted({b.weight for b in self.basis})

    def dims(self) -> Dict[Tuple[int, int], int]:
        """``(degree, weight) -> dimension``."""
        return dict(Counter((b.degree, b.weight) for b in self.basis))

    def series(self) -> "PoincareSeries":
        return PoincareSeries(self.dims(), max((b.weight for b in self.basis), default=0))

    def direct_sum(self, other: "GradedVectorSpace") -> "GradedVectorSpace":
        return GradedVectorSpace(self.basis + other.basis)


def shift(v: GradedVectorSpace, k: int) -> GradedVectorSpace:
    """Suspension ``v[k]``: every degree moves up by ``k``."""
    return GradedVectorSpace(tuple(BasisElement(b.label, b.degree + k, b.weight) for b in v.basis))


# ---------------------------------------------------------------------------
# Poincare series


_TERM = re.compile(
    r"^(?:(?P<c>\d+)\*?)?"
    r"(?:s(?:\^(?P<w>\d+))?)?\*?"
    r"(?:t(?:\^(?P<d>-?\d+))?)?$"
)


@dataclass(frozen=True)
class PoincareSeries:
    """Bigraded dimension series, keyed by ``(degree, weight)``.

    ``truncation`` is the largest weight the series is valid through.
    Zero coefficients are never stored.
    """

    coefficients: Mapping[Tuple[int, int], int] = field(default_factory=dict)
    truncation: int = 0

    def __post_init__(self):
        clean = {tuple(k): int(v) for k, v in dict(self.coefficients).items() if v}
        object.__setattr__(self, "coefficients", dict(sorted(clean.items(), key=lambda kv: (kv[0][1], kv[0][0]))))

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.coefficients.get(tuple(key), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoincareSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def truncate(self, max_weight: int) -> "PoincareSeries":
        return PoincareSeries({k: v for k, v in self.coefficients.items() if k[1] <= max_weight}, max_weight)

    def weight_part(self, w: int) -> Dict[int, int]:
        """``degree -> coefficient`` in weight ``w``."""
        return {d: c for (d, ww), c in self.coefficients.items() if ww == w}

    def __mul__(self, other: "PoincareSeries") -> "PoincareSeries":
        k = min(self.truncation, other.truncation)
        out: Dict[Tuple[int, int], int] = defaultdict(int)
        for (d1, w1), a in self.coefficients.items():
            for (d2, w2), b in other.coefficients.items():
                if w1 + w2 <= k:
                    out[(d1 + d2, w1 + w2)] += a * b
        return PoincareSeries(out, k)

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        out = Counter(self.coefficients)
        out.update(other.coefficients)
        return PoincareSeries(out, min(self.truncation, other.truncation))

    def to_text(self) -> str:
        """Laurent polynomial in ``s`` (weight) and ``t`` (degree).

        The unit term prints as ``1``; every other term carries an explicit
        ``t`` power, e.g. ``1 + s*t^0 + 2*s^2*t^3``.
        """
        if not self.coefficients:
            return "0"
        terms = []
        for (d, w), c in self.coefficients.items():
            if (d, w) == (0, 0):
                terms.append(str(c))
                continue
            parts = []
            if c != 1:
                parts.append(str(c))
            if w == 1:
                parts.append("s")
            elif w:
                parts.append(f"s^{w}")
            parts.append(f"t^{d}")
            terms.append("*".join(parts))
        return " + ".join(terms)

    @classmethod
    def from_text(cls, text: str, truncation: Optional[int] = None) -> "PoincareSeries":
        text = text.strip()
        coeffs: Dict[Tuple[int, int], int] = defaultdict(int)
        if text != "0":
            for raw in text.split("+"):
                term = raw.strip().replace(" ", "")
                m = _TERM.match(term)
                if not term or not m:
                    raise ValueError(f"cannot parse series term {raw!r}")
                c = int(m["c"]) if m["c"] else 1
                has_s = "s" in term
                has_t = "t" in term
                w = (int(m["w"]) if m["w"] else 1) if has_s else 0
                d = (int(m["d"]) if m["d"] else 1) if has_t else 0
                coeffs[(d, w)] += c
        maxw = max((w for _, w in coeffs), default=0)
        return cls(coeffs, maxw if truncation is None else truncation)

    def __str__(self) -> str:
        return self.to_text()


def sym_series(v: GradedVectorSpace, max_weight: int) -> PoincareSeries:
    """Bigraded dimensions of the free graded-commutative algebra on ``v``.

    Even-degree generators contribute polynomial factors, odd-degree ones
    exterior factors.  Truncated at ``max_weight``; includes the unit.
    """
    for b in v.basis:
        if b.weight < 1:
            raise WeightZeroGenerator(f"generator {b.label!r} has weight {b.weight}")
    acc: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for b in v.basis:
        if b.degree % 2:
            powers = [(0, 0), (b.degree, b.weight)]
        else:
            powers = [(k * b.degree, k * b.weight) for k in range(max_weight // b.weight + 1)]
        nxt: Dict[Tuple[int, int], int] = defaultdict(int)
        for (d, w), c in acc.items():
            for dd, ww in powers:
                if w + ww <= max_weight:
                    nxt[(d + dd, w + ww)] += c
        acc = nxt
    return PoincareSeries(acc, max_weight)


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """Weight-graded (or weight-filtered) chain complex over Q.

    ``spaces[w]`` is the weight-``w`` part.  In the graded case
    ``differentials[(w, d)]`` is the matrix of ``C(w, d) -> C(w, d-1)`` in
    the ordered bases ``spaces[w].in_degree(d)`` and
    ``spaces[w].in_degree(d-1)``; missing blocks are zero.

    :meth:`filtered` builds a complex whose differential may also lower
    weight (e.g. the CE complex of a Lie algebra whose bracket is only
    weight-filtered).  ``d o d = 0`` is checked at construction either way.
    """

    def __init__(self, spaces: Mapping[int, GradedVectorSpace],
                 differentials: Optional[Mapping[Tuple[int, int], SparseMatrix]] = None,
                 check: bool = True):
        self._set_spaces(spaces)
        self.differentials: Dict[Tuple[int, int], SparseMatrix] = {}
        for (w, d), m in (differentials or {}).items():
            src = self.dim(w, d)
            tgt = self.dim(w, d - 1)
            if m.shape != (tgt, src):
                raise ValueError(f"differential at {(w, d)} has shape {m.shape}, expected {(tgt, src)}")
            if not m.is_zero():
                self.differentials[(w, d)] = m
        self._total: Optional[Dict[int, SparseMatrix]] = None
        if check:
            self.check_square_zero()

    def _set_spaces(self, spaces: Mapping[int, GradedVectorSpace]) -> None:
        self.spaces: Dict[int, GradedVectorSpace] = dict(sorted(spaces.items()))
        for w, sp in self.spaces.items():
            bad = [b.label for b in sp.basis if b.weight != w]
            if bad:
                raise ValueError(f"basis elements {bad} do not have weight {w}")

    @classmethod
    def filtered(cls, spaces: Mapping[int, GradedVectorSpace], total: Mapping[int, SparseMatrix],
                 check: bool = True) -> "ChainComplex":
        """Complex given by whole-degree matrices ``total[d]: C_d -> C_{d-1}``.

        Rows and columns follow :meth:`degree_basis`.  The differential must
        not raise weight.  If it happens to preserve weight the result is an
        ordinary graded complex.
        """
        self = cls.__new__(cls)
        self._set_spaces(spaces)
        blocks: Dict[Tuple[int, int], Dict[Tuple[int, int], object]] = {}
        lowers = False
        for d, m in total.items():
            src = self.degree_basis(d)
            tgt = self.degree_basis(d - 1)
            if m.shape != (len(tgt), len(src)):
                raise ValueError(f"total differential in degree {d} has shape {m.shape}")
            for (i, j), v in m.items():
                (wi, ii), (wj, jj) = tgt[i][:2], src[j][:2]
                if wi > wj:
                    raise ValueError(f"differential raises weight {wj} -> {wi} in degree {d}")
                if wi < wj:
                    lowers = True
                else:
                    blocks.setdefault((wj, d), {})[(ii, jj)] = v
        if lowers:
            self.differentials = {}
            self._total = {d: m for d, m in total.items() if not m.is_zero()}
        else:
            self.differentials = {}
            for (w, d), ent in blocks.items():
                m = SparseMatrix(self.dim(w, d - 1), self.dim(w, d), ent)
                if not m.is_zero():
                    self.differentials[(w, d)] = m
            self._total = None
        if check:
            self.check_square_zero()
        return self

    @property
    def weight_preserving(self) -> bool:
        return self._total is None

    def dim(self, w: int, d: int) -> int:
        sp = self.spaces.get(w)
        return 0 if sp is None else len(sp.in_degree(d))

    def basis(self, w: int, d: int) -> Tuple[BasisElement, ...]:
        sp = self.spaces.get(w)
        return () if sp is None else sp.in_degree(d)

    def degree_basis(self, d: int) -> List[Tuple[int, int, BasisElement]]:
        """``(weight, index within weight, element)`` for all of ``C_d``, weight ascending."""
        out = []
        for w, sp in self.spaces.items():
            for i, b in enumerate(sp.in_degree(d)):
                out.append((w, i, b))
        return out

    def differential(self, w: int, d: int) -> SparseMatrix:
        """Weight-preserving block ``C(w, d) -> C(w, d-1)``."""
        if self._total is not None:
            src = [k for k, (ww, _, _) in enumerate(self.degree_basis(d)) if ww == w]
            tgt = [k for k, (ww, _, _) in enumerate(self.degree_basis(d - 1)) if ww == w]
            return _submatrix(self.total_differential(d), tgt, src)
        m = self.differentials.get((w, d))
        return m if m is not None else SparseMatrix(self.dim(w, d - 1), self.dim(w, d))

    def total_differential(self, d: int) -> SparseMatrix:
        src = self.degree_basis(d)
        tgt = self.degree_basis(d - 1)
        if self._total is not None:
            m = self._total.get(d)
            return m if m is not None else SparseMatrix(len(tgt), len(src))
        col0: Dict[int, int] = {}
        row0: Dict[int, int] = {}
        for k, (w, i, _) in enumerate(src):
            col0.setdefault(w, k)
        for k, (w, i, _) in enumerate(tgt):
            row0.setdefault(w, k)
        ent = {}
        for (w, dd), m in self.differentials.items():
            if dd != d:
                continue
            for (i, j), v in m.items():
                ent[(row0[w] + i, col0[w] + j)] = v
        return SparseMatrix(len(tgt), len(src), ent)

    def weights(self) -> List[int]:
        return list(self.spaces)

    def degrees(self, w: Optional[int] = None) -> List[int]:
        if w is None:
            return sorted({d for sp in self.spaces.values() for d in sp.degrees()})
        sp = self.spaces.get(w)
        return [] if sp is None else sp.degrees()

    def check_square_zero(self) -> None:
        if self._total is None:
            for (w, d), m in sorted(self.differentials.items()):
                below = self.differentials.get((w, d - 1))
                if below is not None and not (below @ m).is_zero():
                    raise DifferentialSquareNonzero((w, d))
            return
        for d in sorted(self._total):
            below = self._total.get(d - 1)
            if below is None:
                continue
            sq = below @ self._total[d]
            if not sq.is_zero():
                (i, j), _ = next(sq.items())
                raise DifferentialSquareNonzero((self.degree_basis(d)[j][0], d))

    def bigraded_dims(self) -> PoincareSeries:
        out: Dict[Tuple[int, int], int] = {}
        for w, sp in self.spaces.items():
            for (d, ww), c in sp.dims().items():
                out[(d, ww)] = c
        return PoincareSeries(out, max(self.spaces, default=0))

    def __repr__(self) -> str:
        kind = "graded" if self._total is None else "filtered"
        return f"ChainComplex({kind}, weights={self.weights()})"


def _submatrix(m: SparseMatrix, rows: Sequence[int], cols: Sequence[int]) -> SparseMatrix:
    ri = {r: k for k, r in enumerate(rows)}
    ci = {c: k for k, c in enumerate(cols)}
    return SparseMatrix(len(rows), len(cols),
                        {(ri[i], ci[j]): v for (i, j), v in m.items() if i in ri and j in ci})


def homology(c: ChainComplex) -> Dict[Tuple[int, int], int]:
    """Betti numbers ``(weight, degree) -> dim H``; zero entries omitted.

    For a weight-filtered complex the weight of a class is read off the
    induced filtration: ``dim F_w H - dim F_{w-1} H`` where ``F_w H`` is the
    image of the homology of the weight-<=w subcomplex.
    """
    c.check_square_zero()
    out: Dict[Tuple[int, int], int] = {}
    if c.weight_preserving:
        for w in c.weights():
            for d in c.degrees(w):
                n = c.dim(w, d)
                z = n - rank(c.differential(w, d))
                b = z - rank(c.differential(w, d + 1))
                if b:
                    out[(w, d)] = b
        return out
    for d in c.degrees():
        basis = c.degree_basis(d)
        dd = c.total_differential(d)
        up = c.total_differential(d + 1)
        rb = rank(up)
        prev = 0
        for w in c.weights():
            cols = [k for k, (ww, _, _) in enumerate(basis) if ww <= w]
            z = kernel_basis(_submatrix(dd, range(dd.rows), cols))
            ent = dict(up.entries)
            for t, v in enumerate(z):
                for k, x in zip(cols, v):
                    if x:
                        ent[(k, up.cols + t)] = x
            fw = rank(SparseMatrix(len(basis), up.cols + len(z), ent)) - rb
            if fw - prev:
                out[(w, d)] = fw - prev
            prev = fw
    return out


def homology_series(c: ChainComplex) -> PoincareSeries:
    return PoincareSeries({(d, w): b for (w, d), b in homology(c).items()}, max(c.weights(), default=0))


def euler_characteristic(c: ChainComplex) -> Dict[int, int]:
    """Per weight, the alternating sum of dimensions.

    Matches the alternating sum of Betti numbers weight by weight only when
    the differential preserves weight.
    """
    out: Dict[int, int] = {}
    for w, sp in c.spaces.items():
        out[w] = sum((-1) ** (b.degree % 2) for b in sp.basis)
    return out
