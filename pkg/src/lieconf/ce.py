"""Chevalley-Eilenberg complexes ``Sym(L[1])`` of dg Lie algebras.

A word is a canonically ordered product ``sx_1 . sx_2 ... sx_m`` of shifted
basis elements (``|sx| = |x| + 1``).  On two factors the bracket part of the
differential is ``sx . sy -> (-1)^|x| s[x,y]`` and on one factor the internal
part is ``sx -> -s(dx)``; both extend to words by the Koszul rule.
"""
from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .exactla import SparseMatrix
from .graded import (BasisElement, ChainComplex, GradedVectorSpace, PoincareSeries,
                     homology, shift, sym_series)
from .lie import GradedLieAlgebra, InvalidAlgebra, validate

__all__ = ["CeWord", "ce_words", "ce_complex", "ce_homology", "gr_dims", "betti_csv"]


def _sign(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


@dataclass(frozen=True)
class CeWord:
    """A monomial in ``Sym(L[1])``; ``factors`` index the shifted generators."""

    factors: Tuple[int, ...]
    degree: int
    weight: int
    label: str


class _Shifted:
    """Shifted basis of ``L`` in canonical (degree, label) order."""

    def __init__(self, L: GradedLieAlgebra, max_weight: int):
        elems = [b for b in L.space.basis if b.weight <= max_weight]
        elems.sort(key=lambda b: (b.degree + 1, b.label))
        self.labels = [b.label for b in elems]
        self.index = {l: i for i, l in enumerate(self.labels)}
        self.deg = [b.degree + 1 for b in elems]     # shifted degree
        self.ldeg = [b.degree for b in elems]        # degree in L
        self.wt = [b.weight for b in elems]

    def canonical(self, factors: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
        """Sort factors into canonical order; returns (sign, word), sign 0 if it vanishes."""
        f = list(factors)
        sign = 1
        # insertion sort, tracking Koszul signs of adjacent swaps
        for i in range(1, len(f)):
            j = i
            while j > 0 and f[j - 1] > f[j]:
                if self.deg[f[j - 1]] % 2 and self.deg[f[j]] % 2:
                    sign = -sign
                f[j - 1], f[j] = f[j], f[j - 1]
                j -= 1
        for a, b in zip(f, f[1:]):
            if a == b and self.deg[a] % 2:
                return 0, ()
        return sign, tuple(f)


def _word_label(sh: _Shifted, word: Tuple[int, ...]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        s = f"s{sh.labels[word[i]]}"
        parts.append(s if j - i == 1 else f"{s}^{j - i}")
        i = j
    return "·".join(parts)


def ce_words(L: GradedLieAlgebra, max_weight: int) -> List[CeWord]:
    """All CE words of weight <= ``max_weight``, in enumeration order."""
    sh = _Shifted(L, max_weight)
    return [CeWord(w, sum(sh.deg[i] for i in w), sum(sh.wt[i] for i in w), _word_label(sh, w))
            for w in _enumerate(sh, max_weight)]


def _enumerate(sh: _Shifted, max_weight: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []

    def rec(start: int, prefix: List[int], weight: int) -> None:
        out.append(tuple(prefix))
        for i in range(start, len(sh.labels)):
            if weight + sh.wt[i] > max_weight:
                continue
            # odd generators appear at most once
            nxt = i + 1 if sh.deg[i] % 2 else i
            prefix.append(i)
            rec(nxt, prefix, weight + sh.wt[i])
            prefix.pop()

    rec(0, [], 0)
    return out


def _differential(L: GradedLieAlgebra, sh: _Shifted, word: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
    out: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    degs = [sh.deg[i] for i in word]
    # internal part
    prefix = 0
    for pos, i in enumerate(word):
        for lab, c in L.d(sh.labels[i]).items():
            j = sh.index.get(lab)
            if j is None:
                continue
            s, w = sh.canonical(word[:pos] + (j,) + word[pos + 1:])
            if s:
                out[w] += -c * s * _sign(prefix, 1)
        prefix += degs[pos]
    # bracket part
    m = len(word)
    for a in range(m):
        ea = _sign(degs[a], sum(degs[:a]))
        for b in range(a + 1, m):
            before_b = sum(degs[:b]) - degs[a]
            e = ea * _sign(degs[b], before_b) * _sign(sh.ldeg[word[a]], 1)
            rest = word[:a] + word[a + 1:b] + word[b + 1:]
            for lab, c in L.br(sh.labels[word[a]], sh.labels[word[b]]).items():
                j = sh.index.get(lab)
                if j is None:
                    continue
                s, w = sh.canonical((j,) + rest)
                if s:
                    out[w] += e * s * c
    return {k: v for k, v in out.items() if v}


def ce_complex(L: GradedLieAlgebra, max_weight: int, check: bool = True) -> ChainComplex:
    """The weight-graded Chevalley-Eilenberg complex of ``L`` through ``max_weight``.

    Includes the weight-0 unit word.  ``d^2 = 0`` is verified at
    construction and a violation raises ``DifferentialSquareNonzero``.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    if check:
        bad = validate(L)
        if bad:
            raise InvalidAlgebra(bad, "Lie algebra")
    sh = _Shifted(L, max_weight)
    words = _enumerate(sh, max_weight)
    by_wd: Dict[Tuple[int, int], List[Tuple[int, ...]]] = defaultdict(list)
    for w in words:
        by_wd[(sum(sh.wt[i] for i in w), sum(sh.deg[i] for i in w))].append(w)
    spaces: Dict[int, List[BasisElement]] = defaultdict(list)
    for (wt, dg) in sorted(by_wd):
        for w in by_wd[(wt, dg)]:
            spaces[wt].append(BasisElement(_word_label(sh, w), dg, wt))
    # position of each word in its whole degree, weight ascending
    by_deg: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for (wt, dg) in sorted(by_wd):
        by_deg[dg].extend(by_wd[(wt, dg)])
    pos = {w: k for ws in by_deg.values() for k, w in enumerate(ws)}
    total: Dict[int, SparseMatrix] = {}
    for dg, ws in by_deg.items():
        ent = {}
        for col, w in enumerate(ws):
            for tgt, c in _differential(L, sh, w).items():
                ent[(pos[tgt], col)] = c
        if ent:
            total[dg] = SparseMatrix(len(by_deg.get(dg - 1, ())), len(ws), ent)
    return ChainComplex.filtered({w: GradedVectorSpace(tuple(bs)) for w, bs in spaces.items()}, total)


def ce_homology(L: GradedLieAlgebra, max_weight: int) -> Dict[Tuple[int, int], int]:
    """Betti numbers ``(weight, degree) -> dim`` of ``CE(L)``, unit included."""
    return homology(ce_complex(L, max_weight))


def gr_dims(L: GradedLieAlgebra, max_weight: int) -> PoincareSeries:
    """Bigraded dimensions of ``Sym(L[1])`` through ``max_weight``."""
    sp = GradedVectorSpace(tuple(b for b in L.space.basis if b.weight <= max_weight))
    return sym_series(shift(sp, 1), max_weight)


def betti_csv(betti: Mapping[Tuple[int, int], int], header: Sequence[str] = ("weight", "degree", "betti")) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for (w, d), b in sorted(betti.items()):
        if b:
            wr.writerow([w, d, b])
    return buf.getvalue()
