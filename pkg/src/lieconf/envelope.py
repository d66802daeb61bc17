"""Higher enveloping algebras ``U_n(L)`` at the level of underlying complexes.

``U_n(L)`` is computed as the CE complex of ``A (x) L`` where ``A`` is the
one-class model of reduced compactly supported cochains of R^n: a single
class ``e`` in degree ``-n`` with ``e.e = 0``.  Because ``e`` squares to zero
the tensor product is abelian and the complex is ``Sym(L[1-n])`` on the nose.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from .ce import ce_complex
from .graded import ChainComplex, GradedVectorSpace, PoincareSeries, homology, shift, sym_series
from .lie import Cdga, GradedLieAlgebra, free_lie, tensor_cdga_lie

__all__ = ["EnvelopeResult", "PbwReport", "sphere_model", "u_n_underlying", "free_en_series", "pbw_check"]


@dataclass(frozen=True)
class EnvelopeResult:
    n: int
    complex: ChainComplex
    series: PoincareSeries


@dataclass(frozen=True)
class PbwReport:
    n: int
    max_weight: int
    rows: List[Tuple[int, int, int, int]] = field(default_factory=list)  # (weight, degree, complex, sym)

    @property
    def ok(self) -> bool:
        return all(a == b for _, _, a, b in self.rows)

    def __bool__(self) -> bool:
        return self.ok

    def mismatches(self) -> List[Tuple[int, int, int, int]]:
        return [r for r in self.rows if r[2] != r[3]]


def sphere_model(n: int) -> Cdga:
    """Non-unital CDGA with one class ``e`` in degree ``-n`` and ``e.e = 0``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sp = GradedVectorSpace.from_triples([("e", -n, 0)])
    return Cdga(sp, {}, None, {}, name=f"Hc(R^{n})")


def u_n_underlying(L: GradedLieAlgebra, n: int, max_weight: int) -> EnvelopeResult:
    """Underlying weight-graded complex of ``U_n(L)`` and its homology series."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Lt = L.truncated(max_weight)
    T = tensor_cdga_lie(sphere_model(n), Lt, max_weight)
    cx = ce_complex(T, max_weight)
    expect = sym_series(shift(Lt.space, 1 - n), max_weight)
    got = cx.bigraded_dims()
    if got != expect:
        raise AssertionError(f"U_{n} complex dims {got} differ from Sym(L[1-n]) {expect}")
    betti = homology(cx)
    series = PoincareSeries({(d, w): b for (w, d), b in betti.items()}, max_weight)
    return EnvelopeResult(n, cx, series)


def free_en_series(V: GradedVectorSpace, n: int, max_weight: int) -> PoincareSeries:
    """Poincare series of the homology of the free non-unital E_n-algebra on ``V``.

    Computed as ``Sym`` of the free Lie algebra on ``V[n-1]``, shifted back by
    ``1-n``.  ``V`` must sit in weight 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not V.basis:
        return PoincareSeries({(0, 0): 1}, max_weight)
    L = free_lie(shift(V, n - 1), max_weight)
    return sym_series(shift(L.space, 1 - n), max_weight)


def pbw_check(L: GradedLieAlgebra, n: int, max_weight: int) -> PbwReport:
    """Compare bigraded dims of the ``U_n(L)`` complex with ``Sym(L[1-n])``.

    Mismatches are returned as data, never raised.
    """
    Lt = L.truncated(max_weight)
    T = tensor_cdga_lie(sphere_model(n), Lt, max_weight)
    got = ce_complex(T, max_weight).bigraded_dims()
    want = sym_series(shift(Lt.space, 1 - n), max_weight)
    keys = sorted(set(got.coefficients) | set(want.coefficients), key=lambda k: (k[1], k[0]))
    rows = [(w, d, got[(d, w)], want[(d, w)]) for d, w in keys]
    return PbwReport(n, max_weight, rows)
