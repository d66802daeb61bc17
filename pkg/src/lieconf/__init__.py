"""Exact computations with graded Lie algebras over Q.

Free Lie algebras, Chevalley-Eilenberg homology, higher enveloping algebras
via PBW, Betti numbers of unordered configuration spaces, and the
cover/convolution combinatorics of reduced functors.
"""
from .exactla import Rational, SparseMatrix, kernel_basis, projector_rank, rank
from .graded import (BasisElement, ChainComplex, GradedVectorSpace, PoincareSeries, homology, shift,
                     sym_series)
from .lie import (Cdga, GradedLieAlgebra, abelian, change_basis, dumps_lie, free_lie, loads_lie, sl2,
                  tensor_cdga_lie, validate, validate_cdga)
from .ce import ce_complex, ce_homology, gr_dims
from .envelope import free_en_series, pbw_check, u_n_underlying
from .confspace import (BettiTable, ManifoldDescriptor, arnold_dims, betti_unordered, builtin_descriptor,
                        conf_lie, euclidean, load_descriptor, ordered_series_oracle)
from .ranconv import (CardinalityFunctor, Cover, canonical_factorization, compose, enumerate_covers,
                      nilpotence_check, sym_power, tensor_disjoint, tensor_overlap)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "SparseMatrix",
    "kernel_basis",
    "projector_rank",
    "rank",
    "BasisElement",
    "ChainComplex",
    "GradedVectorSpace",
    "PoincareSeries",
    "homology",
    "shift",
    "sym_series",
    "Cdga",
    "GradedLieAlgebra",
    "abelian",
    "change_basis",
    "dumps_lie",
    "free_lie",
    "loads_lie",
    "sl2",
    "tensor_cdga_lie",
    "validate",
    "validate_cdga",
    "ce_complex",
    "ce_homology",
    "gr_dims",
    "free_en_series",
    "pbw_check",
    "u_n_underlying",
    "BettiTable",
    "ManifoldDescriptor",
    "arnold_dims",
    "betti_unordered",
    "builtin_descriptor",
    "conf_lie",
    "euclidean",
    "load_descriptor",
    "ordered_series_oracle",
    "CardinalityFunctor",
    "Cover",
    "canonical_factorization",
    "compose",
    "enumerate_covers",
    "nilpotence_check",
    "sym_power",
    "tensor_disjoint",
    "tensor_overlap",
]
