"""Chevalley-Eilenberg homology of sl2, placed in weight 1 and degree 0.

Only the unit and a single class in degree 3 (the volume form) survive.
Compare with the abelian algebra on three generators, whose CE complex has
zero differential.
"""
from lieconf import GradedVectorSpace, abelian, ce_complex, ce_homology, sl2

L = sl2()
print("sl2 chain dims (weight, degree):", dict(sorted(ce_complex(L, 3).bigraded_dims().coefficients.items())))
print("sl2 homology:", {k: v for k, v in sorted(ce_homology(L, 3).items()) if v})

A = abelian(GradedVectorSpace.from_triples([("e", 0, 1), ("f", 0, 1), ("h", 0, 1)]))
print("abelian homology:", {k: v for k, v in sorted(ce_homology(A, 3).items()) if v})
