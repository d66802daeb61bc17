"""E_n enveloping algebras and the PBW comparison.

For each test algebra the homology of U_n(L) is compared with Sym(L[1-n])
weight by weight.  The free E_n algebra on one even class recovers the
configuration-space Poincare series of R^n.
"""
from lieconf import GradedVectorSpace, free_en_series, pbw_check
from lieconf.verify import battery

for name, L in battery(4):
    verdicts = " ".join(f"n={n}:{'ok' if pbw_check(L, n, 4) else 'FAIL'}" for n in (1, 2, 3))
    print(f"{name:14s} {verdicts}")

v = GradedVectorSpace.from_triples([("v", 0, 1)])
for n in (2, 3):
    print(f"free E_{n} on one class:", free_en_series(v, n, 5))
