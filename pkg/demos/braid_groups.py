"""Rational homology of unordered configurations in Euclidean space and on surfaces.

Points in R^2 have the homology of a circle once k >= 2; in R^n it alternates
with the parity of n.  Closed and punctured surfaces are less tidy.
"""
from lieconf import betti_unordered, builtin_descriptor, euclidean

for n in (2, 3, 4):
    table = betti_unordered(euclidean(n), 6)
    print(f"R^{n}")
    for k in range(1, 7):
        print(f"  k={k}: {table.polynomial(k)}")

for name in ("S2", "T2", "Sigma2_punct"):
    table = betti_unordered(builtin_descriptor(name), 4)
    print(name)
    print("\n".join("  " + line for line in table.to_text().splitlines()))
