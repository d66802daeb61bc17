"""Ordered configurations of R^n: Arnold's presentation against the product formula.

The cohomology ring is generated by classes w_ij in degree n-1 subject to the
three-term relation.  Counting monomials in a reduced basis must reproduce
prod_{i<k} (1 + i t^(n-1)).
"""
from lieconf import arnold_dims, ordered_series_oracle

for n in (2, 3):
    print(f"n = {n}")
    for k in range(1, 6):
        presented = {d: c for d, c in arnold_dims(k, n).items() if c}
        product = {d: c for (d, _), c in ordered_series_oracle(k, n).coefficients.items()}
        mark = "ok" if presented == product else "MISMATCH"
        print(f"  k={k}  {dict(sorted(presented.items()))}  {mark}")
