"""Covers between finite sets, their composition, and symmetric powers of cardinality functors.

A cover I -> J assigns a subset of I to each j so that the subsets cover I.
Every cover splits uniquely as a splitting followed by a function.  Tensor
products of functors on finite sets come in two flavours, summing over
disjoint pieces or over overlapping covers.
"""
from lieconf import (CardinalityFunctor, Cover, GradedVectorSpace, canonical_factorization, compose,
                     enumerate_covers, nilpotence_check, sym_power)

S = Cover.from_parts([1, 2, 3], {"a": [1, 2], "b": [2, 3]})
T = Cover.from_parts(["a", "b"], {"u": ["a"], "v": ["a", "b"]})
print("T o S:", compose(T, S).as_dict())
split, func = canonical_factorization(S)
print("splitting:", split.as_dict())
print("function: ", func.as_dict())
print("covers 3 -> 2:", len(enumerate_covers(range(3), range(2))))

for parity in (0, 1):
    F = CardinalityFunctor.diagonal(GradedVectorSpace.from_triples([("v", parity, 1)]), 4)
    rows = []
    for j in range(1, 4):
        rows.append(" ".join(f"{sym_power(F, j, k, mode).dim}" for mode in ("disjoint", "overlap") for k in (1, 2, 3)))
    print(f"degree {parity}: dims of Sym^j (disjoint k=1..3 | overlap k=1..3) for j=1..3")
    for j, r in enumerate(rows, 1):
        print(f"  j={j}: {r}")

F = CardinalityFunctor.diagonal(GradedVectorSpace.from_triples([("v", 0, 1)]), 3)
print("4-fold disjoint tensor vanishes below 4:", nilpotence_check([F] * 4, 3))
