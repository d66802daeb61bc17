"""Covers and convolution tensor products of reduced cardinality functors.

A *J-cover of I* is a J-indexed family of subsets of I whose union is I;
functions ``f: I -> J`` are the covers ``S_j = f^{-1}(j)``.  Composition is
``(T o S)_k = union of S_j over j in T_k``.

A reduced functor here has values depending only on cardinality.  Its
*disjoint* tensor product sums over ordered partitions of a finite set, its
*overlapping* tensor product over ordered covers (pieces may overlap).
Summands keep their subset labels so the symmetric group can act on tensor
powers; coinvariants come from the rank of the averaging projector.
"""
from __future__ import annotations

import itertools
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple,
                    Union)

import numpy as np

from .exactla import SparseMatrix, pivot_columns, projector_rank, rank
from .graded import BasisElement, GradedVectorSpace, sym_series

__all__ = [
    "Cover",
    "TargetSourceMismatch",
    "compose",
    "from_function",
    "identity",
    "enumerate_covers",
    "canonical_factorization",
    "cover_masks",
    "to_masks",
    "union_table",
    "compose_masks",
    "minimal_factorizations",
    "CardinalityFunctor",
    "LabeledSum",
    "tensor_disjoint",
    "tensor_overlap",
    "tensor_power",
    "iterated_tensor",
    "sym_power",
    "nilpotence_check",
    "lax_projection",
    "tensor_map",
    "LinearMap",
    "graded_vanish_expected",
    "star_sym_expected",
]

Elem = Hashable


class TargetSourceMismatch(ValueError):
    pass


def _sorted(xs: Iterable[Elem]) -> Tuple[Elem, ...]:
    return tuple(sorted(xs, key=lambda x: (type(x).__name__, repr(x)) if not isinstance(x, int) else ("", x)))


@dataclass(frozen=True)
class Cover:
    """A ``target``-indexed cover of ``source``; ``parts[t]`` is the subset for ``target[t]``."""

    source: Tuple[Elem, ...]
    target: Tuple[Elem, ...]
    parts: Tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))
        if len(self.parts) != len(self.target):
            raise ValueError("one part per target element")
        if len(set(self.source)) != len(self.source) or len(set(self.target)) != len(self.target):
            raise ValueError("source and target must not repeat elements")
        src = set(self.source)
        union = set()
        for p in self.parts:
            if not p <= src:
                raise ValueError(f"part {set(p)} is not a subset of the source")
            union |= p
        if union != src:
            raise ValueError(f"parts do not cover the source: missing {src - union}")

    @classmethod
    def from_parts(cls, source: Iterable[Elem], parts: Mapping[Elem, Iterable[Elem]],
                   target: Optional[Sequence[Elem]] = None) -> "Cover":
        target = tuple(parts) if target is None else tuple(target)
        return cls(tuple(source), target, tuple(frozenset(parts[j]) for j in target))

    def part(self, j: Elem) -> frozenset:
        return self.parts[self.target.index(j)]

    def as_dict(self) -> Dict[Elem, frozenset]:
        return dict(zip(self.target, self.parts))

    def is_function(self) -> bool:
        """Every source element lies in exactly one part."""
        cnt = Counter(i for p in self.parts for i in p)
        return all(cnt[i] == 1 for i in self.source)

    def is_splitting(self) -> bool:
        """Every part is a single element."""
        return all(len(p) == 1 for p in self.parts)

    def is_bijection(self) -> bool:
        return self.is_function() and self.is_splitting()

    def _canon(self):
        return (frozenset(self.source), frozenset(self.target), frozenset(zip(self.target, self.parts)))

    def same_as(self, other: "Cover") -> bool:
        """Equality ignoring the listed order of source and target."""
        return self._canon() == other._canon()

    def to_json(self) -> str:
        return json.dumps({
            "source": list(self.source),
            "target": list(self.target),
            "parts": [list(_sorted(p)) for p in self.parts],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: Union[str, Mapping]) -> "Cover":
        obj = json.loads(text) if isinstance(text, str) else text
        for key in ("source", "target", "parts"):
            if key not in obj:
                raise ValueError(f"cover JSON missing {key!r}")

        def h(x):
            return tuple(h(y) for y in x) if isinstance(x, list) else x

        return cls(tuple(h(x) for x in obj["source"]), tuple(h(x) for x in obj["target"]),
                   tuple(frozenset(h(x) for x in p) for p in obj["parts"]))


def from_function(f: Mapping[Elem, Elem], target: Optional[Sequence[Elem]] = None) -> Cover:
    """The cover ``S_j = f^{-1}(j)``."""
    target = _sorted(set(f.values())) if target is None else tuple(target)
    parts = tuple(frozenset(i for i, j in f.items() if j == t) for t in target)
    return Cover(tuple(f), target, parts)


def identity(I: Sequence[Elem]) -> Cover:
    return from_function({i: i for i in I}, tuple(I))


def compose(T: Cover, S: Cover) -> Cover:
    """``T o S`` for ``S: I -> J`` and ``T: J -> K``."""
    if set(S.target) != set(T.source):
        raise TargetSourceMismatch(f"target {S.target} of S is not the source {T.source} of T")
    Sd = S.as_dict()
    parts = tuple(frozenset().union(*(Sd[j] for j in Tk)) for Tk in T.parts)
    return Cover(S.source, T.target, parts)


def enumerate_covers(I: Sequence[Elem], J: Sequence[Elem]) -> List[Cover]:
    """All J-covers of I: each ``i`` picks the nonempty set of parts containing it."""
    I, J = tuple(I), tuple(J)
    choices = [frozenset(c) for r in range(1, len(J) + 1) for c in itertools.combinations(J, r)]
    out = []
    for pick in itertools.product(choices, repeat=len(I)):
        parts = tuple(frozenset(i for i, c in zip(I, pick) if j in c) for j in J)
        out.append(Cover(I, J, parts))
    return out


def cover_masks(a: int, b: int) -> np.ndarray:
    """All covers of ``range(a)`` by ``range(b)`` as an ``(N, b)`` array of bitmasks over the source.

    Row order matches :func:`enumerate_covers` on the same sets.
    """
    choices = [sum(1 << j for j in c) for r in range(1, b + 1) for c in itertools.combinations(range(b), r)]
    rows = []
    for pick in itertools.product(choices, repeat=a):
        rows.append([sum(1 << i for i, c in enumerate(pick) if c >> j & 1) for j in range(b)])
    return np.array(rows, dtype=np.int64).reshape(len(rows), b)


def to_masks(S: Cover) -> List[int]:
    """Parts of ``S`` as bitmasks over the positions of ``S.source``."""
    pos = {i: n for n, i in enumerate(S.source)}
    return [sum(1 << pos[i] for i in p) for p in S.parts]


def union_table(masks: np.ndarray) -> np.ndarray:
    """``table[..., A] = OR of masks[..., j] over j in A`` for every subset ``A`` of the parts."""
    b = masks.shape[-1]
    table = np.zeros(masks.shape[:-1] + (1 << b,), dtype=np.int64)
    for A in range(1, 1 << b):
        low = A & -A
        table[..., A] = table[..., A ^ low] | masks[..., low.bit_length() - 1]
    return table


def compose_masks(T: np.ndarray, S: np.ndarray) -> np.ndarray:
    """Mask form of ``T o S``; ``T`` has shape ``(..., K)`` over J, ``S`` shape ``(J,)`` over I."""
    return union_table(S)[T]


def canonical_factorization(S: Cover) -> Tuple[Cover, Cover]:
    """Split ``S`` as a splitting cover followed by a function.

    The middle set is the disjoint union of the parts, elements ``(j, i)``
    with ``i in S_j``; the splitting has parts ``{i}`` and the function
    sends ``(j, i)`` to ``j``.
    """
    middle = tuple((j, i) for j, p in zip(S.target, S.parts) for i in _sorted(p))
    split = Cover(S.source, middle, tuple(frozenset([i]) for _, i in middle))
    func = from_function({m: m[0] for m in middle}, S.target)
    return split, func


def minimal_factorizations(S: Cover, max_middle: Optional[int] = None) -> List[Counter]:
    """Brute-force search for factorizations (splitting, then function) of ``S``.

    A factorization through a middle set M is determined up to relabeling of
    M by the multiset of pairs ``(source element, target element)`` that the
    middle elements carry.  Every multiset over ``I x J`` of size at most
    ``max_middle`` (default: the size of the canonical middle set) is tried;
    the ones that recompose to ``S`` are returned.
    """
    pairs = [(i, j) for i in S.source for j in S.target]
    if max_middle is None:
        max_middle = sum(len(p) for p in S.parts)
    Sd = {j: set(p) for j, p in S.as_dict().items()}
    found = []
    for m in range(0, max_middle + 1):
        for combo in itertools.combinations_with_replacement(range(len(pairs)), m):
            got: Dict[Elem, set] = {j: set() for j in S.target}
            covered = set()
            for c in combo:
                i, j = pairs[c]
                got[j].add(i)
                covered.add(i)
            if covered == set(S.source) and got == Sd:
                found.append(Counter(pairs[c] for c in combo))
    return found


# ---------------------------------------------------------------------------
# cardinality functors and their tensor products


@dataclass(frozen=True)
class CardinalityFunctor:
    """Reduced functor on finite sets whose value depends only on cardinality.

    ``values[k]`` for ``1 <= k <= truncation``; missing values are zero.
    """

    values: Mapping[int, GradedVectorSpace] = field(default_factory=dict)
    truncation: int = 1
    name: str = "F"

    def __post_init__(self):
        for k in self.values:
            if k < 1:
                raise ValueError("reduced functors have no value at 0")
            if k > self.truncation:
                raise ValueError(f"value at {k} beyond truncation {self.truncation}")

    def __call__(self, k: int) -> GradedVectorSpace:
        if k < 1:
            return GradedVectorSpace()
        if k > self.truncation:
            raise ValueError(f"{self.name} is truncated at {self.truncation}, asked for {k}")
        return self.values.get(k, GradedVectorSpace())

    @classmethod
    def diagonal(cls, space: GradedVectorSpace, truncation: int, name: str = "F") -> "CardinalityFunctor":
        """Supported on the diagonal: ``F(1) = space``, zero elsewhere."""
        return cls({1: space}, truncation, name)

    @classmethod
    def zero(cls, truncation: int, name: str = "0") -> "CardinalityFunctor":
        return cls({}, truncation, name)

    def is_zero(self) -> bool:
        return all(not v.basis for v in self.values.values())


@dataclass(frozen=True)
class Summand:
    """``F_1(|S_1|) (x) ... (x) F_j(|S_j|)`` labelled by ``subsets``."""

    subsets: Tuple[frozenset, ...]
    factors: Tuple[GradedVectorSpace, ...]

    def basis(self) -> List[Tuple[BasisElement, ...]]:
        return list(itertools.product(*(f.basis for f in self.factors)))

    @property
    def dim(self) -> int:
        return math.prod(f.dim for f in self.factors)


def _subset_label(s: frozenset) -> str:
    return "{" + ",".join(str(x) for x in _sorted(s)) + "}"


@dataclass(frozen=True)
class LabeledSum:
    """A direct sum of labelled tensor summands, evaluated at a finite set."""

    at: Tuple[Elem, ...]
    summands: Tuple[Summand, ...]

    def basis(self) -> List[Tuple[int, Tuple[BasisElement, ...]]]:
        return [(s, b) for s, sm in enumerate(self.summands) for b in sm.basis()]

    @property
    def dim(self) -> int:
        return sum(sm.dim for sm in self.summands)

    def index(self) -> Dict[Tuple[Tuple[frozenset, ...], Tuple[str, ...]], int]:
        """``(subsets, basis labels) -> position`` in :meth:`basis` order."""
        out = {}
        for pos, (s, b) in enumerate(self.basis()):
            out[(self.summands[s].subsets, tuple(x.label for x in b))] = pos
        return out

    @property
    def space(self) -> GradedVectorSpace:
        k = len(self.at)
        out = []
        for s, b in self.basis():
            sm = self.summands[s]
            lab = "|".join(_subset_label(p) for p in sm.subsets) + ":" + "⊗".join(x.label for x in b)
            out.append(BasisElement(lab, sum(x.degree for x in b), k))
        return GradedVectorSpace(tuple(out))

    def dims(self) -> Dict[int, int]:
        """``degree -> dimension``."""
        return dict(Counter(sum(x.degree for x in b) for _, b in self.basis()))

    def labels(self) -> List[Tuple[frozenset, ...]]:
        return [sm.subsets for sm in self.summands if sm.dim]


def _ordered_pieces(S: Tuple[Elem, ...], j: int, mode: str) -> Iterable[Tuple[frozenset, ...]]:
    """Ordered j-tuples of nonempty subsets of S: partitions (disjoint) or covers (overlap)."""
    if mode == "disjoint":
        for f in itertools.product(range(j), repeat=len(S)):
            parts = tuple(frozenset(x for x, t in zip(S, f) if t == u) for u in range(j))
            if all(parts):
                yield parts
    elif mode == "overlap":
        nonempty = [frozenset(c) for r in range(1, len(S) + 1) for c in itertools.combinations(S, r)]
        full = frozenset(S)
        for parts in itertools.product(nonempty, repeat=j):
            if frozenset().union(*parts) == full:
                yield parts
    else:
        raise ValueError(f"mode must be 'disjoint' or 'overlap', got {mode!r}")


def _as_set(k: Union[int, Sequence[Elem]]) -> Tuple[Elem, ...]:
    return tuple(range(1, k + 1)) if isinstance(k, int) else tuple(k)


def tensor_power(functors: Sequence[CardinalityFunctor], k: Union[int, Sequence[Elem]], mode: str) -> LabeledSum:
    """Direct J-ary convolution ``F_1 (x) ... (x) F_j`` evaluated at ``[k]``."""
    S = _as_set(k)
    j = len(functors)
    out = []
    if j == 0:
        raise ValueError("need at least one functor")
    if not S:
        return LabeledSum(S, ())
    for parts in _ordered_pieces(S, j, mode):
        factors = tuple(F(len(p)) for F, p in zip(functors, parts))
        out.append(Summand(parts, factors))
    return LabeledSum(S, tuple(out))


def tensor_disjoint(F: CardinalityFunctor, G: CardinalityFunctor, k: Union[int, Sequence[Elem]]) -> LabeledSum:
    """``(F (x)_disjoint G)(k)``: sum over ordered partitions ``I_1 + I_2 = [k]``."""
    return tensor_power([F, G], k, "disjoint")


def tensor_overlap(F: CardinalityFunctor, G: CardinalityFunctor, k: Union[int, Sequence[Elem]]) -> LabeledSum:
    """``(F (x)_overlap G)(k)``: sum over ordered covers ``S_1 u S_2 = [k]``."""
    return tensor_power([F, G], k, "overlap")


def iterated_tensor(functors: Sequence[CardinalityFunctor], k: Union[int, Sequence[Elem]], mode: str) -> LabeledSum:
    """Left-nested binary convolution ``((F_1 (x) F_2) (x) F_3) ...``.

    Evaluated recursively on subsets, with the nested labels flattened; must
    agree with :func:`tensor_power` summand by summand.
    """
    S = _as_set(k)

    def ev(n: int, T: Tuple[Elem, ...]) -> List[Summand]:
        if n == 1:
            return [Summand((frozenset(T),), (functors[0](len(T)),))]
        out = []
        for left, right in _ordered_pieces(T, 2, mode):
            for sm in ev(n - 1, _sorted(left)):
                out.append(Summand(sm.subsets + (right,), sm.factors + (functors[n - 1](len(right)),)))
        return out

    if not S:
        return LabeledSum(S, ())
    return LabeledSum(S, tuple(ev(len(functors), S)))


def _koszul(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of moving factor ``t`` to position ``perm[t]``."""
    s = 1
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b] and degrees[a] % 2 and degrees[b] % 2:
                s = -s
    return s


def sym_power(F: CardinalityFunctor, j: int, k: Union[int, Sequence[Elem]], mode: str) -> GradedVectorSpace:
    """Symmetric-group coinvariants of the j-fold tensor power of ``F`` at ``[k]``.

    ``Sigma_j`` permutes tensor positions together with their subset labels,
    with Koszul signs.  Dimensions come from the rank of the averaging
    projector, degree by degree; the basis returned is labelled by
    representative tensors (pivot columns of the projector).
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    power = tensor_power([F] * j, k, mode)
    basis = power.basis()
    idx = power.index()
    perms = list(itertools.permutations(range(j)))
    by_deg: Dict[int, List[int]] = defaultdict(list)
    for pos, (_, b) in enumerate(basis):
        by_deg[sum(x.degree for x in b)].append(pos)
    out: List[BasisElement] = []
    nk = len(power.at)
    scale = Fraction(1, math.factorial(j))
    for deg in sorted(by_deg):
        cols = by_deg[deg]
        local = {p: c for c, p in enumerate(cols)}
        ent: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
        for c, pos in enumerate(cols):
            s, b = basis[pos]
            subsets = power.summands[s].subsets
            degs = [x.degree for x in b]
            for perm in perms:
                new_sub = [None] * j
                new_b = [None] * j
                for t in range(j):
                    new_sub[perm[t]] = subsets[t]
                    new_b[perm[t]] = b[t]
                tgt = idx[(tuple(new_sub), tuple(x.label for x in new_b))]
                ent[(local[tgt], c)] += _koszul(perm, degs) * scale
        P = SparseMatrix(len(cols), len(cols), ent)
        r = projector_rank(P)
        reps = pivot_columns(P)
        assert len(reps) == r
        for c in reps:
            s, b = basis[cols[c]]
            sm = power.summands[s]
            lab = "|".join(_subset_label(p) for p in sm.subsets) + ":" + "⊗".join(x.label for x in b)
            out.append(BasisElement(lab, deg, nk))
    return GradedVectorSpace(tuple(out))


def nilpotence_check(functors: Sequence[CardinalityFunctor], r: int) -> bool:
    """True iff the disjoint tensor product of ``functors`` vanishes at every ``k <= r``."""
    for F in functors:
        if F.truncation < r:
            raise ValueError(f"{F.name} is truncated below {r}")
    return all(tensor_power(list(functors), k, "disjoint").dim == 0 for k in range(1, r + 1))


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class LinearMap:
    source: LabeledSum
    target: LabeledSum
    matrix: SparseMatrix

    def is_surjective(self) -> bool:
        return rank(self.matrix) == self.target.dim


def lax_projection(F: CardinalityFunctor, G: CardinalityFunctor, k: Union[int, Sequence[Elem]]) -> LinearMap:
    """Overlapping -> disjoint: keep the summands whose cover is a partition."""
    src = tensor_overlap(F, G, k)
    tgt = tensor_disjoint(F, G, k)
    tidx = tgt.index()
    ent = {}
    for col, (s, b) in enumerate(src.basis()):
        key = (src.summands[s].subsets, tuple(x.label for x in b))
        row = tidx.get(key)
        if row is not None:
            ent[(row, col)] = 1
    return LinearMap(src, tgt, SparseMatrix(tgt.dim, src.dim, ent))


def tensor_map(phi: Mapping[int, SparseMatrix], F: CardinalityFunctor, F2: CardinalityFunctor,
               psi: Mapping[int, SparseMatrix], G: CardinalityFunctor, G2: CardinalityFunctor,
               k: Union[int, Sequence[Elem]], mode: str) -> LinearMap:
    """``phi (x) psi`` on the convolution at ``[k]``.

    ``phi[m]`` is the matrix of ``F(m) -> F2(m)`` (columns index ``F(m)``).
    """
    src = tensor_power([F, G], k, mode)
    tgt = tensor_power([F2, G2], k, mode)
    tidx = tgt.index()
    ent: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for col, (s, (x, y)) in enumerate(src.basis()):
        S1, S2 = src.summands[s].subsets
        m1, m2 = len(S1), len(S2)
        A, B = phi.get(m1), psi.get(m2)
        if A is None or B is None:
            continue
        ix = F(m1).index(x.label)
        iy = G(m2).index(y.label)
        for (r1, c1), a in A.items():
            if c1 != ix:
                continue
            for (r2, c2), bb in B.items():
                if c2 != iy:
                    continue
                key = ((S1, S2), (F2(m1).basis[r1].label, G2(m2).basis[r2].label))
                ent[(tidx[key], col)] += a * bb
    return LinearMap(src, tgt, SparseMatrix(tgt.dim, src.dim, ent))


# ---------------------------------------------------------------------------
# closed-form expectations used by the verification suites


def graded_vanish_expected(F1: GradedVectorSpace, j: int, k: int) -> Dict[int, int]:
    """``Sym^J_disjoint(F)(I)`` for diagonal ``F``: ``F(1)^{(x) k}`` if ``j == k`` else 0."""
    if j != k:
        return {}
    acc = Counter({0: 1})
    for _ in range(k):
        nxt: Counter = Counter()
        for d, c in acc.items():
            for b in F1.basis:
                nxt[d + b.degree] += c
        acc = nxt
    return {d: c for d, c in acc.items() if c}


def star_sym_expected(F1: GradedVectorSpace, j: int, k: int) -> Dict[int, int]:
    """``sum over k_1+..+k_k = j (k_i >= 1) of (x)_i Sym^{k_i}(F(1))``, by degree."""
    gens = GradedVectorSpace(tuple(BasisElement(b.label, b.degree, 1) for b in F1.basis))
    series = sym_series(gens, j)
    sym = {m: series.weight_part(m) for m in range(j + 1)}
    total: Counter = Counter()
    for comp in _compositions(j, k):
        acc = Counter({0: 1})
        for m in comp:
            nxt: Counter = Counter()
            for d, c in acc.items():
                for dd, cc in sym[m].items():
                    nxt[d + dd] += c * cc
            acc = nxt
        total.update(acc)
    return {d: c for d, c in total.items() if c}


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
