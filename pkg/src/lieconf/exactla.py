"""Exact sparse linear algebra over the rationals.

Entries are :class:`fractions.Fraction`, which is kept in lowest terms after
every operation.  Matrices are immutable; ``rank``, ``kernel_basis`` and
friends are pure functions.

Elimination uses a Markowitz-style pivot choice: the sparsest remaining row,
and within it the column with the fewest remaining entries.  That keeps
fill-in low on the relation matrices produced elsewhere in the package, where
most entries are +-1.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "Rational",
    "SparseMatrix",
    "NotIdempotent",
    "rank",
    "kernel_basis",
    "pivot_columns",
    "projector_rank",
    "as_rational",
]

Rational = Fraction


class NotIdempotent(ValueError):
    """Raised by :func:`projector_rank` when ``p @ p != p``."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class SparseMatrix:
    """Immutable sparse matrix with exact rational entries.

    ``entries`` maps ``(row, col)`` to a nonzero Fraction; zeros are dropped
    at construction.
    """

    __slots__ = ("_rows", "_cols", "_entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        clean: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            q = as_rational(v)
            if q:
                clean[(i, j)] = q
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_cols", cols)
        object.__setattr__(self, "_entries", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparseMatrix is immutable")

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged dense matrix")
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v != 0}
        return cls(nrows, ncols, ent)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                ent[(i, j)] = v
        return cls(nrows, len(columns), ent)

    # accessors
    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def entries(self) -> Mapping[Tuple[int, int], Fraction]:
        return dict(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(key)
        return self._entries.get((i, j), Fraction(0))

    def items(self) -> Iterator[Tuple[Tuple[int, int], Fraction]]:
        return iter(sorted(self._entries.items()))

    def is_zero(self) -> bool:
        return not self._entries

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self._cols for _ in range(self._rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [dict() for _ in range(self._rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    # arithmetic
    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self._cols, self._rows, {(j, i): v for (i, j), v in self._entries.items()})

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self._cols != other._rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, Dict[int, Fraction]] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, {})[j] = v
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, {}).items():
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return SparseMatrix(self._rows, other._cols, acc)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return SparseMatrix(self._rows, self._cols, acc)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        c = as_rational(c)
        return SparseMatrix(self._rows, self._cols, {k: c * v for k, v in self._entries.items()})

    def apply(self, v: Sequence[object]) -> Tuple[Fraction, ...]:
        """Matrix-vector product with a dense vector."""
        if len(v) != self._cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self._rows
        for (i, j), a in self._entries.items():
            x = v[j]
            if x:
                out[i] += a * x
        return tuple(out)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseMatrix":
        """Entry (i, j) moves to (row_perm[i], col_perm[j])."""
        return SparseMatrix(
            self._rows, self._cols,
            {(row_perm[i], col_perm[j]): v for (i, j), v in self._entries.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.shape, frozenset(self._entries.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"SparseMatrix({self._rows}, {self._cols}, nnz={len(self._entries)})"


def _eliminate(rows: Iterable[Mapping[int, Fraction]], keep: bool) -> List[Tuple[int, Dict[int, Fraction]]]:
    """Markowitz-pivoted forward elimination.

    Returns the list of ``(pivot column, pivot row)`` in pivot order.  Each
    pivot row is free of every earlier pivot column.  With ``keep=False`` the
    pivot rows are not retained (only their columns), which is all ``rank``
    needs.
    """
    work: Dict[int, Dict[int, Fraction]] = {}
    col_rows: Dict[int, set] = {}
    buckets: Dict[int, set] = {}
    for r, row in enumerate(rows):
        row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        work[r] = row
        buckets.setdefault(len(row), set()).add(r)
        for c in row:
            col_rows.setdefault(c, set()).add(r)

    def _move(r: int, old: int, new: int) -> None:
        b = buckets[old]
        b.discard(r)
        if not b:
            del buckets[old]
        if new:
            buckets.setdefault(new, set()).add(r)

    pivots: List[Tuple[int, Dict[int, Fraction]]] = []
    while buckets:
        size = min(buckets)
        # deterministic: smallest row id among the sparsest rows
        p = min(buckets[size])
        prow = work[p]
        c = min(prow, key=lambda col: (len(col_rows[col]), col))
        pv = prow[c]
        _move(p, size, 0)
        del work[p]
        for col in prow:
            col_rows[col].discard(p)
        for r in sorted(col_rows[c]):
            row = work[r]
            old = len(row)
            f = row[c] / pv
            for col, a in prow.items():
                nv = row.get(col, 0) - f * a
                if nv:
                    if col not in row:
                        col_rows.setdefault(col, set()).add(r)
                    row[col] = nv
                elif col in row:
                    del row[col]
                    col_rows[col].discard(r)
            if row:
                _move(r, old, len(row))
            else:
                _move(r, old, 0)
                del work[r]
        pivots.append((c, prow if keep else {}))
    return pivots


def rank(m: SparseMatrix) -> int:
    """Rank over Q."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    src = m if m.rows <= m.cols else m.transpose()
    return len(_eliminate(src.row_dicts(), keep=False))


def pivot_columns(m: SparseMatrix) -> List[int]:
    """Indices of a maximal linearly independent set of columns, sorted."""
    return sorted(c for c, _ in _eliminate(m.row_dicts(), keep=False))


def kernel_basis(m: SparseMatrix) -> List[Tuple[Fraction, ...]]:
    """Basis of the null space as dense column vectors.

    Every returned ``v`` satisfies ``m.apply(v) == 0`` exactly and there are
    ``m.cols - rank(m)`` of them.
    """
    pivots = _eliminate(m.row_dicts(), keep=True)
    pivot_cols = {c for c, _ in pivots}
    free = [j for j in range(m.cols) if j not in pivot_cols]
    basis = []
    for f in free:
        v: Dict[int, Fraction] = {f: Fraction(1)}
        for c, row in reversed(pivots):
            s = sum((a * v[col] for col, a in row.items() if col != c and col in v), Fraction(0))
            if s:
                v[c] = -s / row[c]
        basis.append(tuple(v.get(j, Fraction(0)) for j in range(m.cols)))
    return basis


def projector_rank(p: SparseMatrix) -> int:
    """Rank of an idempotent matrix (its image dimension).

    For a group-averaging projector this is the dimension of the
    coinvariants.  Raises :class:`NotIdempotent` unless ``p @ p == p``.
    """
    if p.rows != p.cols:
        raise NotIdempotent(f"projector must be square, got {p.shape}")
    if p @ p != p:
        raise NotIdempotent("p @ p != p")
    return rank(p)
