"""Rational homology of configuration spaces.

Unordered configurations: ``H_*(B_k(M); Q)`` is the weight-``k`` part of the
CE homology of ``Hc^{-*}(M) (x) FreeLie(x)``, ``|x| = n - 1``, for orientable
``M`` with a formal compactly supported cochain model.  No global degree
shift is applied; with these conventions ``B_k(R^2)`` lands in degrees 0 and
1 and ``B_2(R^n) ~ RP^{n-1}`` comes out right.

Ordered configurations of R^n: brute-force quotient of the algebra on
classes ``w_ij`` by antisymmetry, square-zero and the three-term relation,
checked against the product formula ``prod_{i<k} (1 + i t^{n-1})``.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .ce import ce_complex
from .exactla import SparseMatrix, rank
from .graded import BasisElement, GradedVectorSpace, PoincareSeries, homology
from .lie import Cdga, GradedLieAlgebra, free_lie, tensor_cdga_lie, validate_cdga

__all__ = [
    "ManifoldDescriptor",
    "BettiTable",
    "DescriptorError",
    "NonOrientable",
    "NonFormalModel",
    "conf_lie",
    "betti_unordered",
    "arnold_dims",
    "ordered_series_oracle",
    "load_descriptor",
    "loads_descriptor",
    "dumps_descriptor",
    "builtin_descriptor",
    "builtin_names",
    "euclidean",
]


class DescriptorError(ValueError):
    """Malformed or invalid manifold descriptor; ``problems`` lists every issue."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NonOrientable(DescriptorError):
    pass


class NonFormalModel(DescriptorError):
    pass


@dataclass
class ManifoldDescriptor:
    """Compactly supported cohomology ring of an ``n``-manifold.

    ``hc_basis`` lists ``(label, cohomological degree)``; ``cup`` maps label
    pairs to linear combinations.  ``unit`` names the class of the constant
    function when ``M`` is compact.
    """

    name: str
    n: int
    hc_basis: List[Tuple[str, int]]
    cup: Dict[Tuple[str, str], Dict[str, Fraction]] = field(default_factory=dict)
    orientable: bool = True
    unit: Optional[str] = None
    differential: Dict[str, Dict[str, Fraction]] = field(default_factory=dict)

    def problems(self) -> List[str]:
        out = []
        if self.n < 1:
            out.append(f"dimension n must be >= 1, got {self.n}")
        labels = [l for l, _ in self.hc_basis]
        if len(set(labels)) != len(labels):
            out.append("duplicate class labels")
        for l, d in self.hc_basis:
            if not 0 <= d <= max(self.n, 0):
                out.append(f"class {l!r} has degree {d} outside [0, {self.n}]")
        known = set(labels)
        for (a, b), v in self.cup.items():
            for lab in (a, b, *v):
                if lab not in known:
                    out.append(f"cup table mentions unknown class {lab!r}")
        if self.unit is not None and self.unit not in known:
            out.append(f"unit {self.unit!r} is not a class")
        if out:
            return out
        try:
            bad = validate_cdga(self.cdga())
        except (KeyError, ValueError) as e:
            return [str(e)]
        out.extend(f"cup product: {v}" for v in bad)
        return out

    def cdga(self) -> Cdga:
        """``Hc^{-*}(M)``: degrees negated, weight 0."""
        sp = GradedVectorSpace(tuple(BasisElement(l, -d, 0) for l, d in self.hc_basis))
        return Cdga(sp, self.cup, self.unit, self.differential, name=f"Hc({self.name})")

    def relabeled(self, mapping: Mapping[str, str], name: Optional[str] = None) -> "ManifoldDescriptor":
        m = lambda l: mapping.get(l, l)  # noqa: E731
        return ManifoldDescriptor(
            name or self.name, self.n,
            [(m(l), d) for l, d in self.hc_basis],
            {(m(a), m(b)): {m(k): c for k, c in v.items()} for (a, b), v in self.cup.items()},
            self.orientable,
            None if self.unit is None else m(self.unit),
            {m(a): {m(k): c for k, c in v.items()} for a, v in self.differential.items()},
        )


@dataclass
class BettiTable:
    """``(k, degree) -> dim H_degree(B_k(M); Q)``, zero entries omitted."""

    table: Dict[Tuple[int, int], int]
    max_k: int
    name: str = ""

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.table.get(key, 0)

    def row(self, k: int) -> Dict[int, int]:
        return {d: b for (kk, d), b in sorted(self.table.items()) if kk == k}

    def series(self) -> PoincareSeries:
        return PoincareSeries({(d, k): b for (k, d), b in self.table.items()}, self.max_k)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["k", "degree", "betti"])
        for (k, d), b in sorted(self.table.items()):
            wr.writerow([k, d, b])
        return buf.getvalue()

    def polynomial(self, k: int) -> str:
        terms = []
        for d, b in self.row(k).items():
            if d == 0:
                terms.append(str(b))
            else:
                terms.append(f"t^{d}" if b == 1 else f"{b}*t^{d}")
        return " + ".join(terms) if terms else "0"

    def to_text(self) -> str:
        return "".join(f"k={k}: {self.polynomial(k)}\n" for k in range(1, self.max_k + 1))


def _check(M: ManifoldDescriptor) -> None:
    if M.n < 1:
        raise DescriptorError([f"dimension n must be >= 1, got {M.n}"])
    if not M.orientable:
        raise NonOrientable([f"{M.name}: non-orientable manifolds are not supported"])
    if any(M.differential.values()):
        raise NonFormalModel([f"{M.name}: only formal models (zero differential) are supported"])
    bad = M.problems()
    if bad:
        raise DescriptorError(bad)


def conf_lie(M: ManifoldDescriptor, max_k: int) -> GradedLieAlgebra:
    """``Hc^{-*}(M) (x) FreeLie(x)`` with ``x`` in degree ``n-1``, weight 1."""
    _check(M)
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    x = GradedVectorSpace.from_triples([("x", M.n - 1, 1)])
    L = free_lie(x, max_k)
    return tensor_cdga_lie(M.cdga(), L, max_k)


def betti_unordered(M: ManifoldDescriptor, max_k: int) -> BettiTable:
    """Rational Betti numbers of ``B_k(M)`` for ``1 <= k <= max_k``."""
    L = conf_lie(M, max_k)
    betti = homology(ce_complex(L, max_k, check=False))
    return BettiTable({(w, d): b for (w, d), b in betti.items() if w >= 1}, max_k, M.name)


# ---------------------------------------------------------------------------
# ordered configurations of R^n


def ordered_series_oracle(k: int, n: int) -> PoincareSeries:
    """Coefficients of ``prod_{i=1}^{k-1} (1 + i t^{n-1})`` (weight 0)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    poly = {0: 1}
    for i in range(1, k):
        nxt: Dict[int, int] = {}
        for d, c in poly.items():
            nxt[d] = nxt.get(d, 0) + c
            nxt[d + n - 1] = nxt.get(d + n - 1, 0) + i * c
        poly = nxt
    return PoincareSeries({(d, 0): c for d, c in poly.items()}, 0)


def arnold_dims(k: int, n: int, max_degree: Optional[int] = None,
                swap_sign: Optional[int] = None) -> Dict[int, int]:
    """Degreewise dimensions of ``H^*(Conf_k(R^n))`` from its presentation.

    Monomials in the classes ``w_ij`` (``i < j``, degree ``n-1``) modulo
    ``w_ji = swap_sign * w_ij``, ``w_ij^2 = 0`` and
    ``w_ij w_jk + w_ki w_ij + w_jk w_ki = 0``; the quotient is computed degree
    by degree with exact ranks.  By default degrees through ``k(n-1)`` are
    reported (one monomial length past the top class).

    ``swap_sign`` defaults to ``(-1)^n``, the degree of the antipodal map on
    ``S^{n-1}`` (swapping i and j composes the Gauss map with it).  Passing
    ``(-1)^(n-1)`` instead over-constrains the quotient from ``k = 4`` on.
    """
    if k < 1 or n < 2:
        raise ValueError("need k >= 1 and n >= 2")
    g = n - 1
    odd = g % 2 == 1
    if swap_sign is None:
        swap_sign = (-1) ** n
    if swap_sign not in (1, -1):
        raise ValueError("swap_sign must be +1 or -1")
    pairs = list(itertools.combinations(range(k), 2))
    gen = {p: i for i, p in enumerate(pairs)}
    max_len = k if max_degree is None else max_degree // g

    def omega(i: int, j: int) -> Tuple[int, int]:
        """(sign, generator index) of w_ij."""
        if i < j:
            return 1, gen[(i, j)]
        return swap_sign, gen[(j, i)]

    def canon(factors: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
        if len(set(factors)) != len(factors):
            return 0, ()
        sign = 1
        if odd:
            f = list(factors)
            for a in range(len(f)):
                for b in range(a + 1, len(f)):
                    if f[a] > f[b]:
                        sign = -sign
        return sign, tuple(sorted(factors))

    relations: List[List[Tuple[int, Tuple[int, int]]]] = []
    for i, j, l in itertools.permutations(range(k), 3):
        terms = []
        for (a, b), (c, d) in (((i, j), (j, l)), ((l, i), (i, j)), ((j, l), (l, i))):
            s1, g1 = omega(a, b)
            s2, g2 = omega(c, d)
            terms.append((s1 * s2, (g1, g2)))
        relations.append(terms)

    out: Dict[int, int] = {}
    for m in range(0, min(max_len, len(pairs)) + 1):
        monos = list(itertools.combinations(range(len(pairs)), m))
        col = {mono: c for c, mono in enumerate(monos)}
        rows = set()
        if m >= 2:
            for rel in relations:
                for mu in itertools.combinations(range(len(pairs)), m - 2):
                    row: Dict[int, int] = {}
                    for s, (g1, g2) in rel:
                        sg, key = canon((g1, g2) + mu)
                        if sg:
                            c = col[key]
                            row[c] = row.get(c, 0) + s * sg
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        items = tuple(sorted(row.items()))
                        if items[0][1] < 0:
                            items = tuple((c, -v) for c, v in items)
                        rows.add(items)
        rows_l = sorted(rows)
        mat = SparseMatrix(len(rows_l), len(monos), {(r, c): v for r, items in enumerate(rows_l) for c, v in items})
        dim = len(monos) - rank(mat)
        out[m * g] = dim
    return {d: c for d, c in out.items() if max_degree is None or d <= max_degree}


# ---------------------------------------------------------------------------
# descriptor files


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def dumps_descriptor(M: ManifoldDescriptor) -> str:
    """Plain-text descriptor: ``key = value`` header, then ``[classes]``,
    ``[cup]`` and ``[differential]`` tables."""
    lines = ["# lieconf manifold v1", f"name = {M.name}", f"n = {M.n}",
             f"orientable = {'true' if M.orientable else 'false'}"]
    if M.unit is not None:
        lines.append(f"unit = {M.unit}")
    lines.append("[classes]")
    lines.extend(f"{l} {d}" for l, d in M.hc_basis)
    lines.append("[cup]")
    for (a, b), v in M.cup.items():
        lines.append(f"{a} {b} = " + " ".join(f"{_fmt(Fraction(c))} {k}" for k, c in v.items()))
    lines.append("[differential]")
    for a, v in M.differential.items():
        lines.append(f"{a} = " + " ".join(f"{_fmt(Fraction(c))} {k}" for k, c in v.items()))
    return "\n".join(lines) + "\n"


def loads_descriptor(text: str) -> ManifoldDescriptor:
    problems: List[str] = []
    meta: Dict[str, str] = {}
    classes: List[Tuple[str, int]] = []
    cup: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
    diff: Dict[str, Dict[str, Fraction]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("[classes]", "[cup]", "[differential]"):
            section = line[1:-1]
            continue
        if line.startswith("["):
            problems.append(f"line {lineno}: unknown section {line}")
            continue
        if section is None:
            if "=" not in line:
                problems.append(f"line {lineno}: expected 'key = value'")
                continue
            k, v = (s.strip() for s in line.split("=", 1))
            meta[k] = v
        elif section == "classes":
            parts = line.split()
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                problems.append(f"line {lineno}: class lines are 'label degree'")
                continue
            classes.append((parts[0], int(parts[1])))
        else:
            if "=" not in line:
                problems.append(f"line {lineno}: missing '='")
                continue
            lhs, rhs = line.split("=", 1)
            lhs, rhs = lhs.split(), rhs.split()
            want = 2 if section == "cup" else 1
            if len(lhs) != want or len(rhs) % 2:
                problems.append(f"line {lineno}: malformed {section} entry")
                continue
            comb: Dict[str, Fraction] = {}
            try:
                for c, lab in zip(rhs[::2], rhs[1::2]):
                    comb[lab] = comb.get(lab, Fraction(0)) + Fraction(c)
            except (ValueError, ZeroDivisionError):
                problems.append(f"line {lineno}: bad coefficient")
                continue
            if section == "cup":
                cup[(lhs[0], lhs[1])] = comb
            else:
                diff[lhs[0]] = comb
    for key in ("name", "n"):
        if key not in meta:
            problems.append(f"missing header key {key!r}")
    n = 0
    if "n" in meta:
        try:
            n = int(meta["n"])
        except ValueError:
            problems.append(f"n must be an integer, got {meta['n']!r}")
    orient = meta.get("orientable", "true").lower()
    if orient not in ("true", "false"):
        problems.append(f"orientable must be true or false, got {orient!r}")
    if problems:
        raise DescriptorError(problems)
    M = ManifoldDescriptor(meta["name"], n, classes, cup, orient == "true", meta.get("unit"), diff)
    bad = M.problems()
    if bad:
        raise DescriptorError(bad)
    return M


def load_descriptor(path: Union[str, Path]) -> ManifoldDescriptor:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise DescriptorError([f"cannot read {p}: {e.strerror or e}"]) from e
    return loads_descriptor(text)


def builtin_names() -> List[str]:
    root = resources.files("lieconf") / "data" / "manifolds"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".desc"))


def builtin_descriptor(name: str) -> ManifoldDescriptor:
    root = resources.files("lieconf") / "data" / "manifolds"
    f = root / f"{name}.desc"
    if not f.is_file():
        raise DescriptorError([f"no builtin manifold {name!r}; have {', '.join(builtin_names())}"])
    return loads_descriptor(f.read_text(encoding="utf-8"))


def euclidean(n: int) -> ManifoldDescriptor:
    """R^n: one compactly supported class in degree n, squaring to zero."""
    return ManifoldDescriptor(f"R{n}", n, [("e", n)], {}, True, None, {})
