"""Batch command-line front end.

Exit codes: 0 success, 1 property failure, 2 input error (nothing written),
3 PBW consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .ce import betti_csv, ce_homology
from .confspace import (DescriptorError, arnold_dims, betti_unordered, builtin_descriptor, builtin_names,
                        load_descriptor, ordered_series_oracle)
from .envelope import free_en_series, pbw_check, u_n_underlying
from .graded import GradedVectorSpace, PoincareSeries
from .lie import GradedLieAlgebra, InvalidAlgebra, LieFormatError, abelian, dumps_lie, free_lie, loads_lie, sl2
from .ranconv import Cover, TargetSourceMismatch, compose, enumerate_covers
from .verify import format_checks, run_suite

SCHEMA = "lieconf/{}/v1"

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_PBW = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


# ---------------------------------------------------------------------------
# input resolution


def resolve_manifold(arg: str):
    p = Path(arg)
    if p.suffix == ".desc" and not p.exists() and arg[:-5] in builtin_names():
        return builtin_descriptor(arg[:-5])
    if p.exists():
        return load_descriptor(p)
    if arg in builtin_names():
        return builtin_descriptor(arg)
    raise InputError(f"manifold {arg!r}: no such file or builtin (builtins: {', '.join(builtin_names())})")


def parse_generators(text: str) -> GradedVectorSpace:
    """``"x:0,y:1"`` -> weight-1 generators with the given degrees."""
    out = []
    for item in text.split(","):
        name, _, deg = item.strip().partition(":")
        try:
            out.append((name, int(deg), 1))
        except ValueError:
            raise InputError(f"bad generator {item!r}; expected label:degree") from None
    try:
        return GradedVectorSpace.from_triples(out)
    except ValueError as e:
        raise InputError(str(e)) from None


def resolve_lie(arg: str, max_weight: int) -> GradedLieAlgebra:
    """Builtins ``abelian:d``, ``sl2``, ``freelie:deg:gens``; anything else is a file."""
    parts = arg.split(":")
    try:
        if parts[0] == "abelian" and len(parts) == 2:
            return abelian(GradedVectorSpace.from_triples([("x", int(parts[1]), 1)]), arg)
        if arg == "sl2":
            return sl2()
        if parts[0] == "freelie" and len(parts) == 3:
            d, g = int(parts[1]), int(parts[2])
            if g < 1:
                raise InputError("freelie needs at least one generator")
            gens = [(f"x{i}" if g > 1 else "x", d, 1) for i in range(g)]
            return free_lie(GradedVectorSpace.from_triples(gens), max_weight)
    except ValueError:
        raise InputError(f"bad builtin Lie algebra arg {arg!r}") from None
    p = Path(arg)
    if not p.is_file():
        raise InputError(f"Lie algebra {arg!r}: not a builtin (abelian:d, sl2, freelie:deg:gens) or a file")
    try:
        return loads_lie(p.read_text(encoding="utf-8"))
    except (LieFormatError, ValueError) as e:
        raise InputError(f"{arg}: {e}") from None


def _series_rows(s: PoincareSeries) -> List[Tuple[int, int, int]]:
    """``(weight, degree, dim)`` rows."""
    return sorted((w, d, c) for (d, w), c in s.coefficients.items())


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _json(kind: str, payload: Dict) -> str:
    return json.dumps({"schema": SCHEMA.format(kind), **payload}, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands; each returns (exit code, main output, extra stdout)


def cmd_conf_betti(a) -> Tuple[int, str, str]:
    M = resolve_manifold(a.manifold)
    t = betti_unordered(M, a.max_k)
    if a.format == "csv":
        body = t.to_csv()
    elif a.format == "json":
        body = _json("conf-betti", {"manifold": M.name, "n": M.n, "max_k": a.max_k,
                                    "betti": [[k, d, b] for (k, d), b in sorted(t.table.items())]})
    else:
        body = t.to_text()
    return EXIT_OK, body, t.to_text() if a.out else ""


def cmd_conf_ordered(a) -> Tuple[int, str, str]:
    if a.n is None or a.n < 2:
        raise InputError("conf ordered needs --n >= 2")
    rows, ok = [], True
    for k in range(1, a.max_k + 1):
        got = {d: c for d, c in arnold_dims(k, a.n).items() if c}
        want = {d: c for (d, _), c in ordered_series_oracle(k, a.n).coefficients.items()}
        ok &= got == want
        rows += [(k, d, c, want.get(d, 0)) for d, c in sorted(got.items())]
    if a.format == "csv":
        body = _csv(("k", "degree", "betti", "oracle"), rows)
    elif a.format == "json":
        body = _json("conf-ordered", {"n": a.n, "max_k": a.max_k, "betti": [list(r) for r in rows], "match": ok})
    else:
        body = "".join(f"k={k} degree={d}: {c} (oracle {o})\n" for k, d, c, o in rows)
        body += f"match: {ok}\n"
    return (EXIT_OK if ok else EXIT_PROPERTY), body, ""


def cmd_lie_free(a) -> Tuple[int, str, str]:
    if not a.generators:
        raise InputError("lie free needs --generators label:degree[,label:degree...]")
    L = free_lie(parse_generators(a.generators), a.max_weight)
    rows = _series_rows(L.space.series())
    if a.format == "csv":
        body = _csv(("weight", "degree", "dim"), rows)
    elif a.format == "json":
        body = _json("lie-free", {"generators": a.generators, "max_weight": a.max_weight,
                                  "dims": [list(r) for r in rows], "basis": list(L.labels)})
    else:
        body = dumps_lie(L)
    return EXIT_OK, body, ""


def cmd_ce_homology(a) -> Tuple[int, str, str]:
    L = resolve_lie(a.lie, a.max_weight)
    try:
        betti = ce_homology(L, a.max_weight)
    except InvalidAlgebra as e:
        raise InputError(str(e)) from None
    if a.format == "csv":
        body = betti_csv(betti)
    elif a.format == "json":
        body = _json("ce-homology", {"lie": a.lie, "max_weight": a.max_weight,
                                     "betti": [[w, d, b] for (w, d), b in sorted(betti.items()) if b]})
    else:
        lines = []
        for (w, d), b in sorted(betti.items()):
            if b:
                note = "  (trivial class)" if w == 0 else ""
                lines.append(f"weight={w} degree={d}: {b}{note}")
        body = "\n".join(lines) + "\n"
    return EXIT_OK, body, ""


def cmd_env_pbw(a) -> Tuple[int, str, str]:
    if a.n is None or a.n < 1:
        raise InputError("env pbw needs --n >= 1")
    L = resolve_lie(a.lie, a.max_weight)
    try:
        rep = pbw_check(L, a.n, a.max_weight)
    except InvalidAlgebra as e:
        raise InputError(str(e)) from None
    betti = _series_rows(u_n_underlying(L, a.n, a.max_weight).series) if rep.ok else []
    if a.format == "csv":
        body = _csv(("weight", "degree", "complex", "sym", "match"),
                    [(w, d, c, s, int(c == s)) for w, d, c, s in rep.rows])
    elif a.format == "json":
        body = _json("env-pbw", {"n": a.n, "max_weight": a.max_weight,
                                 "betti": [list(r) for r in betti], "pbw_match": rep.ok})
    else:
        body = "".join(f"weight={w} degree={d}: complex {c}, Sym {s} {'ok' if c == s else 'MISMATCH'}\n"
                       for w, d, c, s in rep.rows)
        body += f"pbw_match: {rep.ok}\n"
    return (EXIT_OK if rep.ok else EXIT_PBW), body, ""


def cmd_env_free_series(a) -> Tuple[int, str, str]:
    if a.n is None or a.n < 1:
        raise InputError("env free-series needs --n >= 1")
    V = parse_generators(a.generators or "v:0")
    s = free_en_series(V, a.n, a.max_weight)
    rows = _series_rows(s)
    if a.format == "csv":
        body = _csv(("weight", "degree", "dim"), rows)
    elif a.format == "json":
        body = _json("env-free-series", {"n": a.n, "max_weight": a.max_weight, "series": [list(r) for r in rows]})
    else:
        body = s.to_text() + "\n"
    return EXIT_OK, body, ""


def _elements(text: str) -> Tuple:
    if text.isdigit():
        return tuple(range(1, int(text) + 1))
    return tuple(x.strip() for x in text.split(",") if x.strip())


def cmd_cov_enum(a) -> Tuple[int, str, str]:
    I, J = _elements(a.source), _elements(a.target)
    covers = enumerate_covers(I, J)
    if a.format == "json":
        body = _json("cov-enum", {"source": list(I), "target": list(J), "count": len(covers),
                                  "covers": [json.loads(c.to_json()) for c in covers]})
    elif a.format == "csv":
        body = _csv(["index"] + [str(j) for j in J],
                    [[t] + [" ".join(str(i) for i in sorted(p, key=str)) for p in c.parts] for t, c in enumerate(covers)])
    else:
        body = f"{len(covers)} covers of {len(I)} elements by {len(J)} parts\n"
    return EXIT_OK, body, ""


def _load_cover(path: str) -> Cover:
    try:
        return Cover.from_json(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    except (ValueError, TypeError) as e:
        raise InputError(f"{path}: {e}") from None


def cmd_cov_compose(a) -> Tuple[int, str, str]:
    S, T = _load_cover(a.first), _load_cover(a.second)
    try:
        C = compose(T, S)
    except TargetSourceMismatch as e:
        raise InputError(str(e)) from None
    return EXIT_OK, C.to_json() + "\n", ""


def cmd_verify(a) -> Tuple[int, str, str]:
    try:
        checks = run_suite(a.suite, a.seed)
    except KeyError as e:
        raise InputError(e.args[0]) from None
    ok = all(c.passed for c in checks)
    if a.format == "json":
        body = _json("verify", {"suite": a.suite, "seed": a.seed, "passed": ok,
                                "checks": [[c.suite, c.name, c.instance, c.passed] for c in checks]})
    elif a.format == "csv":
        body = _csv(("suite", "check", "instance", "passed"),
                    [(c.suite, c.name, c.instance, int(c.passed)) for c in checks])
    else:
        body = format_checks(checks)
    return (EXIT_OK if ok else EXIT_PROPERTY), body, ""


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "text"), default="text")
    common.add_argument("--out", help="write the main output here instead of standard output")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="lieconf", description="Exact Lie, Chevalley-Eilenberg and configuration-space computations.")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, fn, **kw):
        q = group.add_parser(name, parents=[common], **kw)
        q.set_defaults(fn=fn)
        return q

    conf = top.add_parser("conf").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    q = sub(conf, "betti", cmd_conf_betti, help="Betti numbers of unordered configuration spaces")
    q.add_argument("--manifold", required=True, help="descriptor file or builtin name")
    q.add_argument("--max-k", "--max-weight", dest="max_k", type=_positive, required=True)
    q = sub(conf, "ordered", cmd_conf_ordered, help="ordered configurations of R^n from the Arnold presentation")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--max-k", "--max-weight", dest="max_k", type=_positive, required=True)

    lie = top.add_parser("lie").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    q = sub(lie, "free", cmd_lie_free, help="free graded Lie algebra")
    q.add_argument("--generators", help="label:degree[,label:degree...]")
    q.add_argument("--max-weight", "--max-k", dest="max_weight", type=_positive, required=True)

    ce = top.add_parser("ce").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    q = sub(ce, "homology", cmd_ce_homology, help="Chevalley-Eilenberg homology")
    q.add_argument("--lie", required=True)
    q.add_argument("--max-weight", "--max-k", dest="max_weight", type=_positive, required=True)

    env = top.add_parser("env").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    q = sub(env, "pbw", cmd_env_pbw, help="compare U_n(L) with Sym(L[1-n])")
    q.add_argument("--lie", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--max-weight", "--max-k", dest="max_weight", type=_positive, required=True)
    q = sub(env, "free-series", cmd_env_free_series, help="homology series of a free E_n-algebra")
    q.add_argument("--generators", help="label:degree[,...]; default one generator in degree 0")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--max-weight", "--max-k", dest="max_weight", type=_positive, required=True)

    cov = top.add_parser("cov").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    q = sub(cov, "enum", cmd_cov_enum, help="enumerate J-covers of I")
    q.add_argument("--source", required=True, help="size or comma list")
    q.add_argument("--target", required=True, help="size or comma list")
    q = sub(cov, "compose", cmd_cov_compose, help="compose two covers given as JSON files (second after first)")
    q.add_argument("first")
    q.add_argument("second")

    q = top.add_parser("verify", parents=[common], help="run property-verification suites")
    q.set_defaults(fn=cmd_verify)
    q.add_argument("--suite", default="all")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, body, extra = args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except DescriptorError as e:
        print("error: invalid manifold descriptor", file=sys.stderr)
        for prob in e.problems:
            print(f"  - {prob}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as e:   # --help
        return int(e.code or 0)
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        sys.stdout.write(extra)
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
