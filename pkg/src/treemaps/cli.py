"""Command-line front end: ``treemaps series | oracle | verify | substructure-count``.

Exit codes: 0 success, 1 verification mismatch, 2 violated precondition,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import checks
from .arrays.arrowed import (
    Delta,
    Gamma,
    Lambda,
    arrow_simplify,
    classify_columns,
    enumerate_substructure,
    gamma_is_full,
    is_admissible,
    is_irreducible,
    phi_reaches,
)
from .arrays.closed_forms import t_delta, t_delta_admissible, t_gamma, t_lambda
from .core import MapParameters
from .formula import HypothesisError, main_series
from .oracle import CapExceeded, face_distribution, paired_function_count_direct, pairing_count
from .polynomial import Polynomial

EXIT_OK, EXIT_MISMATCH, EXIT_PRECONDITION, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# JSON encoding of exact values


def poly_to_json(p: Polynomial) -> dict:
    return {"var": "x", "coeffs": {str(L): str(c) for L, c in sorted(p.to_dict().items())}}


def poly_from_json(obj: dict) -> Polynomial:
    if obj.get("var") != "x":
        raise ValueError("expected a polynomial in x")
    return Polynomial.from_dict({int(L): Fraction(c) for L, c in obj["coeffs"].items()})


def _jsonable(v):
    if isinstance(v, Polynomial):
        return poly_to_json(v)
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    if isinstance(v, bool) or v is None or isinstance(v, (str, float)):
        return v
    if isinstance(v, int):
        return str(v)
    return str(v)


# parameter parsing


def parse_ints(text: str | None) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def parse_s(text: str | None, n: int) -> dict[tuple[int, int], int]:
    """``s12,s13,...`` (upper triangle, row-major) or ``path:...`` / ``star:...`` / ``triangle:...``.

    ``path`` lists ``s_{i,i+1}``; ``star`` lists ``s_{i,n}`` with the last
    row as centre; ``triangle`` is the explicit form for three rows.
    """
    if not text:
        return {}
    if ":" in text:
        shape, values = text.split(":", 1)
        vals = parse_ints(values)
        if shape == "path":
            edges = checks.path_edges(n)
        elif shape == "star":
            edges = checks.star_edges(n)
        elif shape == "triangle":
            if n != 3:
                raise UsageError("triangle shape needs --n 3")
            edges = [(0, 1), (0, 2), (1, 2)]
        else:
            raise UsageError(f"unknown shape {shape!r} (path, star, triangle)")
        if len(vals) != len(edges):
            raise UsageError(f"{shape} on {n} rows needs {len(edges)} values, got {len(vals)}")
        return dict(zip(edges, vals))
    vals = parse_ints(text)
    pairs = [(i, k) for i in range(n) for k in range(i + 1, n)]
    if len(vals) != len(pairs):
        raise UsageError(f"{n} rows need {len(pairs)} upper-triangle entries, got {len(vals)}")
    return dict(zip(pairs, vals))


def params_from_args(args) -> MapParameters:
    q = parse_ints(args.q)
    n = args.n if args.n is not None else (len(q) or None)
    if n is None:
        raise UsageError("give --n or --q")
    if not q:
        q = [0] * n
    if len(q) != n:
        raise UsageError(f"--q has {len(q)} entries but --n is {n}")
    try:
        return MapParameters(tuple(q), parse_s(args.s, n))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_map(text: str | None) -> dict[int, int]:
    """Arrows as ``tail:head,tail:head`` (0-based columns)."""
    out = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        a, _, b = item.partition(":")
        out[int(a)] = int(b)
    return out


# output


def emit(obj: dict, fmt: str, table=None, text: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    if fmt == "csv":
        if table is None:
            raise UsageError("this report has no CSV form")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table[0])
        w.writerows(table[1:])
        return buf.getvalue().rstrip("\n")
    return text if text is not None else json.dumps(obj, indent=2, sort_keys=True)


def _distribution_table(dist: dict[int, int]):
    return [("L", "count")] + [(L, c) for L, c in sorted(dist.items())]


def _params_json(p: MapParameters) -> dict:
    return {"q": list(p.q), "s": {f"{i},{k}": v for (i, k), v in p.s}}


# subcommands


def cmd_series(args) -> int:
    p = params_from_args(args)
    series = main_series(p)
    dist = {L: int(c) for L, c in series.to_dict().items()}
    report = {
        "params": _params_json(p),
        "d": p.pair_count,
        "degree_bound": p.pair_count - p.n + 2,
        "pairings": str(pairing_count(p)),
        "series": poly_to_json(series),
    }
    text = "\n".join(
        [f"A(x) = {series}", f"d = {p.pair_count}, degree bound = {p.pair_count - p.n + 2}, "
         f"pairings = {pairing_count(p)}"]
        + [f"a[{L}] = {c}" for L, c in sorted(dist.items())]
    )
    print(emit(report, args.format, _distribution_table(dist), text))
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = params_from_args(args)
    cap = args.cap_d
    dist = face_distribution(p, cap_d=cap)
    series = Polynomial.from_dict(dist)
    report = {
        "params": _params_json(p),
        "distribution": {str(L): str(c) for L, c in dist.items()},
        "series": poly_to_json(series),
    }
    lines = [f"A(x) = {series}"] + [f"a[{L}] = {c}" for L, c in dist.items()]
    status = EXIT_OK
    Ks = parse_ints(args.K)
    if Ks:
        direct = {}
        for K in Ks:
            value = paired_function_count_direct(p, K, cap_d=cap)
            direct[str(K)] = {"direct": str(value), "series": str(series(K))}
            lines.append(f"K={K}: direct={value} series={series(K)}")
            if value != series(K):
                status = EXIT_MISMATCH
        report["paired_functions"] = direct
    print(emit(report, args.format, _distribution_table(dist), "\n".join(lines)))
    return status


_SUITE_OPTIONS = {
    "hz": {"qmax": "qmax"},
    "gs": {"qmax": "qmax", "smax": "smax", "dmax": "dmax"},
    "main": {"dmax": "dmax"},
    "vertical": {"n": "nmax", "K": "Kmax", "smax": "smax"},
    "gamma": {"K": "Kmax", "smax": "smax"},
    "delta": {"K": "Kmax", "smax": "smax"},
    "lambda": {"K": "Kmax", "smax": "smax"},
    "zeta": {"K": "Kmax"},
    "paired": {"K": "Kmax"},
    "simplify": {"K": "Kmax", "smax": "smax"},
}


def _run_suite(job):
    name, kwargs = job
    return checks.SUITES[name](**kwargs)


def cmd_verify(args) -> int:
    if args.suite == "zeta" and args.n not in (None, 3):
        raise UsageError("the zeta suite runs on three-row arrays only")
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    jobs = []
    for name in names:
        kwargs = {}
        for flag, kw in _SUITE_OPTIONS[name].items():
            value = getattr(args, flag)
            if value is not None:
                kwargs[kw] = value
        jobs.append((name, kwargs))
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_suite, jobs))
    else:
        reports = [_run_suite(j) for j in jobs]
    ok = all(r.ok for r in reports)
    payload = {
        "ok": ok,
        "suites": [
            {
                "suite": r.name,
                "ok": r.ok,
                "checks": len(r.results),
                "notes": r.notes,
                "failures": [
                    {"instance": f.instance, "expected": _jsonable(f.expected), "actual": _jsonable(f.actual)}
                    for f in r.failures
                ],
            }
            for r in reports
        ],
    }
    lines = []
    for r in reports:
        lines.append(r.summary())
        lines.extend(f"  note: {n}" for n in r.notes)
        for f in r.failures:
            lines.append(f"  MISMATCH {f.instance}: expected {f.expected}, got {f.actual}")
    table = [("suite", "ok", "checks", "failed")] + [
        (r.name, r.ok, len(r.results), len(r.failures)) for r in reports
    ]
    print(emit(payload, args.format, table, "\n".join(lines)))
    return EXIT_OK if ok else EXIT_MISMATCH


def _build_substructure(args):
    phi = parse_map(args.phi)
    if args.kind == "gamma":
        rows = (args.w or "").split(";")
        if len(rows) != 2:
            raise UsageError("Gamma needs --w as 'row0;row1', e.g. 1,0;0,1")
        return Gamma((parse_ints(rows[0]), parse_ints(rows[1])), parse_ints(args.R1set), parse_ints(args.R2set), phi)
    if args.kind == "delta":
        return Delta(parse_ints(args.w), parse_ints(args.R1set), phi)
    return Lambda(parse_ints(args.x), parse_ints(args.P), phi)


def cmd_substructure(args) -> int:
    try:
        sub = _build_substructure(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report: dict = {"kind": args.kind, "K": sub.K}
    formula = None
    reason = None
    if args.kind == "gamma":
        brute = enumerate_substructure(sub)
        simp = arrow_simplify(sub)
        if simp.cyclic:
            reason = "arrows contain a cycle"
        elif not gamma_is_full(simp.substructure):
            reason = "not full"
        else:
            part = classify_columns(simp.substructure)
            if sub.s <= part.count("A"):
                reason = "s <= A"
            else:
                formula = t_gamma(part, sub.s)
    elif args.kind == "delta":
        if args.R2 is None:
            raise UsageError("Delta needs --R2")
        brute = enumerate_substructure(sub, R2=args.R2)
        simp = arrow_simplify(sub)
        if simp.cyclic:
            reason = "arrows contain a cycle"
        else:
            d = simp.substructure
            if is_admissible(d):
                formula = t_delta_admissible(d, d.K, args.R2, d.s)
            elif is_irreducible(d) and all(d.w):
                formula = t_delta(d, d.K, args.R2, d.s)
            else:
                reason = "simplified Delta is not admissible"
    else:
        if args.R1 is None or args.R2 is None:
            raise UsageError("Lambda needs --R1 and --R2")
        brute = enumerate_substructure(sub, R1=args.R1, R2=args.R2)
        s = sub.s_for(args.R1)
        if not phi_reaches(sub.phi_map, sub.P):
            reason = "arrows contain a cycle"
        elif s < 1:
            reason = "s must be positive"
        else:
            formula = t_lambda(sub, sub.K, args.R1, args.R2, s)
    report["brute_force"] = str(brute)
    report["formula"] = None if formula is None else _jsonable(Fraction(formula))
    if reason:
        report["formula_unavailable"] = reason
    text = f"brute force: {brute}\nformula: {formula if formula is not None else 'n/a (' + reason + ')'}"
    print(emit(report, args.format, [("brute_force", "formula"), (brute, formula)], text))
    if formula is not None and formula != brute:
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treemaps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")

    def params(p):
        p.add_argument("--n", type=int, help="number of rows (vertices)")
        p.add_argument("--q", help="loop counts, comma separated")
        p.add_argument("--s", help="mixed counts: 's12,s13,...' or path:/star:/triangle:values")

    p = sub.add_parser("series", help="genus series from the closed form")
    params(p)
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("oracle", help="face distribution by enumerating pairings")
    params(p)
    common(p)
    p.add_argument("--cap-d", type=int, default=None, help="largest d to enumerate (default $TREEMAPS_CAP_D or 8)")
    p.add_argument("--K", help="also count paired functions directly for these K")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(checks.SUITES) + ["all"])
    common(p)
    p.add_argument("--qmax", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--smax", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--jobs", type=int, default=int(os.environ.get("TREEMAPS_JOBS", 1)))
    p.add_argument("--cap-d", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("substructure-count", help="count arrowed arrays of a substructure")
    p.add_argument("kind", choices=("gamma", "delta", "lambda"))
    common(p)
    p.add_argument("--w", help="occupancy: 'a,b,..' (delta) or 'row0;row1' (gamma)")
    p.add_argument("--x", help="non-critical counts (lambda)")
    p.add_argument("--P", help="root columns (lambda)")
    p.add_argument("--R1set", help="row-0 marked columns (gamma, delta)")
    p.add_argument("--R2set", help="row-1 marked columns (gamma)")
    p.add_argument("--R1", type=int, help="number of row-0 marks (lambda)")
    p.add_argument("--R2", type=int, help="number of row-1 marks (delta, lambda)")
    p.add_argument("--phi", help="arrows as tail:head,... (0-based columns)")
    p.set_defaults(func=cmd_substructure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("TREEMAPS_CAP_D")
    if getattr(args, "cap_d", None) is not None:
        # worker processes of verify --jobs read the cap from the environment
        os.environ["TREEMAPS_CAP_D"] = str(args.cap_d)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (HypothesisError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        if saved is None:
            os.environ.pop("TREEMAPS_CAP_D", None)
        else:
            os.environ["TREEMAPS_CAP_D"] = saved


if __name__ == "__main__":
    sys.exit(main())
