"""Verification suites: every closed form against an independent brute-force count.

Each suite returns a :class:`SuiteReport` listing the instances checked
with both values. The suites double as the acceptance checks and as the
back end of ``treemaps verify``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .arrays.arrowed import (
    Delta,
    Gamma,
    Lambda,
    arrow_simplify,
    classify_columns,
    enumerate_substructure,
    is_admissible,
    is_irreducible,
    phi_reaches,
)
from .arrays.closed_forms import t_delta, t_delta_admissible, t_gamma, t_lambda
from .arrays.decompose import decompose_row, recompose_row
from .arrays.paired import is_proper
from .arrays.vertical import compositions, enumerate_canonical_arrays, enumerate_vertical_arrays, vertical_count_table
from .core import MapParameters, is_tree, support_graph
from .formula import (
    goulden_slofstra,
    harer_zagier,
    main_series,
    series_by_interpolation,
    v_numeric,
    v_poly,
)
from .oracle import oracle_series, paired_function_count_direct
from .polynomial import binomial_int, factorial, interpolate, reciprocal_factorial


@dataclass
class CheckResult:
    instance: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class SuiteReport:
    name: str
    results: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, instance: str, expected, actual) -> None:
        self.results.append(CheckResult(instance, expected, actual))

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status} ({len(self.results)} checks, {len(self.failures)} failed)"


def describe(params: MapParameters) -> str:
    s = ",".join(f"{i}{k}:{v}" for (i, k), v in params.s)
    return f"q={params.q} s={{{s}}}"


# parameter grids


def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def star_edges(n: int) -> list[tuple[int, int]]:
    """Star with the last row as centre."""
    return [(i, n - 1) for i in range(n - 1)]


def tree_edge_sets(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Every labelled spanning tree on ``n`` rows (``n <= 4`` is plenty)."""
    all_pairs = [(i, k) for i in range(n) for k in range(i + 1, n)]
    out = []
    for edges in itertools.combinations(all_pairs, n - 1):
        params = MapParameters((0,) * n, {e: 1 for e in edges})
        if is_tree(support_graph(params)):
            out.append(edges)
    return out


def tree_shaped(n: int, values: Iterable[int], shapes=None) -> Iterator[dict]:
    values = list(values)
    for edges in shapes if shapes is not None else tree_edge_sets(n):
        for vals in itertools.product(values, repeat=len(edges)):
            yield dict(zip(edges, vals))


def main_theorem_instances(dmax: int = 6) -> list[MapParameters]:
    """Paths and stars on 3 and 4 rows, mixed counts in {1, 2}, loop counts in {0, 1}."""
    seen = []
    for n in (3, 4):
        shapes = [tuple(path_edges(n)), tuple(star_edges(n))]
        for s in tree_shaped(n, (1, 2), list(dict.fromkeys(shapes))):
            for q in itertools.product((0, 1), repeat=n):
                p = MapParameters(q, s)
                if p.pair_count <= dmax and p not in seen:
                    seen.append(p)
    return seen


# suites


def check_hz(qmax: int = 5) -> SuiteReport:
    rep = SuiteReport("hz")
    for q in range(1, qmax + 1):
        p = MapParameters((q,))
        oracle = oracle_series(p, cap_d=q)
        rep.add(f"q={q} harer_zagier", oracle, harer_zagier(q))
        rep.add(f"q={q} main_series", oracle, main_series(p))
    return rep


def check_gs(qmax: int = 2, smax: int = 3, dmax: int = 5) -> SuiteReport:
    rep = SuiteReport("gs")
    for q1, q2, s in itertools.product(range(qmax + 1), range(qmax + 1), range(1, smax + 1)):
        if q1 + q2 + s > dmax:
            continue
        p = MapParameters((q1, q2), {(0, 1): s})
        oracle = oracle_series(p, cap_d=dmax)
        rep.add(f"{describe(p)} goulden_slofstra", oracle, goulden_slofstra(q1, q2, s))
        rep.add(f"{describe(p)} main_series", oracle, main_series(p))
    return rep


def check_main(dmax: int = 6, interpolation: bool = True) -> SuiteReport:
    rep = SuiteReport("main")
    for p in main_theorem_instances(dmax):
        series = main_series(p)
        rep.add(f"{describe(p)} oracle", oracle_series(p, cap_d=dmax), series)
        if interpolation:
            rep.add(f"{describe(p)} interpolated canonical counts", series, series_by_interpolation(p))
    return rep


def vertical_instances(nmax: int = 3, smax: int = 2) -> list[MapParameters]:
    out = [MapParameters((0,))]
    for n in range(2, nmax + 1):
        for s in tree_shaped(n, range(1, smax + 1)):
            out.append(MapParameters((0,) * n, s))
    return out


def check_vertical(nmax: int = 3, Kmax: int = 4, smax: int = 2, interpolation: bool = True) -> SuiteReport:
    rep = SuiteReport("vertical")
    for p in vertical_instances(nmax, smax):
        n = p.n
        polys = {}
        for K in range(1, Kmax + 1):
            table = vertical_count_table(p, K)
            for R, brute in table.items():
                if R not in polys:
                    polys[R] = v_poly(n, R, p)
                tag = f"{describe(p)} K={K} R={R}"
                rep.add(tag + " v_numeric", brute, v_numeric(n, K, R, p))
                rep.add(tag + " v_poly", brute, polys[R](K))
        if interpolation:
            for R, poly in sorted(polys.items()):
                pts = [(K, v_numeric(n, K, R, p)) for K in range(1, poly.degree + 2)]
                rep.add(f"{describe(p)} R={R} interpolation", poly, interpolate(pts))
    return rep


def check_paired_functions(pmax: int = 6, Kmax: int = 3) -> SuiteReport:
    """Direct paired-function counts against ``sum_L a_L K^L``, and canonical arrays."""
    rep = SuiteReport("paired")
    for p in _small_profiles(pmax):
        series = oracle_series(p)
        for K in range(1, Kmax + 1):
            rep.add(f"{describe(p)} K={K} colourings", series(K), paired_function_count_direct(p, K))
    for n in (1, 2):
        for q in itertools.product((0, 1), repeat=n):
            for s in ([{}] if n == 1 else [{}, {(0, 1): 1}]):
                p = MapParameters(q, s)
                if min(p.degrees) == 0:
                    continue
                series = oracle_series(p)
                for K in range(1, Kmax + 1):
                    rep.add(f"{describe(p)} K={K} canonical arrays", series(K), enumerate_canonical_arrays(p, K))
    return rep


def _small_profiles(pmax: int) -> list[MapParameters]:
    """Every profile with total degree ``sum p_i <= pmax`` and all ``p_i >= 1``, up to 3 rows."""
    out = []
    for n in (1, 2, 3):
        pairs = [(i, k) for i in range(n) for k in range(i + 1, n)]
        for q in itertools.product(range(pmax // 2 + 1), repeat=n):
            for svals in itertools.product(range(pmax // 2 + 1), repeat=len(pairs)):
                p = MapParameters(q, dict(zip(pairs, svals)))
                if sum(p.degrees) <= pmax and all(d >= 1 for d in p.degrees):
                    out.append(p)
    return out


def _subsets(xs, lo=0):
    xs = list(xs)
    for r in range(lo, len(xs) + 1):
        for c in itertools.combinations(xs, r):
            yield frozenset(c)


def gamma_instances(Kmax: int = 3, smax: int = 4) -> Iterator[Gamma]:
    """Every irreducible, full Gamma with ``K <= Kmax`` and ``1 <= s <= smax``."""
    for K in range(1, Kmax + 1):
        for s in range(1, smax + 1):
            comps = compositions(s, K)
            for R1 in _subsets(range(K), 1):
                rest = [j for j in range(K) if j not in R1]
                for H in _subsets(rest):
                    heads = [j for j in rest if j not in H]
                    for hv in itertools.product(heads, repeat=len(H)):
                        phi = dict(zip(sorted(H), hv))
                        for R2 in _subsets(range(K), 1):
                            for w0 in comps:
                                if any(not (w0[j] or j in R1 or j in phi) for j in range(K)):
                                    continue
                                for w1 in comps:
                                    if all(w1[j] or j in R2 for j in range(K)):
                                        yield Gamma((w0, w1), R1, R2, phi)


def check_gamma(Kmax: int = 3, smax: int = 4) -> SuiteReport:
    rep = SuiteReport("gamma")
    below = 0
    for g in gamma_instances(Kmax, smax):
        part = classify_columns(g)
        brute = enumerate_substructure(g)
        tag = f"w={g.w} R1={sorted(g.R1)} R2={sorted(g.R2)} phi={dict(g.phi)}"
        if g.s <= part.count("A"):
            # outside the formula's range; the count itself must vanish
            below += 1
            rep.add(tag + " (s <= A)", 0, brute)
            continue
        rep.add(tag, brute, t_gamma(part, g.s))
    rep.notes.append(f"{below} instances with s <= A checked to have count 0")
    return rep


def delta_instances(Kmax: int = 3, smax: int = 4) -> Iterator[Delta]:
    """Every Delta (any arrows) with ``K <= Kmax`` and ``1 <= s <= smax``."""
    for K in range(1, Kmax + 1):
        for s in range(1, smax + 1):
            for w in compositions(s, K):
                for R1 in _subsets(range(K), 1):
                    rest = [j for j in range(K) if j not in R1]
                    for H in _subsets(rest):
                        for hv in itertools.product(range(K), repeat=len(H)):
                            yield Delta(w, R1, dict(zip(sorted(H), hv)))


def check_delta(Kmax: int = 3, smax: int = 4) -> SuiteReport:
    rep = SuiteReport("delta")
    for d in delta_instances(Kmax, smax):
        general = is_irreducible(d) and all(d.w)
        admissible = is_admissible(d)
        if not (general or admissible):
            continue
        for R2 in range(1, d.K + 1):
            brute = enumerate_substructure(d, R2=R2)
            tag = f"w={d.w} R1={sorted(d.R1)} phi={dict(d.phi)} R2={R2}"
            if general:
                rep.add(tag + " t_delta", brute, t_delta(d, d.K, R2, d.s))
            if admissible:
                rep.add(tag + " t_delta_admissible", brute, t_delta_admissible(d, d.K, R2, d.s))
            if general and admissible:
                rep.add(tag + " general = admissible", t_delta(d, d.K, R2, d.s),
                        t_delta_admissible(d, d.K, R2, d.s))
    return rep


def lambda_instances(Kmax: int = 3, smax: int = 4) -> Iterator[tuple[Lambda, int, int]]:
    """``(Lambda, R1, s)`` for every valid record with ``K <= Kmax``, ``1 <= s <= smax``."""
    for K in range(1, Kmax + 1):
        for P in _subsets(range(K), 1):
            rest = [j for j in range(K) if j not in P]
            for H in _subsets(rest):
                Hs = sorted(H)
                support = sorted(P | H)
                for hv in itertools.product(support, repeat=len(Hs)):
                    phi = dict(zip(Hs, hv))
                    for R1 in range(1, len(P) + 1):
                        for s in range(1, smax + 1):
                            total = s - len(P) + R1
                            if total < 0:
                                continue
                            for xs in compositions(total, len(support)):
                                x = [0] * K
                                for j, v in zip(support, xs):
                                    x[j] = v
                                yield Lambda(x, P, phi), R1, s


def check_lambda(Kmax: int = 3, smax: int = 4) -> SuiteReport:
    rep = SuiteReport("lambda")
    cyclic = 0
    for lam, R1, s in lambda_instances(Kmax, smax):
        for R2 in range(1, lam.K + 1):
            brute = enumerate_substructure(lam, R1=R1, R2=R2)
            tag = f"x={lam.x} P={sorted(lam.P)} phi={dict(lam.phi)} R1={R1} R2={R2}"
            if not phi_reaches(lam.phi_map, lam.P):
                cyclic += 1
                rep.add(tag + " (cyclic arrows)", 0, brute)
                continue
            rep.add(tag, brute, t_lambda(lam, lam.K, R1, R2, s))
    rep.notes.append(f"{cyclic} instances with cyclic arrows checked to have count 0")
    return rep


def check_simplification(Kmax: int = 3, smax: int = 3) -> SuiteReport:
    """Arrow simplification keeps the count of every Delta (rows R2 = 1..K)."""
    rep = SuiteReport("simplify")
    for d in delta_instances(Kmax, smax):
        simp = arrow_simplify(d)
        for R2 in range(1, d.K + 1):
            brute = enumerate_substructure(d, R2=R2)
            after = 0 if simp.cyclic else enumerate_substructure(simp.substructure, R2=R2)
            rep.add(f"w={d.w} R1={sorted(d.R1)} phi={dict(d.phi)} R2={R2}", brute, after)
    return rep


def lambda_term(P: int, Rm: int, Rl: int, sl: int, K: int) -> Fraction:
    """Number of arrowed arrays in any ``Lambda_{beta,m,W}`` (independent of beta and W)."""
    total = Fraction(0)
    for A in range(min(sl, K)):
        total += (
            Fraction((sl - P + Rm) * factorial(K - A - 1) * factorial(sl - A - 1) * factorial(P - 1))
            * reciprocal_factorial(P - Rm - A)
            * reciprocal_factorial(K - Rl - A)
            * reciprocal_factorial(Rm - 1)
            * reciprocal_factorial(Rl - 1)
        )
    return total


def check_zeta(Kmax: int = 3, s: dict | None = None, leaf: int = 2) -> SuiteReport:
    """Round trip of the row decomposition, and its image sizes per ``P``."""
    rep = SuiteReport("zeta")
    params = MapParameters((0, 0, 0), s or {(0, 1): 1, (1, 2): 1})
    n = params.n
    (m,) = [k for k in range(n) if params.s_between(leaf, k)]
    sm, sl = params.mixed_degree(m), params.s_between(leaf, m)
    rest = [k for k in range(n) if k != leaf]
    smaller = MapParameters(
        (0,) * (n - 1),
        {(rest.index(i), rest.index(k)): v for (i, k), v in params.s if leaf not in (i, k)},
    )
    m_new = rest.index(m)
    arrays = 0
    for K in range(1, Kmax + 1):
        for R in itertools.product(range(1, K + 1), repeat=n):
            byP: dict[int, int] = {}
            for a in enumerate_vertical_arrays(n, K, R, params):
                arrays += 1
                d = decompose_row(a, leaf)
                back = recompose_row(d.beta, d.W, d.sigma, leaf, d.parent)
                if back != a or not is_proper(d.beta):
                    rep.add(f"K={K} R={R} round trip {a!r}", True, False)
                byP[d.P] = byP.get(d.P, 0) + 1
            for P in range(R[m], min(sl + R[m], K) + 1):
                Rp = [R[k] for k in rest]
                Rp[m_new] = P
                expected = (
                    binomial_int(sm + R[m] - 1, sl - P + R[m])
                    * v_numeric(n - 1, K, Rp, smaller)
                    * lambda_term(P, R[m], R[leaf], sl, K)
                )
                rep.add(f"K={K} R={R} P={P} image count", expected, byP.get(P, 0))
            extra = set(byP) - set(range(R[m], min(sl + R[m], K) + 1))
            if extra:
                rep.add(f"K={K} R={R} P out of range", set(), extra)
    rep.notes.append(f"{arrays} arrays round-tripped")
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "hz": check_hz,
    "gs": check_gs,
    "main": check_main,
    "vertical": check_vertical,
    "gamma": check_gamma,
    "delta": check_delta,
    "lambda": check_lambda,
    "zeta": check_zeta,
    "paired": check_paired_functions,
    "simplify": check_simplification,
}
