"""Closed-form counts: vertical arrays, canonical arrays and the genus series.

``main_series`` assembles ``A_n^(q;s)(x)`` from the polynomial form of
``v_{n,K;R}^(s)``; ``harer_zagier`` and ``goulden_slofstra`` are the
classical one- and two-vertex special cases, kept as independent checks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

from .core import MapParameters, edge_ordering, is_tree, support_graph
from .polynomial import (
    Polynomial,
    binomial_int,
    binomial_poly,
    double_factorial,
    factorial,
    interpolate,
    reciprocal_factorial,
    rising_factorial,
)


class HypothesisError(ValueError):
    """Input lies outside the hypotheses the closed forms are valid under."""


def _vertical_params(n: int, s) -> MapParameters:
    params = s if isinstance(s, MapParameters) else MapParameters((0,) * n, s)
    if params.n != n:
        raise ValueError(f"s describes {params.n} rows, expected {n}")
    return params


def _require_tree(params: MapParameters) -> None:
    if not is_tree(support_graph(params)):
        raise HypothesisError("support graph of s is not a tree (outside theorem hypotheses)")


def _edge_ranges(edges, params, K=None):
    ranges = []
    for i, k in edges:
        s_e = params.s_between(i, k)
        top = s_e if K is None else min(s_e, K)
        ranges.append(range(top))
    return ranges


def v_numeric(n: int, K: int, R: Sequence[int], s) -> int:
    """``v_{n,K;R}^(s)`` from the factorial sum over one index per tree edge."""
    params = _vertical_params(n, s)
    _require_tree(params)
    if K < 1 or len(R) != n or any(r < 1 for r in R):
        raise ValueError("need K >= 1 and R >= 1 componentwise")
    if any(r > K for r in R):
        return 0
    edges = list(params.edges)
    nbrs = [[k for k in range(n) if params.s_between(i, k)] for i in range(n)]
    total = Fraction(0)
    for A_vals in itertools.product(*_edge_ranges(edges, params, K)):
        A = {}
        for (i, k), a in zip(edges, A_vals):
            A[(i, k)] = A[(k, i)] = a
        term = Fraction(1)
        for (i, k), a in zip(edges, A_vals):
            s_e = params.s_between(i, k)
            term *= factorial(K - a - 1) * reciprocal_factorial(K + s_e - a - 1)
        for i in range(n):
            s_i = sum(params.s_between(i, k) for k in nbrs[i])
            A_i = sum(A[(i, k)] for k in nbrs[i])
            deg = len(nbrs[i])
            term *= factorial(K + s_i - A_i - deg) * factorial(R[i] - 1 + s_i)
            term *= (
                reciprocal_factorial(R[i] - 1)
                * reciprocal_factorial(K - R[i] - A_i)
                * reciprocal_factorial(R[i] + s_i - deg)
            )
            if term == 0:
                break
        total += term
    if total.denominator != 1:
        raise AssertionError(f"non-integral vertical count {total}")
    return int(total)


def v_poly(n: int, R: Sequence[int], s) -> Polynomial:
    """``v_{n,K;R}^(s)`` as a polynomial in ``K`` (rising-factorial form).

    Edges are ordered so that edge ``e_j`` touches vertex ``j`` for every
    vertex but the last; the per-edge sums then run to ``s_e - 1`` with no
    dependence on ``K``.
    """
    params = _vertical_params(n, s)
    _require_tree(params)
    if len(R) != n or any(r < 1 for r in R):
        raise ValueError("R must be >= 1 componentwise")
    K = Polynomial.x()
    if n == 1:
        return binomial_poly(R[0])
    edges = edge_ordering(support_graph(params))
    nbrs = [[k for k in range(n) if params.s_between(i, k)] for i in range(n)]
    s_tot = [sum(params.s_between(i, k) for k in nbrs[i]) for i in range(n)]

    prefactor = Fraction(1)
    for i in range(n):
        deg = len(nbrs[i])
        prefactor *= Fraction(
            factorial(R[i] - 1 + s_tot[i]),
            factorial(R[i] - 1) * factorial(R[i] + s_tot[i] - deg),
        )

    last = n - 1
    total = Polynomial()
    for A_vals in itertools.product(*_edge_ranges(edges, params)):
        A = {}
        for (i, k), a in zip(edges, A_vals):
            A[(i, k)] = A[(k, i)] = a
        A_sum = [sum(A[(i, k)] for k in nbrs[i]) for i in range(n)]
        term = rising_factorial(
            K - R[last] - A_sum[last] + 1, s_tot[last] - len(nbrs[last]) + R[last]
        )
        for j in range(n - 1):
            e = edges[j]
            a_e = A[e]
            s_e = params.s_between(*e)
            term = term * rising_factorial(K - R[j] - A_sum[j] + 1, R[j] + A_sum[j] - a_e - 1)
            length = (s_tot[j] - A_sum[j] - len(nbrs[j])) - s_e + a_e + 1
            term = term * rising_factorial(K + s_e - a_e, length)
        total = total + term
    return total * prefactor


def _loop_coefficient(q_i: int, s_i: int, t_i: int) -> Fraction:
    return Fraction(
        factorial(2 * q_i + s_i),
        2**t_i * factorial(t_i) * factorial(s_i + q_i - t_i),
    )


def _loop_terms(params: MapParameters):
    """``(coefficient, R)`` for each ``t`` with ``0 <= t <= q``; ``R = q - t + 1``."""
    s_tot = [params.mixed_degree(i) for i in range(params.n)]
    for t in itertools.product(*(range(qi + 1) for qi in params.q)):
        coef = Fraction(1)
        for i, ti in enumerate(t):
            coef *= _loop_coefficient(params.q[i], s_tot[i], ti)
        R = tuple(params.q[i] - t[i] + 1 for i in range(params.n))
        yield coef, R


def canonical_count(params: MapParameters, K: int, v=None) -> int:
    """``c_{n,K}^(q;s)``: sum over ``t`` of loop-removal coefficients times ``v_{n,K;q-t+1}``.

    ``v`` defaults to :func:`v_numeric`; any callable ``v(n, K, R, s)``
    (e.g. the brute-force counter) can be substituted.
    """
    v = v or v_numeric
    vparams = MapParameters((0,) * params.n, params.s)
    total = Fraction(0)
    for coef, R in _loop_terms(params):
        if any(r > K for r in R):
            continue
        total += coef * v(params.n, K, R, vparams)
    if total.denominator != 1:
        raise AssertionError(f"non-integral canonical count {total}")
    return int(total)


def _check_series_hypotheses(params: MapParameters) -> None:
    _require_tree(params)
    if any(p < 1 for p in params.degrees):
        raise HypothesisError(f"every degree p_i must be positive, got {params.degrees}")


def main_series(params: MapParameters) -> Polynomial:
    """``A_n^(q;s)(x) = sum_L a_{n,L} x^L`` for a tree-shaped ``s``."""
    _check_series_hypotheses(params)
    vparams = MapParameters((0,) * params.n, params.s)
    total = Polynomial()
    for coef, R in _loop_terms(params):
        total = total + v_poly(params.n, R, vparams) * coef
    if not total.is_integral() or any(c < 0 for c in total.coeffs):
        raise AssertionError(f"series has non-integral or negative coefficients: {total}")
    return total


def series_by_interpolation(params: MapParameters) -> Polynomial:
    """The same series rebuilt from ``canonical_count`` at ``K = 1 .. d - n + 3``."""
    _check_series_hypotheses(params)
    top = params.pair_count - params.n + 3
    return interpolate([(K, canonical_count(params, K)) for K in range(1, top + 1)])


def harer_zagier(q: int) -> Polynomial:
    """One-vertex maps with ``q`` loops."""
    if q < 1:
        raise ValueError("q must be positive")
    total = Polynomial()
    for k in range(1, q + 2):
        total = total + binomial_poly(k) * (2 ** (k - 1) * binomial_int(q, k - 1))
    return total * double_factorial(2 * q - 1)


def goulden_slofstra(q1: int, q2: int, s: int) -> Polynomial:
    """Two-vertex maps: ``q1``, ``q2`` loops and ``s >= 1`` edges between the vertices."""
    if s < 1:
        raise HypothesisError("s must be positive for a two-vertex tree")
    if q1 < 0 or q2 < 0:
        raise ValueError("loop counts must be non-negative")
    p1, p2, d = 2 * q1 + s, 2 * q2 + s, q1 + q2 + s
    total = Polynomial()
    for k in range(1, d + 2):
        acc = Fraction(0)
        for i in range(p1 // 2 + 1):
            for j in range(p2 // 2 + 1):
                delta = binomial_int(k - 1, q1 - i) * binomial_int(k - 1, q2 - j) - binomial_int(
                    k - 1, q1 + s - i
                ) * binomial_int(k - 1, q2 + s - j)
                if not delta:
                    continue
                acc += (
                    Fraction(binomial_int(d - i - j, k - 1) * delta, 2 ** (i + j) * factorial(i) * factorial(j))
                    * reciprocal_factorial(d - i - j)
                )
        if acc:
            total = total + binomial_poly(k) * acc
    return total * (factorial(p1) * factorial(p2))


def hz_reduction_check(q: int) -> bool:
    return main_series(MapParameters((q,))) == harer_zagier(q)
