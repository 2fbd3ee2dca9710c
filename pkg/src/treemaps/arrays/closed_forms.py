"""Closed-form counts of arrowed arrays satisfying Gamma, Delta and Lambda."""

from __future__ import annotations

from fractions import Fraction

from ..polynomial import binomial_int, factorial, reciprocal_factorial
from .arrowed import (
    ColumnTypePartition,
    Delta,
    Gamma,
    Lambda,
    classify_columns,
    gamma_is_full,
    is_admissible,
    is_irreducible,
    phi_reaches,
)


def t_gamma(part: ColumnTypePartition, s: int, A: int | None = None) -> Fraction:
    """Arrays satisfying an irreducible, full Gamma with column types ``part``.

    ``A`` defaults to the number of type-A columns. Needs ``s >= A + 1``.
    """
    if A is None:
        A = part.count("A")
    if s <= A:
        raise ValueError(f"need s >= A + 1, got s={s}, A={A}")

    def v(t, row):
        return part.vertices(t, row)

    r2 = v("B", 1) + v("D", 1)
    first = r2 * (v("Atilde", 0) + v("C", 0) + v("Ctilde", 0) + v("D", 0))
    if s == A + 1:
        return Fraction(factorial(s - 1) * first)
    second = v("B", 0) * (v("C", 1) + v("Cbar", 1) + v("Ctilde", 1)) - v("Cbar", 0) * r2
    return factorial(s - 1) * (
        Fraction(first, s - A) + Fraction(second, (s - A) * (s - A - 1))
    )


def t_gamma_of(sub: Gamma) -> Fraction:
    """:func:`t_gamma` after checking that ``sub`` is irreducible and full."""
    if not gamma_is_full(sub):
        raise ValueError("Gamma does not satisfy the full condition")
    return t_gamma(classify_columns(sub), sub.s)


def _delta_stats(sub: Delta) -> tuple[int, int]:
    """``(r, M)``: row-0 vertices in marked columns, and columns with a critical row-0 vertex."""
    phi = sub.phi_map
    r = sum(sub.w[j] for j in sub.R1)
    M = sum(1 for j in range(sub.K) if sub.w[j] and j not in sub.R1 and j not in phi)
    return r, M


def _check_delta(sub: Delta, K: int, R2: int, s: int) -> None:
    if K != sub.K or s != sub.s:
        raise ValueError("K or s inconsistent with the substructure")
    if not sub.R1 or R2 < 1:
        raise ValueError("need R1, R2 >= 1")


def t_delta(sub: Delta, K: int, R2: int, s: int) -> int:
    """Arrays satisfying an irreducible Delta whose columns all hold vertices."""
    _check_delta(sub, K, R2, s)
    if not is_irreducible(sub):
        raise ValueError("Delta is not irreducible")
    if any(c <= 0 for c in sub.w):
        raise ValueError("every column must hold at least one vertex")
    r, M = _delta_stats(sub)
    total = Fraction(0)
    for A in range(s):
        total += Fraction(r, s - A) * binomial_int(M, M - A) * binomial_int(K - M - 1, R2 - M + A - 1)
    total *= factorial(s)
    if total.denominator != 1:
        raise AssertionError(f"non-integral Delta count {total}")
    return int(total)


def t_delta_admissible(sub: Delta, K: int, R2: int, s: int) -> Fraction:
    """Arrays satisfying an admissible Delta (arrow-heads land on cells with vertices)."""
    _check_delta(sub, K, R2, s)
    if not is_admissible(sub):
        raise ValueError("Delta is not admissible")
    r, M = _delta_stats(sub)
    total = Fraction(0)
    for A in range(min(s, K)):
        total += Fraction(
            factorial(M) * factorial(K - A - 1) * factorial(s - A - 1),
        ) * reciprocal_factorial(M - A) * reciprocal_factorial(K - R2 - A) * reciprocal_factorial(R2 - 1)
    return r * total


def t_lambda(sub: Lambda, K: int, R1: int, R2: int, s: int) -> Fraction:
    """Arrays satisfying Lambda whose arrows all lead into ``P``."""
    if K != sub.K:
        raise ValueError("K inconsistent with the substructure")
    P = len(sub.P)
    if s < 1:
        raise ValueError("need s >= 1")
    if not 1 <= R1 <= P or R2 < 1:
        raise ValueError("need 1 <= R1 <= |P| and R2 >= 1")
    if s != sub.s_for(R1):
        raise ValueError(f"s={s} inconsistent with x, P and R1 (expected {sub.s_for(R1)})")
    if not phi_reaches(sub.phi_map, sub.P):
        raise ValueError("arrows of Lambda contain a cycle")
    total = Fraction(0)
    for A in range(min(s, K)):
        total += (
            Fraction((s - P + R1) * factorial(K - A - 1) * factorial(s - A - 1) * factorial(P - 1))
            * reciprocal_factorial(P - R1 - A)
            * reciprocal_factorial(K - R2 - A)
            * reciprocal_factorial(R1 - 1)
            * reciprocal_factorial(R2 - 1)
        )
    return total
