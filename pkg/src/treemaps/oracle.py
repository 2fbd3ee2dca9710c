"""Brute-force ground truth straight from the definitions.

Nothing in here knows about arrays or closed forms: pairings are
generated one by one, ``mu gamma^{-1}`` is formed and its cycles are
counted.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from typing import Iterator

from .core import (
    GroundElement,
    MapParameters,
    Pairing,
    canonical_cycle,
    compose,
    cycle_count,
    invert,
)
from .polynomial import Polynomial, double_factorial, factorial

DEFAULT_CAP_D = 8
DEFAULT_CAP_COLOURINGS = 10**6


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured size cap."""


def default_cap_d() -> int:
    return int(os.environ.get("TREEMAPS_CAP_D", DEFAULT_CAP_D))


def pairing_count(params: MapParameters) -> int:
    """``|P_n^(q;s)|`` by direct counting of placements.

    Row ``i`` splits its ``p_i`` elements into ``2 q_i`` loop ends and
    ``s_ik`` ends towards each other row ``k``; loop ends are paired in
    ``(2 q_i - 1)!!`` ways and each block of mixed ends in ``s_ik!`` ways.
    """
    total = 1
    for i, p in enumerate(params.degrees):
        denom = factorial(2 * params.q[i])
        for k in range(params.n):
            denom *= factorial(params.s_between(i, k))
        total *= factorial(p) // denom * double_factorial(2 * params.q[i] - 1)
    for _, v in params.s:
        total *= factorial(v)
    return total


def enumerate_pairings(params: MapParameters, cap_d: int | None = None) -> Iterator[Pairing]:
    """Yield every pairing with profile ``(q; s)`` exactly once.

    The smallest unmatched element is matched against each admissible
    later element in turn; admissibility is the remaining loop/mixed
    budget between the two rows.
    """
    cap = default_cap_d() if cap_d is None else cap_d
    if params.pair_count > cap:
        raise CapExceeded(f"d={params.pair_count} exceeds enumeration cap {cap}")
    if sum(params.degrees) % 2:
        return
    elements = params.ground_set()
    n = params.n
    budget = [[0] * n for _ in range(n)]
    for i in range(n):
        budget[i][i] = params.q[i]
        for k in range(n):
            if k != i:
                budget[i][k] = params.s_between(i, k)
    used = [False] * len(elements)
    chosen: list[tuple[GroundElement, GroundElement]] = []

    def rec(start: int) -> Iterator[Pairing]:
        while start < len(elements) and used[start]:
            start += 1
        if start == len(elements):
            yield Pairing(chosen)
            return
        u = elements[start]
        used[start] = True
        for idx in range(start + 1, len(elements)):
            if used[idx]:
                continue
            v = elements[idx]
            if budget[u.row][v.row] == 0:
                continue
            budget[u.row][v.row] -= 1
            if u.row != v.row:
                budget[v.row][u.row] -= 1
            used[idx] = True
            chosen.append((u, v))
            yield from rec(start + 1)
            chosen.pop()
            used[idx] = False
            budget[u.row][v.row] += 1
            if u.row != v.row:
                budget[v.row][u.row] += 1
        used[start] = False

    yield from rec(0)


def face_distribution(params: MapParameters, cap_d: int | None = None) -> dict[int, int]:
    """``{L: a_{n,L}}``: how many pairings give ``mu gamma^{-1}`` exactly ``L`` cycles."""
    gamma_inv = invert(canonical_cycle(params))
    tally: Counter[int] = Counter()
    for mu in enumerate_pairings(params, cap_d):
        tally[cycle_count(compose(mu.as_permutation(), gamma_inv))] += 1
    return dict(sorted(tally.items()))


def oracle_series(params: MapParameters, cap_d: int | None = None) -> Polynomial:
    return Polynomial.from_dict(face_distribution(params, cap_d))


def paired_function_count_direct(
    params: MapParameters, K: int, cap_d: int | None = None,
    cap_colourings: int = DEFAULT_CAP_COLOURINGS,
) -> int:
    """Count pairs ``(mu, pi)`` with ``pi(mu(v)) == pi(gamma(v))`` for every ``v``.

    Every colouring ``pi`` of the ground set by ``K`` colours is tried.
    """
    if K < 1:
        raise ValueError("K must be positive")
    elements = params.ground_set()
    if K ** len(elements) > cap_colourings:
        raise CapExceeded(
            f"{K}^{len(elements)} colourings exceed cap {cap_colourings}; "
            "use sum_L a_L K^L from face_distribution instead"
        )
    gamma = canonical_cycle(params)
    index = {e: t for t, e in enumerate(elements)}
    gamma_idx = [index[gamma(e)] for e in elements]
    total = 0
    for mu in enumerate_pairings(params, cap_d):
        mu_idx = [index[mu.partner(e)] for e in elements]
        for pi in itertools.product(range(K), repeat=len(elements)):
            if all(pi[mu_idx[t]] == pi[gamma_idx[t]] for t in range(len(elements))):
                total += 1
    return total
