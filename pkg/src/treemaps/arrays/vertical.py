"""Exhaustive enumeration of proper vertical arrays and canonical arrays.

An array is determined by a pairing of the ground set ``[p_1, ..., p_n]``
(positions read left to right along each row), a composition of each
``p_i`` into ``K`` cell sizes, and the marked cells. Balance depends only
on the first two; the forest condition of row ``i`` depends on them and
on row ``i``'s marks alone. The counters below exploit that split: for
every balanced (pairing, occupancy) they count admissible mark sets row
by row and multiply.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

from ..core import GroundElement, MapParameters
from ..oracle import enumerate_pairings
from .paired import PairedArray, reaches_roots


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All weak compositions of ``total`` into ``parts`` parts."""
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(total + parts - 1 - prev - 1)
        out.append(tuple(comp))
    return tuple(out)


def _columns(occ: Sequence[int]) -> list[int]:
    return [j for j, w in enumerate(occ) for _ in range(w)]


class _Structure:
    """A pairing placed into cells: column of every ground element."""

    __slots__ = ("params", "pairing", "occ", "col")

    def __init__(self, params, pairing, occ):
        self.params = params
        self.pairing = pairing
        self.occ = occ
        self.col = {}
        for i, row in enumerate(occ):
            for x, j in enumerate(_columns(row)):
                self.col[(i, x)] = j

    def balanced(self) -> bool:
        n, K = self.params.n, len(self.occ[0])
        present = [[0] * K for _ in range(n)]
        incoming = [[0] * K for _ in range(n)]
        for u, v in self.pairing:
            if u.row == v.row:
                continue
            cu, cv = self.col[u], self.col[v]
            present[u.row][cu] += 1
            present[v.row][cv] += 1
            incoming[u.row][cv] += 1
            incoming[v.row][cu] += 1
        return present == incoming

    def psi(self, i: int) -> dict[int, int]:
        """Forest function of row ``i`` ignoring marks (restricted later)."""
        out = {}
        offset = 0
        for j, w in enumerate(self.occ[i]):
            offset += w
            if w:
                out[j] = self.col[self.pairing.partner(GroundElement(i, offset - 1))]
        return out

    def to_array(self, marks) -> PairedArray:
        pos = {}
        for (i, x), j in self.col.items():
            pos[(i, x)] = (i, j, x - sum(self.occ[i][:j]))
        pairs = [(pos[u], pos[v]) for u, v in self.pairing]
        return PairedArray.from_positions(self.occ, marks, pairs)


def _valid_mark_sets(psi: dict[int, int], K: int) -> dict[int, list[frozenset[int]]]:
    """Mark sets of one row satisfying the forest condition, grouped by size."""
    out: dict[int, list[frozenset[int]]] = {}
    for r in range(K + 1):
        for marks in itertools.combinations(range(K), r):
            ms = frozenset(marks)
            restricted = {j: h for j, h in psi.items() if j not in ms}
            if reaches_roots(restricted, ms):
                out.setdefault(r, []).append(ms)
    return out


def _structures(params: MapParameters, K: int, cap_d: int | None) -> Iterator[_Structure]:
    occ_choices = [compositions(p, K) for p in params.degrees]
    for mu in enumerate_pairings(params, cap_d=cap_d):
        for occ in itertools.product(*occ_choices):
            st = _Structure(params, mu, occ)
            if st.balanced():
                yield st


def vertical_count_table(params: MapParameters, K: int, cap_d: int | None = None) -> dict[tuple[int, ...], int]:
    """``{R: v_{n,K;R}}`` for every ``R`` in ``[1, K]^n``, by exhaustive enumeration.

    ``params.q`` must be all zero.
    """
    if any(params.q):
        raise ValueError("vertical arrays have no loop pairs")
    return _proper_count_table(params, K, cap_d)


def _proper_count_table(params, K, cap_d) -> dict[tuple[int, ...], int]:
    n = params.n
    table: Counter[tuple[int, ...]] = Counter()
    cache: dict[tuple, dict[int, int]] = {}
    for st in _structures(params, K, cap_d):
        per_row = []
        for i in range(n):
            psi = st.psi(i)
            ck = tuple(sorted(psi.items()))
            if ck not in cache:
                cache[ck] = {r: len(v) for r, v in _valid_mark_sets(psi, K).items()}
            per_row.append(cache[ck])
        for R in itertools.product(range(1, K + 1), repeat=n):
            prod = 1
            for i in range(n):
                prod *= per_row[i].get(R[i], 0)
                if not prod:
                    break
            if prod:
                table[R] += prod
    return {R: table.get(R, 0) for R in itertools.product(range(1, K + 1), repeat=n)}


_table_cache: dict[tuple, dict] = {}


def brute_vertical_count(n: int, K: int, R: Sequence[int], s: MapParameters | dict) -> int:
    """``v_{n,K;R}^(s)`` by enumeration; zero whenever some ``R_i > K``."""
    params = s if isinstance(s, MapParameters) else MapParameters((0,) * n, s)
    if params.n != n or len(R) != n:
        raise ValueError("row count mismatch")
    if any(r < 1 for r in R):
        raise ValueError("R must be >= 1 componentwise")
    if any(r > K for r in R):
        return 0
    key = (params, K)
    if key not in _table_cache:
        _table_cache[key] = vertical_count_table(params, K)
    return _table_cache[key][tuple(R)]


def enumerate_vertical_arrays(
    n: int, K: int, R: Sequence[int], s: MapParameters | dict
) -> Iterator[PairedArray]:
    """Yield every proper vertical array with the given parameters once."""
    params = s if isinstance(s, MapParameters) else MapParameters((0,) * n, s)
    if any(params.q):
        raise ValueError("vertical arrays have no loop pairs")
    yield from _enumerate_proper(params, K, R)


def _enumerate_proper(params, K, R) -> Iterator[PairedArray]:
    if any(r > K for r in R):
        return
    for st in _structures(params, K, None):
        choices = []
        for i in range(params.n):
            valid = _valid_mark_sets(st.psi(i), K).get(R[i], [])
            if not valid:
                break
            choices.append(valid)
        else:
            for mark_sets in itertools.product(*choices):
                marks = [[j in ms for j in range(K)] for ms in mark_sets]
                yield st.to_array(marks)


def enumerate_canonical_arrays(params: MapParameters, K: int) -> int:
    """``c_{n,K}^(q;s)``: proper arrays with exactly one mark per row."""
    return _proper_count_table(params, K, None).get((1,) * params.n, 0)


def iter_canonical_arrays(params: MapParameters, K: int) -> Iterator[PairedArray]:
    yield from _enumerate_proper(params, K, (1,) * params.n)
