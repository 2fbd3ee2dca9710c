"""Arrowed arrays, the substructures Gamma / Delta / Lambda, and arrow simplification.

An arrowed array is a two-row vertical array plus a partial column map
``phi`` (arrows drawn above row 0). An arrow-tail counts as an object of
its row-0 cell and, like a box, is that cell's rightmost object; a
row-0 vertex is critical only if its cell is unmarked and has no tail.

Rows are 0-based here too: "row 0" is the row carrying the arrows.

A substructure fixes everything except some of: the pairing, the row-1
marks and (for Lambda) the row-0 marks. Counting therefore loops over
the ``s!`` bijections between row-0 and row-1 vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Sequence

from .paired import PairedArray, check_forest as _paired_forest, reaches_roots


def _freeze_map(phi) -> tuple[tuple[int, int], ...]:
    items = phi.items() if isinstance(phi, Mapping) else phi
    return tuple(sorted((int(a), int(b)) for a, b in items))


class ArrowedArray:
    """A two-row vertical :class:`PairedArray` with arrows ``phi`` on row 0."""

    __slots__ = ("array", "phi")

    def __init__(self, array: PairedArray, phi: Mapping[int, int] | None = None):
        phi = dict(phi or {})
        if array.n != 2:
            raise ValueError("arrowed arrays have exactly two rows")
        if not array.is_vertical():
            raise ValueError("arrowed arrays must be vertical")
        for j, h in phi.items():
            if not (0 <= j < array.K and 0 <= h < array.K):
                raise ValueError(f"arrow {j}->{h} leaves the array")
            if array.marks[0][j]:
                raise ValueError(f"column {j} is marked in row 0 and holds an arrow-tail")
        self.array = array
        self.phi = phi

    @property
    def K(self) -> int:
        return self.array.K

    def has_object(self, i: int, j: int) -> bool:
        return bool(self.array.cells[i][j]) or self.array.marks[i][j] or (i == 0 and j in self.phi)

    def critical_vertices(self, i: int) -> list[int]:
        arr = self.array
        return [
            cell[-1]
            for j, cell in enumerate(arr.cells[i])
            if cell and not arr.marks[i][j] and not (i == 0 and j in self.phi)
        ]

    def key(self):
        return (self.array.key(), _freeze_map(self.phi))

    def __eq__(self, other) -> bool:
        return isinstance(other, ArrowedArray) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"ArrowedArray({self.array!r}, phi={dict(sorted(self.phi.items()))})"


def check_arrowed_balance(a: ArrowedArray) -> bool:
    """Cells ``(0, j)`` and ``(1, j)`` hold equally many vertices for every ``j``."""
    return all(a.array.w(0, j) == a.array.w(1, j) for j in range(a.K))


def check_arrowed_forest(a: ArrowedArray) -> bool:
    return _paired_forest(a.array, a.phi)


def check_full(a: ArrowedArray) -> bool:
    return all(a.has_object(i, j) for i in range(2) for j in range(a.K))


def check_nonempty(a: ArrowedArray) -> bool:
    return all(a.has_object(0, j) or a.has_object(1, j) for j in range(a.K))


# substructure records


@dataclass(frozen=True)
class Gamma:
    """Fixed occupancy ``w`` (2 x K), row marks ``R1``/``R2`` and arrows ``phi``."""

    w: tuple[tuple[int, ...], tuple[int, ...]]
    R1: frozenset[int]
    R2: frozenset[int]
    phi: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        w = tuple(tuple(int(v) for v in row) for row in self.w)
        if len(w) != 2 or len(w[0]) != len(w[1]):
            raise ValueError("w must be 2 x K")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "R1", frozenset(self.R1))
        object.__setattr__(self, "R2", frozenset(self.R2))
        object.__setattr__(self, "phi", _freeze_map(self.phi))
        _check_arrows(self.phi_map, self.K, self.R1)
        if any(not 0 <= j < self.K for j in self.R1 | self.R2):
            raise ValueError("marked column out of range")

    @property
    def K(self) -> int:
        return len(self.w[0])

    @property
    def phi_map(self) -> dict[int, int]:
        return dict(self.phi)

    @property
    def s(self) -> int:
        return sum(self.w[0])


@dataclass(frozen=True)
class Delta:
    """Shared occupancy ``w`` for both rows, row-0 marks ``R1`` and arrows; row-1 marks vary."""

    w: tuple[int, ...]
    R1: frozenset[int]
    phi: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(v) for v in self.w))
        object.__setattr__(self, "R1", frozenset(self.R1))
        object.__setattr__(self, "phi", _freeze_map(self.phi))
        _check_arrows(self.phi_map, self.K, self.R1)
        if any(not 0 <= j < self.K for j in self.R1):
            raise ValueError("marked column out of range")

    @property
    def K(self) -> int:
        return len(self.w)

    @property
    def phi_map(self) -> dict[int, int]:
        return dict(self.phi)

    @property
    def s(self) -> int:
        return sum(self.w)


@dataclass(frozen=True)
class Lambda:
    """Non-critical row-0 counts ``x``, candidate root columns ``P`` and arrows ``phi``.

    Row-0 marks range over subsets of ``P``; an unmarked column of ``P``
    gets one extra (critical) vertex in each row.
    """

    x: tuple[int, ...]
    P: frozenset[int]
    phi: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        object.__setattr__(self, "P", frozenset(self.P))
        object.__setattr__(self, "phi", _freeze_map(self.phi))
        phi = self.phi_map
        _check_arrows(phi, self.K, self.P)
        if any(not 0 <= j < self.K for j in self.P):
            raise ValueError("column of P out of range")
        allowed = set(phi) | self.P
        if any(h not in allowed for h in phi.values()):
            raise ValueError("arrows of a Lambda record must point into H or P")
        if any(self.x[j] for j in range(self.K) if j not in allowed):
            raise ValueError("x must vanish outside H and P")

    @property
    def K(self) -> int:
        return len(self.x)

    @property
    def phi_map(self) -> dict[int, int]:
        return dict(self.phi)

    def s_for(self, R1: int) -> int:
        return sum(self.x) + len(self.P) - R1

    def occupancy(self, R1set: frozenset[int]) -> tuple[int, ...]:
        return tuple(
            self.x[j] + (1 if j in self.P and j not in R1set else 0) for j in range(self.K)
        )


def _check_arrows(phi: Mapping[int, int], K: int, forbidden) -> None:
    for j, h in phi.items():
        if not (0 <= j < K and 0 <= h < K):
            raise ValueError(f"arrow {j}->{h} leaves the array")
        if j in forbidden:
            raise ValueError(f"column {j} cannot hold an arrow-tail")


# brute-force counting


def _layout(w: Sequence[int]) -> list[int]:
    return [j for j, c in enumerate(w) for _ in range(c)]


def _last_index(w: Sequence[int]) -> dict[int, int]:
    out = {}
    t = 0
    for j, c in enumerate(w):
        t += c
        if c:
            out[j] = t - 1
    return out


class _Frame:
    """Everything about a two-row arrowed array except the pairing and row-1 marks."""

    def __init__(self, w0, w1, R1set, phi):
        if sum(w0) != sum(w1):
            raise ValueError("rows hold different numbers of vertices")
        self.w0, self.w1 = tuple(w0), tuple(w1)
        self.K = len(w0)
        self.R1set = frozenset(R1set)
        self.phi = dict(phi)
        self.col0 = _layout(w0)
        self.col1 = _layout(w1)
        last0 = _last_index(w0)
        self.crit0 = [(j, t) for j, t in last0.items() if j not in self.R1set and j not in self.phi]
        self.last1 = _last_index(w1)

    def bijections(self) -> Iterator[tuple[int, ...]]:
        return itertools.permutations(range(len(self.col0)))

    def row0_ok(self, perm) -> bool:
        psi = dict(self.phi)
        for j, t in self.crit0:
            psi[j] = self.col1[perm[t]]
        return reaches_roots(psi, self.R1set)

    def row1_ok(self, inv, R2set) -> bool:
        psi = {
            j: self.col0[inv[t]] for j, t in self.last1.items() if j not in R2set
        }
        return reaches_roots(psi, R2set)

    def count(self, R2sets) -> int:
        total = 0
        for perm in self.bijections():
            if not self.row0_ok(perm):
                continue
            inv = [0] * len(perm)
            for a, b in enumerate(perm):
                inv[b] = a
            for R2set in R2sets:
                if self.row1_ok(inv, R2set):
                    total += 1
        return total

    def arrays(self, R2sets) -> Iterator[ArrowedArray]:
        occ = (self.w0, self.w1)
        pos0 = _positions(self.w0, 0)
        pos1 = _positions(self.w1, 1)
        for perm in self.bijections():
            if not self.row0_ok(perm):
                continue
            inv = [0] * len(perm)
            for a, b in enumerate(perm):
                inv[b] = a
            for R2set in R2sets:
                if self.row1_ok(inv, R2set):
                    marks = [
                        [j in self.R1set for j in range(self.K)],
                        [j in R2set for j in range(self.K)],
                    ]
                    pairs = [(pos0[a], pos1[b]) for a, b in enumerate(perm)]
                    yield ArrowedArray(PairedArray.from_positions(occ, marks, pairs), self.phi)


def _positions(w, row):
    return [(row, j, t) for j, c in enumerate(w) for t in range(c)]


def _subsets(K: int, r: int) -> list[frozenset[int]]:
    return [frozenset(c) for c in itertools.combinations(range(K), r)]


def _frames(sub, R1=None, R2=None, s=None):
    """``(frame, R2 sets)`` covering every arrowed array that satisfies ``sub``."""
    K = sub.K
    if isinstance(sub, Gamma):
        if not sub.R1 or not sub.R2:
            raise ValueError("both rows need at least one marked cell")
        _expect(R1, len(sub.R1), "R1")
        _expect(R2, len(sub.R2), "R2")
        _expect(s, sub.s, "s")
        return [(_Frame(sub.w[0], sub.w[1], sub.R1, sub.phi_map), [sub.R2])]
    if isinstance(sub, Delta):
        if not sub.R1:
            raise ValueError("row 0 needs at least one marked cell")
        _expect(R1, len(sub.R1), "R1")
        _expect(s, sub.s, "s")
        if R2 is None or not 1 <= R2 <= K:
            raise ValueError("Delta needs 1 <= R2 <= K")
        return [(_Frame(sub.w, sub.w, sub.R1, sub.phi_map), _subsets(K, R2))]
    if isinstance(sub, Lambda):
        if R1 is None or not 1 <= R1 <= len(sub.P):
            raise ValueError("Lambda needs 1 <= R1 <= |P|")
        if R2 is None or not 1 <= R2 <= K:
            raise ValueError("Lambda needs 1 <= R2 <= K")
        _expect(s, sub.s_for(R1), "s")
        R2sets = _subsets(K, R2)
        out = []
        for R1set in itertools.combinations(sorted(sub.P), R1):
            R1set = frozenset(R1set)
            w = sub.occupancy(R1set)
            out.append((_Frame(w, w, R1set, sub.phi_map), R2sets))
        return out
    raise TypeError(f"not a substructure: {sub!r}")


def _expect(given, actual, name):
    if given is not None and given != actual:
        raise ValueError(f"{name}={given} is inconsistent with the substructure ({actual})")


def enumerate_substructure(sub, K: int | None = None, R1: int | None = None,
                           R2: int | None = None, s: int | None = None) -> int:
    """Brute-force number of arrowed arrays (forest condition included) satisfying ``sub``.

    ``Gamma`` fixes ``R1``, ``R2`` and ``s``; ``Delta`` needs ``R2``;
    ``Lambda`` needs ``R1`` and ``R2``. Any redundant argument given is
    checked for consistency.
    """
    _expect(K, sub.K, "K")
    return sum(frame.count(R2sets) for frame, R2sets in _frames(sub, R1, R2, s))


def iter_substructure(sub, R1: int | None = None, R2: int | None = None) -> Iterator[ArrowedArray]:
    """The arrowed arrays counted by :func:`enumerate_substructure`, built explicitly."""
    for frame, R2sets in _frames(sub, R1, R2):
        yield from frame.arrays(R2sets)


# arrow simplification


class Simplified(NamedTuple):
    substructure: object
    cyclic: bool


def _simplify_step(sub):
    """One rule application (smallest tail first), or ``None`` at a fixed point.

    Returns ``"cycle"`` when some column points to itself.
    """
    phi = sub.phi_map
    if any(j == h for j, h in phi.items()):
        return "cycle"
    roots = sub.P if isinstance(sub, Lambda) else sub.R1
    for j in sorted(phi):
        h = phi[j]
        if h in phi:
            new = dict(phi)
            new[j] = phi[h]
            return _with_phi(sub, new)
        if h in roots and not isinstance(sub, Lambda):
            new = dict(phi)
            del new[j]
            return _with_phi(sub, new, extra_root=j)
    return None


def _with_phi(sub, phi, extra_root=None):
    if isinstance(sub, Gamma):
        R1 = sub.R1 | {extra_root} if extra_root is not None else sub.R1
        return Gamma(sub.w, R1, sub.R2, phi)
    if isinstance(sub, Delta):
        R1 = sub.R1 | {extra_root} if extra_root is not None else sub.R1
        return Delta(sub.w, R1, phi)
    return Lambda(sub.x, sub.P, phi)


def arrow_simplify_steps(sub) -> Iterator[object]:
    """Yield ``sub`` and every intermediate substructure up to the fixed point.

    Stops early (after yielding the self-loop) if ``phi`` has a cycle.
    """
    yield sub
    while True:
        nxt = _simplify_step(sub)
        if nxt is None or nxt == "cycle":
            return
        sub = nxt
        yield sub


def arrow_simplify(sub) -> Simplified:
    """Apply both simplification rules (only the second for Lambda) until none applies."""
    last = sub
    for last in arrow_simplify_steps(sub):
        pass
    return Simplified(last, _simplify_step(last) == "cycle")


def is_irreducible(sub) -> bool:
    return _simplify_step(sub) is None


def is_admissible(sub: Delta) -> bool:
    """Irreducible, and every arrow-head column holds a vertex."""
    return is_irreducible(sub) and all(sub.w[h] > 0 for h in sub.phi_map.values())


def gamma_is_full(sub: Gamma) -> bool:
    phi = sub.phi_map
    row0 = all(sub.w[0][j] or j in sub.R1 or j in phi for j in range(sub.K))
    row1 = all(sub.w[1][j] or j in sub.R2 for j in range(sub.K))
    return row0 and row1


def phi_reaches(phi: Mapping[int, int], roots) -> bool:
    """Every arrow chain ends in ``roots``."""
    return reaches_roots(phi, roots)


# column types

COLUMN_TYPES = ("A", "B", "C", "D", "Abar", "Atilde", "Cbar", "Ctilde")


@dataclass(frozen=True)
class ColumnTypePartition:
    """Type of each column of an irreducible Gamma, with per-type tallies.

    ``vertices(t, row)`` is the lowercase quantity of the closed form for
    Gamma: e.g. ``vertices("B", 1)`` is ``b_2`` (rows here are 0-based).
    """

    types: tuple[str, ...]
    w: tuple[tuple[int, ...], tuple[int, ...]]

    def count(self, t: str) -> int:
        return sum(1 for x in self.types if x == t)

    def vertices(self, t: str, row: int) -> int:
        return sum(self.w[row][j] for j, x in enumerate(self.types) if x == t)

    def columns(self, t: str) -> frozenset[int]:
        return frozenset(j for j, x in enumerate(self.types) if x == t)


def classify_columns(sub: Gamma) -> ColumnTypePartition:
    if not is_irreducible(sub):
        raise ValueError("column types are defined for irreducible substructures only")
    phi = sub.phi_map
    base = {}
    for j in range(sub.K):
        if j in phi:
            continue
        base[j] = {(False, False): "A", (True, False): "B", (False, True): "C", (True, True): "D"}[
            (j in sub.R1, j in sub.R2)
        ]
    types = []
    for j in range(sub.K):
        if j in base:
            types.append(base[j])
            continue
        head = base[phi[j]]
        if head not in ("A", "C"):
            raise AssertionError("irreducible arrow points at a row-0 marked column")
        types.append(head + ("tilde" if j in sub.R2 else "bar"))
    return ColumnTypePartition(tuple(types), sub.w)


def substructure_arrays_compatible(a: ArrowedArray, sub) -> bool:
    """Whether the arrowed array ``a`` satisfies the constraints of ``sub`` (forest included)."""
    arr = a.array
    if a.phi != sub.phi_map or arr.K != sub.K:
        return False
    occ = arr.occupancy()
    marks0 = arr.marked_columns(0)
    if isinstance(sub, Gamma):
        ok = occ == sub.w and marks0 == sub.R1 and arr.marked_columns(1) == sub.R2
    elif isinstance(sub, Delta):
        ok = occ == (sub.w, sub.w) and marks0 == sub.R1
    else:
        ok = marks0 <= sub.P and marks0 and occ == (sub.occupancy(marks0),) * 2
    return bool(ok) and check_arrowed_forest(a)
