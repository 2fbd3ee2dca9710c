"""Pairings and permutations on the multi-row ground set ``[p_1, ..., p_n]``.

Rows and positions are 0-based throughout: row ``i`` holds the ground
elements ``(i, 0), ..., (i, p_i - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence


class GroundElement(NamedTuple):
    row: int
    position: int

    def __repr__(self) -> str:
        return f"({self.row},{self.position})"


@dataclass(frozen=True)
class MapParameters:
    """Vertex count ``n``, loop counts ``q`` and mixed-edge counts ``s``.

    ``s`` is kept as a mapping ``{(i, k): count}`` with ``i < k`` and only
    nonzero entries; use :meth:`s_between` for symmetric access.
    """

    q: tuple[int, ...]
    s: tuple[tuple[tuple[int, int], int], ...] = ()
    _s_map: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        q = tuple(int(v) for v in self.q)
        if not q:
            raise ValueError("need at least one row")
        if any(v < 0 for v in q):
            raise ValueError(f"loop counts must be non-negative: {q}")
        n = len(q)
        smap: dict[tuple[int, int], int] = {}
        items = self.s.items() if isinstance(self.s, dict) else self.s
        for (i, k), v in items:
            i, k, v = int(i), int(k), int(v)
            if i == k or not (0 <= i < n and 0 <= k < n):
                raise ValueError(f"bad row pair {(i, k)} for n={n}")
            if v < 0:
                raise ValueError(f"mixed counts must be non-negative: {(i, k)}={v}")
            key = (min(i, k), max(i, k))
            smap[key] = smap.get(key, 0) + v
        smap = {key: v for key, v in sorted(smap.items()) if v}
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "s", tuple(smap.items()))
        object.__setattr__(self, "_s_map", smap)

    @classmethod
    def from_upper(cls, q: Sequence[int], upper: Sequence[int]) -> "MapParameters":
        """Build from the upper triangle listed row-major: s01, s02, ..., s12, ..."""
        n = len(q)
        pairs = [(i, k) for i in range(n) for k in range(i + 1, n)]
        if len(upper) != len(pairs):
            raise ValueError(f"expected {len(pairs)} upper-triangle entries for n={n}, got {len(upper)}")
        return cls(tuple(q), tuple(zip(pairs, upper)))

    @property
    def n(self) -> int:
        return len(self.q)

    def s_between(self, i: int, k: int) -> int:
        if i == k:
            return 0
        return self._s_map.get((min(i, k), max(i, k)), 0)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._s_map)

    def mixed_degree(self, i: int) -> int:
        """``s_i``, the number of mixed elements in row ``i``."""
        return sum(v for (a, b), v in self._s_map.items() if i in (a, b))

    @property
    def degrees(self) -> tuple[int, ...]:
        """``p_i = 2 q_i + s_i``."""
        return tuple(2 * self.q[i] + self.mixed_degree(i) for i in range(self.n))

    @property
    def pair_count(self) -> int:
        """``d``, the total number of pairs."""
        return sum(self.q) + sum(self._s_map.values())

    def ground_set(self) -> list[GroundElement]:
        return [GroundElement(i, x) for i, p in enumerate(self.degrees) for x in range(p)]

    def upper(self) -> list[int]:
        n = self.n
        return [self.s_between(i, k) for i in range(n) for k in range(i + 1, n)]


class LabeledPermutation:
    """A bijection of a finite set of :class:`GroundElement`."""

    __slots__ = ("_map",)

    def __init__(self, mapping: dict[GroundElement, GroundElement]):
        if set(mapping.values()) != set(mapping):
            raise ValueError("mapping is not a permutation of its domain")
        self._map = dict(mapping)

    @classmethod
    def identity(cls, elements: Iterable[GroundElement]) -> "LabeledPermutation":
        return cls({e: e for e in elements})

    @property
    def domain(self) -> frozenset[GroundElement]:
        return frozenset(self._map)

    def __call__(self, e: GroundElement) -> GroundElement:
        return self._map[e]

    def __len__(self) -> int:
        return len(self._map)

    def items(self):
        return self._map.items()

    def cycles(self) -> list[tuple[GroundElement, ...]]:
        seen: set[GroundElement] = set()
        out = []
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc = []
            e = start
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                e = self._map[e]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledPermutation) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        body = "".join("(" + " ".join(map(repr, c)) + ")" for c in self.cycles())
        return f"LabeledPermutation({body or '()'})"


def compose(a: LabeledPermutation, b: LabeledPermutation) -> LabeledPermutation:
    """``a o b``, i.e. ``x -> a(b(x))``."""
    if a.domain != b.domain:
        raise ValueError("permutations act on different ground sets")
    return LabeledPermutation({x: a(y) for x, y in b.items()})


def invert(a: LabeledPermutation) -> LabeledPermutation:
    return LabeledPermutation({y: x for x, y in a.items()})


def cycle_count(perm: LabeledPermutation) -> int:
    """Number of orbits, fixed points included; zero on the empty set."""
    return len(perm.cycles())


def canonical_cycle(params: MapParameters) -> LabeledPermutation:
    """``gamma``: one cycle ``(i,0) -> (i,1) -> ... -> (i,p_i-1) -> (i,0)`` per row."""
    mapping = {}
    for i, p in enumerate(params.degrees):
        for x in range(p):
            mapping[GroundElement(i, x)] = GroundElement(i, (x + 1) % p)
    return LabeledPermutation(mapping)


class Pairing:
    """A perfect matching of a ground set, stored as sorted 2-tuples."""

    __slots__ = ("pairs", "_partner")

    def __init__(self, pairs: Iterable[tuple[GroundElement, GroundElement]]):
        normalized = []
        partner: dict[GroundElement, GroundElement] = {}
        for u, v in pairs:
            u, v = GroundElement(*u), GroundElement(*v)
            if u == v:
                raise ValueError(f"element {u} paired with itself")
            if u in partner or v in partner:
                raise ValueError(f"element used twice in pairing: {u}, {v}")
            partner[u] = v
            partner[v] = u
            normalized.append((min(u, v), max(u, v)))
        self.pairs = tuple(sorted(normalized))
        self._partner = partner

    def partner(self, e: GroundElement) -> GroundElement:
        return self._partner[e]

    def as_permutation(self) -> LabeledPermutation:
        return LabeledPermutation(self._partner)

    def profile(self, n: int) -> tuple[tuple[int, ...], dict[tuple[int, int], int]]:
        """Non-mixed counts per row and mixed counts per row pair."""
        q = [0] * n
        s: dict[tuple[int, int], int] = {}
        for u, v in self.pairs:
            if u.row == v.row:
                q[u.row] += 1
            else:
                key = (min(u.row, v.row), max(u.row, v.row))
                s[key] = s.get(key, 0) + 1
        return tuple(q), s

    def matches(self, params: MapParameters) -> bool:
        q, s = self.profile(params.n)
        ground = set(params.ground_set())
        return q == params.q and s == dict(params.s) and set(self._partner) == ground

    def __eq__(self, other) -> bool:
        return isinstance(other, Pairing) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __iter__(self) -> Iterator[tuple[GroundElement, GroundElement]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        return "Pairing(" + ", ".join(f"{{{u!r},{v!r}}}" for u, v in self.pairs) + ")"


def face_count(pairing: Pairing, params: MapParameters) -> int:
    """Number of cycles of ``mu gamma^{-1}``."""
    gamma = canonical_cycle(params)
    return cycle_count(compose(pairing.as_permutation(), invert(gamma)))


@dataclass(frozen=True)
class SupportGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def neighbours(self, i: int) -> list[int]:
        return sorted(k for e in self.edges for k in e if i in e and k != i)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for k in self.neighbours(i):
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return len(seen) == self.n


def support_graph(params: MapParameters) -> SupportGraph:
    return SupportGraph(params.n, frozenset(params.edges))


def is_tree(g: SupportGraph) -> bool:
    return len(g.edges) == g.n - 1 and g.is_connected()


def edge_ordering(g: SupportGraph) -> list[tuple[int, int]]:
    """Edges ``e_0, ..., e_{n-2}`` of a tree with ``j`` an endpoint of ``e_j``.

    Repeatedly strips the smallest leaf other than the last vertex
    ``n - 1`` and assigns it the edge it hangs from.
    """
    if not is_tree(g):
        raise ValueError("edge ordering needs a tree")
    remaining = set(g.edges)
    alive = set(range(g.n))
    assigned: dict[int, tuple[int, int]] = {}
    root = g.n - 1
    while len(alive) > 1:
        leaf = min(
            v for v in alive
            if v != root and sum(1 for e in remaining if v in e) == 1
        )
        edge = next(e for e in remaining if leaf in e)
        assigned[leaf] = edge
        remaining.remove(edge)
        alive.remove(leaf)
    return [assigned[j] for j in range(g.n - 1)]
