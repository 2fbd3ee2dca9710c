"""Paired and partially-paired arrays, their conditions, and row labelling.

A :class:`PairedArray` is an ``n x K`` grid. Each cell holds an ordered
list of integer vertex ids (left to right) and may be marked. Pairs are
kept in a symmetric ``partner`` map; a vertex missing from it is
*unpaired* (only legal in partially-paired arrays).

Vertex ids are bookkeeping only. Equality and hashing go through
:meth:`PairedArray.key`, which replaces every id by its position
``(row, column, index)``.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

Position = tuple[int, int, int]


class PairedArray:
    __slots__ = ("cells", "marks", "partner", "_loc", "_key")

    def __init__(
        self,
        cells: Sequence[Sequence[Sequence[int]]],
        marks: Sequence[Sequence[bool]],
        partner: Mapping[int, int],
    ):
        self.cells = tuple(tuple(tuple(c) for c in row) for row in cells)
        self.marks = tuple(tuple(bool(m) for m in row) for row in marks)
        if len(self.marks) != len(self.cells) or any(
            len(m) != len(r) for m, r in zip(self.marks, self.cells)
        ):
            raise ValueError("marks shape does not match cells")
        widths = {len(r) for r in self.cells}
        if len(widths) > 1:
            raise ValueError("ragged array")
        loc: dict[int, Position] = {}
        for i, row in enumerate(self.cells):
            for j, cell in enumerate(row):
                for t, v in enumerate(cell):
                    if v in loc:
                        raise ValueError(f"vertex id {v} appears twice")
                    loc[v] = (i, j, t)
        self._loc = loc
        partner = dict(partner)
        for u, v in partner.items():
            if u not in loc or v not in loc:
                raise ValueError(f"pair {u}-{v} refers to a missing vertex")
            if u == v or partner.get(v) != u:
                raise ValueError("partner map must be a fixed-point-free involution")
        self.partner = partner
        self._key = None

    # construction helpers

    @classmethod
    def from_positions(
        cls,
        occupancy: Sequence[Sequence[int]],
        marks: Sequence[Sequence[bool]],
        pairs: Iterable[tuple[Position, Position]],
    ) -> "PairedArray":
        """Build from cell sizes and pairs given as ``(row, col, index)`` positions."""
        ids: dict[Position, int] = {}
        cells = []
        nxt = 0
        for i, row in enumerate(occupancy):
            crow = []
            for j, w in enumerate(row):
                cell = []
                for t in range(w):
                    ids[(i, j, t)] = nxt
                    cell.append(nxt)
                    nxt += 1
                crow.append(cell)
            cells.append(crow)
        partner = {}
        for a, b in pairs:
            u, v = ids[tuple(a)], ids[tuple(b)]
            partner[u] = v
            partner[v] = u
        return cls(cells, marks, partner)

    # basic shape

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def K(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def w(self, i: int, j: int) -> int:
        return len(self.cells[i][j])

    def occupancy(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(len(c) for c in row) for row in self.cells)

    def locate(self, v: int) -> Position:
        return self._loc[v]

    def vertices(self):
        return iter(self._loc)

    def row_vertices(self, i: int) -> list[int]:
        return [v for cell in self.cells[i] for v in cell]

    def marked_columns(self, i: int) -> frozenset[int]:
        return frozenset(j for j, m in enumerate(self.marks[i]) if m)

    def R(self, i: int) -> int:
        return sum(self.marks[i])

    def p(self, i: int) -> int:
        return sum(len(c) for c in self.cells[i])

    def is_partial(self) -> bool:
        return len(self.partner) < len(self._loc)

    def mixed_counts(self) -> dict[tuple[int, int], int]:
        """Number of mixed pairs per row pair ``(i, k)``, ``i < k``."""
        out: dict[tuple[int, int], int] = {}
        for u, v in self.partner.items():
            a, b = self._loc[u][0], self._loc[v][0]
            if a < b:
                out[(a, b)] = out.get((a, b), 0) + 1
        return out

    def loop_counts(self) -> tuple[int, ...]:
        q = [0] * self.n
        for u, v in self.partner.items():
            if u < v and self._loc[u][0] == self._loc[v][0]:
                q[self._loc[u][0]] += 1
        return tuple(q)

    def is_vertical(self) -> bool:
        return all(self._loc[u][0] != self._loc[v][0] for u, v in self.partner.items())

    def critical_vertices(self, i: int) -> list[int]:
        """Rightmost vertices of unmarked cells in row ``i``."""
        return [
            cell[-1]
            for j, cell in enumerate(self.cells[i])
            if cell and not self.marks[i][j]
        ]

    # identity

    def key(self):
        if self._key is None:
            pairs = sorted(
                (self._loc[u], self._loc[v]) for u, v in self.partner.items() if self._loc[u] < self._loc[v]
            )
            self._key = (self.occupancy(), self.marks, tuple(pairs))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, PairedArray) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        occ, marks, pairs = self.key()
        return f"PairedArray(occupancy={occ}, marks={marks}, pairs={pairs})"

    # rebuilding

    def replace(self, cells=None, marks=None, partner=None) -> "PairedArray":
        return PairedArray(
            self.cells if cells is None else cells,
            self.marks if marks is None else marks,
            self.partner if partner is None else partner,
        )

    def fresh_ids(self, count: int) -> list[int]:
        start = max(self._loc, default=-1) + 1
        return list(range(start, start + count))


def _mutable_cells(arr: PairedArray) -> list[list[list[int]]]:
    return [[list(c) for c in row] for row in arr.cells]


def _mutable_marks(arr: PairedArray) -> list[list[bool]]:
    return [list(row) for row in arr.marks]


# conditions


def check_balance(arr: PairedArray) -> bool:
    """Per cell: mixed vertices present == mixed pairs from this row landing in this column."""
    n, K = arr.n, arr.K
    present = [[0] * K for _ in range(n)]
    incoming = [[0] * K for _ in range(n)]
    for u, v in arr.partner.items():
        iu, ju, _ = arr.locate(u)
        iv, jv, _ = arr.locate(v)
        if iu == iv:
            continue
        present[iu][ju] += 1
        # pair {u, v}: u in row iu, v in column jv outside row iu
        incoming[iu][jv] += 1
    return present == incoming


def _split_counts(arr: PairedArray) -> dict[tuple[int, int, int], int]:
    """``s_{i,k,j}``: vertices of cell ``(i, j)`` paired into row ``k``."""
    out: dict[tuple[int, int, int], int] = {}
    for u, v in arr.partner.items():
        iu, ju, _ = arr.locate(u)
        iv = arr.locate(v)[0]
        if iu != iv:
            out[(iu, iv, ju)] = out.get((iu, iv, ju), 0) + 1
    return out


def _is_forest(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def check_tree_balance(arr: PairedArray) -> bool:
    """Balance via the symmetric split counts ``s_{i,k,j} == s_{k,i,j}``.

    Only valid when the mixed-pair support graph has no cycles.
    """
    if not _is_forest(arr.n, arr.mixed_counts()):
        raise ValueError("support graph of the array has a cycle")
    split = _split_counts(arr)
    return all(split.get((k, i, j), 0) == c for (i, k, j), c in split.items())


def forest_function(arr: PairedArray, i: int, phi: Mapping[int, int] | None = None) -> dict[int, int]:
    """``psi_i``: unmarked nonempty column -> column of its rightmost vertex's partner.

    ``phi`` (arrow tails of an arrowed array's first row) overrides the
    rightmost-vertex rule on its domain.
    """
    phi = phi or {}
    out: dict[int, int] = {}
    for j, cell in enumerate(arr.cells[i]):
        if arr.marks[i][j]:
            continue
        if j in phi:
            out[j] = phi[j]
            continue
        if not cell:
            continue
        v = cell[-1]
        if v not in arr.partner:
            raise ValueError(f"critical vertex in cell ({i},{j}) is unpaired")
        out[j] = arr.locate(arr.partner[v])[1]
    return out


def reaches_roots(psi: Mapping[int, int], roots: Iterable[int]) -> bool:
    """True iff iterating ``psi`` from every domain point hits ``roots``."""
    roots = set(roots)
    good: set[int] = set()
    for start in psi:
        path = []
        j = start
        seen = set()
        while True:
            if j in roots or j in good:
                good.update(path)
                break
            if j not in psi or j in seen:
                return False
            seen.add(j)
            path.append(j)
            j = psi[j]
    return True


def check_forest(arr: PairedArray, phi: Mapping[int, int] | None = None) -> bool:
    for i in range(arr.n):
        psi = forest_function(arr, i, phi if i == 0 else None)
        if not reaches_roots(psi, arr.marked_columns(i)):
            return False
    return True


def is_proper(arr: PairedArray) -> bool:
    return check_balance(arr) and check_forest(arr)


# labelling, extraction, insertion


def row_objects(arr: PairedArray, i: int) -> list[tuple[int, str, int | None]]:
    """Objects of row ``i`` left to right as ``(column, kind, vertex id)``.

    A marked cell's box comes after its vertices.
    """
    out = []
    for j, cell in enumerate(arr.cells[i]):
        for v in cell:
            out.append((j, "vertex", v))
        if arr.marks[i][j]:
            out.append((j, "box", None))
    return out


def label_row(arr: PairedArray, i: int, labels: Iterable[int]) -> list[tuple[int, tuple[int, str, int | None]]]:
    """Pair the sorted ``labels`` with row ``i``'s objects from left to right."""
    objs = row_objects(arr, i)
    labels = sorted(labels)
    if len(labels) != len(objs):
        raise ValueError(f"row {i} has {len(objs)} objects, got {len(labels)} labels")
    return list(zip(labels, objs))


def extract(arr: PairedArray, i: int, V: Iterable[int]) -> tuple[PairedArray, frozenset[int]]:
    """Delete unpaired vertices ``V`` from row ``i``; return the array and their labels."""
    V = set(V)
    for v in V:
        if arr.locate(v)[0] != i:
            raise ValueError(f"vertex {v} is not in row {i}")
        if v in arr.partner:
            raise ValueError(f"vertex {v} is paired")
        _, j, t = arr.locate(v)
        if t == arr.w(i, j) - 1 and not arr.marks[i][j]:
            raise ValueError(f"vertex {v} is the rightmost object of its cell")
    size = arr.p(i) + arr.R(i)
    labelled = label_row(arr, i, range(1, size + 1))
    W = frozenset(lab for lab, (_, kind, v) in labelled if kind == "vertex" and v in V)
    cells = _mutable_cells(arr)
    cells[i] = [[v for v in cell if v not in V] for cell in cells[i]]
    return arr.replace(cells=cells), W


def insert(arr: PairedArray, i: int, W: Iterable[int], new_ids: Sequence[int] | None = None) -> tuple[PairedArray, list[int]]:
    """Insert unpaired vertices into row ``i`` at the label positions ``W``.

    Returns the new array and the inserted ids, in increasing label order.
    """
    W = sorted(set(W))
    y = len(W)
    total = arr.p(i) + arr.R(i) + y
    if W and (W[0] < 1 or W[-1] > total - 1):
        raise ValueError(f"W must be a subset of [1, {total - 1}]")
    if new_ids is None:
        new_ids = arr.fresh_ids(y)
    if len(new_ids) != y:
        raise ValueError("need one id per inserted vertex")
    existing_labels = [lab for lab in range(1, total + 1) if lab not in set(W)]
    labelled = dict(label_row(arr, i, existing_labels))
    # new vertices waiting in front of each existing object, keyed by that object's label
    before: dict[int, list[int]] = {}
    Wset = set(W)
    for lab, vid in zip(W, new_ids):
        nxt = lab + 1
        while nxt in Wset:
            nxt += 1
        before.setdefault(nxt, []).append(vid)
    cells: list[list[int]] = [[] for _ in range(arr.K)]
    for lab in existing_labels:
        j, kind, v = labelled[lab]
        cells[j].extend(before.get(lab, []))
        if kind == "vertex":
            cells[j].append(v)
    all_cells = _mutable_cells(arr)
    all_cells[i] = cells
    return arr.replace(cells=all_cells), list(new_ids)


# debug output


def render(arr: PairedArray, phi: Mapping[int, int] | None = None) -> str:
    """ASCII picture: one line per row, ``*`` per vertex, ``#`` for a mark.

    Pairs are listed below as ``(row,col,idx)-(row,col,idx)``; arrows of an
    arrowed array as ``j->j'``.
    """
    lines = []
    for i in range(arr.n):
        cells = []
        for j in range(arr.K):
            body = "*" * arr.w(i, j) + ("#" if arr.marks[i][j] else "")
            cells.append(body.ljust(4))
        lines.append(f"{i}: |" + "|".join(cells) + "|")
    _, _, pairs = arr.key()
    lines.append("pairs: " + " ".join(f"{a}-{b}" for a, b in pairs))
    if phi:
        lines.append("arrows: " + " ".join(f"{j}->{h}" for j, h in sorted(phi.items())))
    return "\n".join(lines)


def forest_dot(arr: PairedArray, i: int, phi: Mapping[int, int] | None = None) -> str:
    """Graphviz description of row ``i``'s forest-condition digraph; roots drawn as boxes."""
    psi = forest_function(arr, i, phi if i == 0 else None)
    roots = sorted(arr.marked_columns(i))
    nodes = sorted(set(psi) | set(psi.values()) | set(roots))
    out = [f"digraph psi{i} {{"]
    for j in nodes:
        shape = "box" if j in roots else "circle"
        out.append(f"  c{j} [label=\"{j}\", shape={shape}];")
    for j, h in sorted(psi.items()):
        out.append(f"  c{j} -> c{h};")
    out.append("}")
    return "\n".join(out)
