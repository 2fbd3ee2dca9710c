"""Removing a leaf row from a tree-shaped proper vertical array, and putting it back.

``decompose_row`` splits an array into a smaller proper vertical array
``beta``, a label set ``W`` recording where the leaf's non-critical
partners sat, and an arrowed array ``sigma`` holding the leaf row's
pairs. ``recompose_row`` is its inverse.
"""

from __future__ import annotations

from typing import NamedTuple

from ..core import MapParameters, is_tree, support_graph
from .arrowed import ArrowedArray, Lambda, check_arrowed_balance, check_arrowed_forest
from .paired import PairedArray, extract, forest_function, insert, is_proper


class Decomposition(NamedTuple):
    beta: PairedArray
    W: frozenset[int]
    sigma: ArrowedArray
    P: int
    parent: int


def _parent_of(arr: PairedArray, leaf: int) -> int:
    counts = arr.mixed_counts()
    params = MapParameters((0,) * arr.n, counts)
    if not is_tree(support_graph(params)):
        raise ValueError("support graph of the array is not a tree")
    nbrs = [k for k in range(arr.n) if params.s_between(leaf, k)]
    if len(nbrs) != 1:
        raise ValueError(f"row {leaf} is not a leaf of the support graph")
    return nbrs[0]


def _drop_row(rows, leaf):
    return [r for i, r in enumerate(rows) if i != leaf]


def decompose_row(arr: PairedArray, leaf: int) -> Decomposition:
    """Strip row ``leaf`` (a leaf of the support graph) from a proper vertical array."""
    if not arr.is_vertical() or arr.is_partial():
        raise ValueError("need a fully paired vertical array")
    if not is_proper(arr):
        raise ValueError("array is not proper")
    m = _parent_of(arr, leaf)
    K = arr.K
    critical = set(arr.critical_vertices(m))
    partners = {arr.partner[u] for u in arr.row_vertices(leaf)}
    U = partners & critical
    V = partners - critical

    # sigma: row 0 copies the leaf's partners in row m, row 1 copies the leaf row
    sigma_cells = [
        [[v for v in arr.cells[m][j] if v in partners] for j in range(K)],
        [list(arr.cells[leaf][j]) for j in range(K)],
    ]
    sigma_marks = [list(arr.marks[m]), list(arr.marks[leaf])]
    sigma_partner = {}
    for u in arr.row_vertices(leaf):
        sigma_partner[u] = arr.partner[u]
        sigma_partner[arr.partner[u]] = u
    phi = {}
    for j, cell in enumerate(arr.cells[m]):
        if cell and not arr.marks[m][j] and cell[-1] not in U:
            phi[j] = arr.locate(arr.partner[cell[-1]])[1]
    sigma = ArrowedArray(PairedArray(sigma_cells, sigma_marks, sigma_partner), phi)

    # alpha'': mark U cells, drop the leaf row and its pairs, delete U
    cells = [[list(c) for c in row] for row in arr.cells]
    marks = [list(r) for r in arr.marks]
    for u in U:
        marks[m][arr.locate(u)[1]] = True
    cells[m] = [[v for v in c if v not in U] for c in cells[m]]
    gone = set(arr.row_vertices(leaf)) | partners
    partner = {a: b for a, b in arr.partner.items() if a not in gone}
    reduced = PairedArray(_drop_row(cells, leaf), _drop_row(marks, leaf), partner)
    m_new = m - (m > leaf)
    beta, W = extract(reduced, m_new, V)
    return Decomposition(beta, W, sigma, arr.R(m) + len(U), m)


def lambda_for(beta: PairedArray, row: int, W) -> tuple[Lambda, list[int]]:
    """The substructure ``Lambda_{beta,row,W}`` and the per-column insertion counts."""
    inserted, ids = insert(beta, row, W)
    new = set(ids)
    x = [sum(1 for v in inserted.cells[row][j] if v in new) for j in range(beta.K)]
    P = beta.marked_columns(row)
    phi = forest_function(beta, row)
    return Lambda(x, P, phi), x


def recompose_row(beta: PairedArray, W, sigma: ArrowedArray, leaf: int, parent: int) -> PairedArray:
    """Inverse of :func:`decompose_row`; ``leaf`` and ``parent`` index rows of the result."""
    if parent == leaf:
        raise ValueError("parent row must differ from the leaf row")
    if not 0 <= leaf <= beta.n or not 0 <= parent <= beta.n:
        raise ValueError("row index out of range")
    m = parent - (parent > leaf)
    K = beta.K
    if sigma.K != K:
        raise ValueError("sigma has a different number of columns")
    lam, x = lambda_for(beta, m, W)
    _check_compatible(sigma, lam, x)

    sig = sigma.array
    beta1, V_ids = insert(beta, m, W)
    cells = [[list(c) for c in row] for row in beta1.cells]
    marks = [list(r) for r in beta1.marks]
    partner = dict(beta1.partner)
    next_id = max(beta1.fresh_ids(1)[0], max(sig.vertices(), default=-1) + 1)

    # correspondence between sigma's row-0 vertices and row m of the result
    V_by_col: dict[int, list[int]] = {}
    new_set = set(V_ids)
    for j in range(K):
        V_by_col[j] = [v for v in cells[m][j] if v in new_set]
    corr: dict[int, int] = {}
    U_cols = []
    for j in range(K):
        sig_cell = list(sig.cells[0][j])
        crit = bool(sig_cell) and not sig.marks[0][j] and j not in sigma.phi
        body = sig_cell[:-1] if crit else sig_cell
        for sv, av in zip(body, V_by_col[j]):
            corr[sv] = av
        if crit:
            u = next_id
            next_id += 1
            cells[m][j].append(u)
            corr[sig_cell[-1]] = u
            U_cols.append(j)

    leaf_cells = []
    for j in range(K):
        cell = []
        for sv in sig.cells[1][j]:
            corr[sv] = next_id
            cell.append(next_id)
            next_id += 1
        leaf_cells.append(cell)
    for a, b in sig.partner.items():
        partner[corr[a]] = corr[b]
    for j in U_cols:
        marks[m][j] = False
    cells.insert(leaf, leaf_cells)
    marks.insert(leaf, list(sig.marks[1]))
    return PairedArray(cells, marks, partner)


def _check_compatible(sigma: ArrowedArray, lam: Lambda, x) -> None:
    sig = sigma.array
    marks0 = sig.marked_columns(0)
    if not marks0 <= lam.P:
        raise ValueError("row-0 marks of sigma are not inside the marked columns of beta")
    if not marks0:
        raise ValueError("sigma needs at least one row-0 mark")
    if sigma.phi != lam.phi_map:
        raise ValueError("arrows of sigma differ from the forest function of beta")
    if sig.occupancy() != (lam.occupancy(marks0),) * 2:
        raise ValueError("sigma's occupancy does not match the inserted positions")
    if not check_arrowed_balance(sigma) or not check_arrowed_forest(sigma):
        raise ValueError("sigma violates the balance or forest condition")
