import itertools
import random
from fractions import Fraction
from math import comb, factorial

import pytest

from treemaps.arrays.arrowed import (
    ArrowedArray,
    ColumnTypePartition,
    Delta,
    Gamma,
    Lambda,
    arrow_simplify,
    arrow_simplify_steps,
    check_arrowed_balance,
    check_arrowed_forest,
    check_full,
    check_nonempty,
    classify_columns,
    enumerate_substructure,
    gamma_is_full,
    is_irreducible,
    iter_substructure,
    substructure_arrays_compatible,
)
from treemaps.arrays.closed_forms import t_delta, t_delta_admissible, t_gamma, t_gamma_of, t_lambda
from treemaps.arrays.paired import PairedArray
from treemaps.checks import delta_instances, lambda_instances
from treemaps.arrays.vertical import compositions

T, F = True, False


def arrowed(occ, marks, pairs, phi=None):
    return ArrowedArray(PairedArray.from_positions(occ, marks, pairs), phi)


def permuted(a, perm):
    inv = {old: new for new, old in enumerate(perm)}
    arr = a.array
    cells = [[row[perm[j]] for j in range(arr.K)] for row in arr.cells]
    marks = [[row[perm[j]] for j in range(arr.K)] for row in arr.marks]
    phi = {inv[j]: inv[h] for j, h in a.phi.items()}
    return ArrowedArray(PairedArray(cells, marks, arr.partner), phi)


def small_gammas(Kmax=3, smax=2):
    """Gamma records with arbitrary arrows (reducible ones included)."""
    for K in range(1, Kmax + 1):
        for s in range(1, smax + 1):
            comps = compositions(s, K)
            for R1 in itertools.chain.from_iterable(itertools.combinations(range(K), r) for r in range(1, K + 1)):
                rest = [j for j in range(K) if j not in R1]
                for tails in itertools.chain.from_iterable(itertools.combinations(rest, r) for r in range(len(rest) + 1)):
                    for heads in itertools.product(range(K), repeat=len(tails)):
                        for R2 in [frozenset({0}), frozenset(range(K))]:
                            for w0, w1 in itertools.product(comps, repeat=2):
                                yield Gamma((w0, w1), R1, R2, dict(zip(tails, heads)))


def gamma_is_nonempty(g):
    phi = g.phi_map
    return all(g.w[0][j] or g.w[1][j] or j in g.R1 or j in g.R2 or j in phi for j in range(g.K))


# arrowed arrays


def test_arrowed_array_validation():
    with pytest.raises(ValueError):
        ArrowedArray(PairedArray([[[0]]], [[T]], {}))
    with pytest.raises(ValueError):
        arrowed([[1, 0], [1, 0]], [[T, F], [T, F]], [((0, 0, 0), (1, 0, 0))], {0: 1})
    with pytest.raises(ValueError):
        arrowed([[1, 0], [1, 0]], [[T, F], [T, F]], [((0, 0, 0), (1, 0, 0))], {1: 2})


def test_full_and_nonempty_examples():
    empty_col = arrowed([[1, 0], [1, 0]], [[T, F], [T, F]], [((0, 0, 0), (1, 0, 0))])
    assert (check_full(empty_col), check_nonempty(empty_col)) == (F, F)
    boxes = arrowed([[1, 0], [1, 0]], [[T, T], [T, T]], [((0, 0, 0), (1, 0, 0))])
    assert (check_full(boxes), check_nonempty(boxes)) == (T, T)
    # an arrow-tail is an object
    tail = arrowed([[1, 0], [1, 0]], [[T, F], [T, T]], [((0, 0, 0), (1, 0, 0))], {1: 0})
    assert check_full(tail)


def test_full_implies_nonempty():
    rng = random.Random(7)
    pool = []
    for d in delta_instances(Kmax=3, smax=3):
        for R2 in range(1, d.K + 1):
            pool.extend(iter_substructure(d, R2=R2))
    sample = rng.sample(pool, 1000)
    assert any(check_full(a) for a in sample)
    for a in sample:
        assert not check_full(a) or check_nonempty(a)


def test_column_permutation_preserves_arrowed_verdicts():
    rng = random.Random(11)
    for d in delta_instances(Kmax=3, smax=2):
        for a in iter_substructure(d, R2=1):
            perm = list(range(a.K))
            rng.shuffle(perm)
            b = permuted(a, perm)
            assert check_arrowed_balance(b) == check_arrowed_balance(a)
            assert check_arrowed_forest(b) == check_arrowed_forest(a)


# substructure records and brute-force counts


def test_record_validation():
    with pytest.raises(ValueError):
        Gamma(((1,), (1, 0)), {0}, {0})
    with pytest.raises(ValueError):
        Delta((1, 0), {0}, {0: 1})
    with pytest.raises(ValueError):
        Lambda((0, 1), {0})
    with pytest.raises(ValueError):
        Lambda((0, 0, 0), {0}, {1: 2})


def test_enumerate_examples():
    assert enumerate_substructure(Lambda((1, 0), {0}), K=2, R1=1, R2=1, s=1) == 1
    assert enumerate_substructure(Delta((1, 0), {0}), K=2, R2=1, s=1) == 1
    cyc = Gamma(((1, 1, 0), (1, 1, 0)), {2}, {2}, {0: 1, 1: 0})
    assert enumerate_substructure(cyc) == 0


def test_enumerate_rejects_inconsistent_arguments():
    with pytest.raises(ValueError):
        enumerate_substructure(Delta((1, 0), {0}), K=3, R2=1)
    with pytest.raises(ValueError):
        enumerate_substructure(Delta((1, 0), {0}), R2=1, s=2)
    with pytest.raises(ValueError):
        enumerate_substructure(Delta((1, 0), {0}))
    with pytest.raises(ValueError):
        enumerate_substructure(Lambda((1, 0), {0}), R1=2, R2=1)
    with pytest.raises(ValueError):
        enumerate_substructure(Gamma(((1,), (1,)), set(), {0}))


def test_iter_substructure_matches_count():
    for d in itertools.islice(delta_instances(Kmax=3, smax=3), 0, None, 7):
        for R2 in range(1, d.K + 1):
            arrs = list(iter_substructure(d, R2=R2))
            assert len(arrs) == len(set(arrs)) == enumerate_substructure(d, R2=R2)
            assert all(substructure_arrays_compatible(a, d) for a in arrs)
    for lam, R1, _ in itertools.islice(lambda_instances(Kmax=3, smax=2), 0, None, 5):
        arrs = list(iter_substructure(lam, R1=R1, R2=1))
        assert len(arrs) == enumerate_substructure(lam, R1=R1, R2=1)
        assert all(substructure_arrays_compatible(a, lam) for a in arrs)


# arrow simplification


def test_simplify_unchanged_without_arrows():
    d = Delta((1, 1), {0})
    assert arrow_simplify(d) == (d, False)
    assert list(arrow_simplify_steps(d)) == [d]


def test_simplify_chain_example():
    g = Gamma(((1, 1, 1), (1, 1, 1)), {2}, {2}, {0: 1, 1: 2})
    simp = arrow_simplify(g)
    assert not simp.cyclic
    assert simp.substructure.R1 == frozenset({0, 1, 2})
    assert simp.substructure.phi == ()


def test_simplify_reports_cycles():
    g = Gamma(((1, 1, 0), (1, 1, 0)), {2}, {2}, {0: 1, 1: 0})
    assert arrow_simplify(g).cyclic
    assert not arrow_simplify(Gamma(((1, 1, 0), (1, 1, 0)), {2}, {2}, {0: 1})).cyclic


def test_lambda_simplification_keeps_x():
    lam = Lambda((1, 2, 0), {2}, {0: 1, 1: 2})
    simp = arrow_simplify(lam).substructure
    assert simp.x == lam.x and simp.phi_map == {0: 2, 1: 2}


def test_every_simplification_step_keeps_gamma_counts_and_verdicts():
    checked = 0
    for g in small_gammas():
        if not g.phi:
            continue
        brute = enumerate_substructure(g)
        verdicts = (gamma_is_full(g), gamma_is_nonempty(g))
        for step in arrow_simplify_steps(g):
            assert enumerate_substructure(step) == brute
            assert (gamma_is_full(step), gamma_is_nonempty(step)) == verdicts
            checked += 1
        if arrow_simplify(g).cyclic:
            assert brute == 0
    assert checked > 1000


def test_every_simplification_step_keeps_delta_and_lambda_counts():
    for d in delta_instances(Kmax=3, smax=2):
        for R2 in range(1, d.K + 1):
            counts = {enumerate_substructure(step, R2=R2) for step in arrow_simplify_steps(d)}
            assert len(counts) == 1
    for lam, R1, _ in lambda_instances(Kmax=3, smax=2):
        counts = {enumerate_substructure(step, R1=R1, R2=1) for step in arrow_simplify_steps(lam)}
        assert len(counts) == 1
        simp = arrow_simplify(lam)
        if not simp.cyclic:
            # irreducible Lambda arrows land in P
            assert set(simp.substructure.phi_map.values()) <= lam.P


# column types


def test_classify_examples():
    part = classify_columns(Gamma(((1, 1), (1, 1)), {0, 1}, {0, 1}))
    assert part.types == ("D", "D")
    part = classify_columns(Gamma(((1, 1), (1, 1)), set(), set(), {1: 0}))
    assert part.types == ("A", "Abar")
    assert part.columns("Abar") == frozenset({1})
    with pytest.raises(ValueError):
        classify_columns(Gamma(((1, 1), (1, 1)), {0}, {0}, {1: 0}))


def test_column_types_partition_columns():
    for g in itertools.islice(small_gammas(), 0, None, 13):
        if is_irreducible(g):
            part = classify_columns(g)
            assert sum(part.count(t) for t in ("A", "B", "C", "D", "Abar", "Atilde", "Cbar", "Ctilde")) == g.K


# closed forms


def test_t_gamma_examples():
    # no row-1 vertices in B or D columns and b_1 = cbar_1 = 0
    part = ColumnTypePartition(("A", "C"), ((1, 2), (2, 1)))
    assert t_gamma(part, 3) == 0
    # s = A + 1 with b_2 + d_2 = 1 and atilde_1 + c_1 + ctilde_1 + d_1 = 2
    part = ColumnTypePartition(("D", "A"), ((2, 0), (1, 0)))
    assert t_gamma(part, 2) == 2 * factorial(1)
    with pytest.raises(ValueError):
        t_gamma(part, 1)


def test_t_gamma_of_checks_fullness():
    g = Gamma(((1, 0), (1, 0)), {0}, {0})
    with pytest.raises(ValueError):
        t_gamma_of(g)
    g = Gamma(((1, 1), (1, 1)), {0}, {0})
    assert t_gamma_of(g) == enumerate_substructure(g)


def test_t_delta_examples():
    assert t_delta(Delta((1,), {0}), 1, 1, 1) == 1
    # no critical row-0 vertex: s! C(K-1, R2-1) when every vertex sits in a marked column
    for R2 in range(1, 4):
        d = Delta((1, 2, 1), {0, 1, 2})
        assert t_delta(d, 3, R2, 4) == factorial(4) * comb(2, R2 - 1) == enumerate_substructure(d, R2=R2)


def test_t_delta_preconditions():
    with pytest.raises(ValueError):
        t_delta(Delta((1, 0), {0}), 2, 1, 1)
    with pytest.raises(ValueError):
        t_delta(Delta((1, 1), {0}, {1: 0}), 2, 1, 2)
    with pytest.raises(ValueError):
        t_delta(Delta((1, 1), {0}), 3, 1, 2)


def test_t_delta_admissible_examples():
    assert t_delta_admissible(Delta((1, 0), {0}), 2, 2, 1) == 1
    assert t_delta_admissible(Delta((0, 1), {0}), 2, 1, 1) == 0
    assert isinstance(t_delta_admissible(Delta((1, 0), {0}), 2, 2, 1), Fraction)
    with pytest.raises(ValueError):
        t_delta_admissible(Delta((1, 0, 1), {0}, {2: 1}), 3, 1, 2)


def test_t_lambda_examples():
    lam = Lambda((1, 0), {0})
    assert t_lambda(lam, 2, 1, 1, 1) == 1
    with pytest.raises(ValueError):
        t_lambda(lam, 2, 1, 1, 2)
    with pytest.raises(ValueError):
        t_lambda(Lambda((0, 0, 0), {2}, {0: 1, 1: 0}), 3, 1, 1, 0)
    with pytest.raises(ValueError):
        t_lambda(Lambda((0, 0, 1), {2}, {0: 1, 1: 0}), 3, 1, 1, 1)
