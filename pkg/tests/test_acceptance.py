"""Acceptance gate: nine exact-equality criteria, one PASS/FAIL line each."""

from math import comb

import pytest

from treemaps import checks
from treemaps.arrays.decompose import decompose_row, recompose_row
from treemaps.arrays.paired import PairedArray, is_proper
from treemaps.arrays.vertical import brute_vertical_count
from treemaps.core import MapParameters
from treemaps.formula import v_numeric, v_poly
from treemaps.oracle import pairing_count
from treemaps.polynomial import double_factorial


@pytest.fixture
def report(capsys):
    def emit(criterion, reports):
        ok = all(r.ok for r in reports)
        detail = "; ".join(r.summary() for r in reports)
        with capsys.disabled():
            print(f"\ncriterion {criterion}: {'PASS' if ok else 'FAIL'} [{detail}]")
        for r in reports:
            for f in r.failures[:10]:
                print(f"  {r.name} {f.instance}: expected {f.expected!r}, got {f.actual!r}")
        assert ok

    return emit


def _report(name, pairs):
    rep = checks.SuiteReport(name)
    for tag, expected, actual in pairs:
        rep.add(tag, expected, actual)
    return rep


def test_criterion_1_harer_zagier(report):
    sizes = _report(
        "pairings",
        [(f"q={q}", double_factorial(2 * q - 1), pairing_count(MapParameters((q,)))) for q in range(1, 6)],
    )
    report(1, [checks.check_hz(qmax=5), sizes])


def test_criterion_2_goulden_slofstra(report):
    report(2, [checks.check_gs(qmax=2, smax=3, dmax=5)])


def test_criterion_3_main_theorem(report):
    instances = checks.main_theorem_instances(dmax=6)
    shape = _report(
        "shape",
        [(checks.describe(p), True, p.n in (3, 4) and p.pair_count <= 6) for p in instances],
    )
    report(3, [checks.check_main(dmax=6, interpolation=False), shape])


def test_criterion_4_vertical_arrays(report):
    base = _report(
        "base case",
        [
            (f"K={K} R={R}", comb(K, R), brute_vertical_count(1, K, (R,), MapParameters((0,))))
            for K in range(1, 5)
            for R in range(1, K + 1)
        ]
        + [(f"R={R} v_poly", v_poly(1, (R,), {})(K), comb(K, R)) for K in range(1, 5) for R in range(1, K + 1)]
        + [(f"R={R} v_numeric", v_numeric(1, K, (R,), {}), comb(K, R)) for K in range(1, 5) for R in range(1, K + 1)],
    )
    report(4, [checks.check_vertical(nmax=3, Kmax=4, smax=2, interpolation=False), base])


def test_criterion_5_substructure_formulas(report):
    report(5, [
        checks.check_gamma(Kmax=3, smax=4),
        checks.check_delta(Kmax=3, smax=4),
        checks.check_lambda(Kmax=3, smax=4),
    ])


def test_criterion_6_decomposition_bijection(report):
    report(6, [checks.check_zeta(Kmax=3, s={(0, 1): 1, (1, 2): 1}, leaf=2)])


def test_criterion_7_polynomiality(report):
    vertical = checks.check_vertical(nmax=3, Kmax=4, smax=2, interpolation=True)
    vertical.results = [r for r in vertical.results if r.instance.endswith("interpolation")]
    main = checks.check_main(dmax=6, interpolation=True)
    main.results = [r for r in main.results if r.instance.endswith("interpolated canonical counts")]
    assert vertical.results and main.results
    report(7, [vertical, main])


def test_criterion_8_paired_functions(report):
    report(8, [checks.check_paired_functions(pmax=6, Kmax=3)])


# three rows, K = 4, s01 = 3, s12 = 4; row 2 is the leaf hanging off row 1
WORKED_OCCUPANCY = ((0, 1, 1, 1), (2, 2, 2, 1), (2, 1, 1, 0))
WORKED_MARKS = (
    (False, True, True, False),
    (True, True, False, False),
    (True, True, False, False),
)
WORKED_PAIRS = (
    ((0, 1, 0), (1, 1, 0)),
    ((0, 2, 0), (1, 3, 0)),
    ((0, 3, 0), (1, 2, 0)),
    ((1, 0, 0), (2, 0, 0)),
    ((1, 0, 1), (2, 0, 1)),
    ((1, 1, 1), (2, 2, 0)),
    ((1, 2, 1), (2, 1, 0)),
)


def test_criterion_9_worked_example(report):
    a = PairedArray.from_positions(WORKED_OCCUPANCY, WORKED_MARKS, WORKED_PAIRS)
    d = decompose_row(a, 2)
    back = recompose_row(d.beta, d.W, d.sigma, 2, d.parent)
    report(9, [_report("worked example", [
        ("proper vertical", True, a.is_vertical() and is_proper(a)),
        ("W", frozenset({1, 2, 5}), d.W),
        ("P", 3, d.P),
        ("round trip", a, back),
    ])])
