"""The acceptance gate: fourteen timed criteria, one test each.

Every test prints a single pass/fail line (visible under -s) and asserts
both the mathematical content and the wall-clock budget.  All content
comparisons are exact; the budgets are generous ceilings, not targets.
"""

import re
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb

from dualskew.exactmath import IntPoly, div_scalar_exact
from dualskew.plotting import plot_roots
from dualskew.skewgrowth import CoxeterType, skew_growth
from dualskew.verify import (
    suite_bruns,
    suite_conj1,
    suite_conj2,
    suite_derivative1,
    suite_divisibility,
    suite_formulaAB,
    suite_interlace,
    suite_jacobi,
    suite_lattice,
    suite_legendre,
    suite_recurrence,
    suite_rodrigues,
    suite_sandwich,
)


@contextmanager
def gate(num: int, label: str, budget: float):
    t0 = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {num:2d} ({label}): FAIL after {time.monotonic() - t0:.1f}s")
        raise
    elapsed = time.monotonic() - t0
    verdict = "pass" if elapsed < budget else "FAIL"
    print(f"criterion {num:2d} ({label}): {verdict} ({elapsed:.1f}s, budget {budget:.0f}s)")
    assert elapsed < budget, f"criterion {num} took {elapsed:.1f}s, budget {budget}s"


def _statuses(reports):
    return {r.status for r in reports}


TABLE_B_ROWS = {
    "E6": (1, -36, 300, -1035, 1720, -1368, 418),
    "E7": (1, -63, 777, -3927, 9933, -13299, 9009, -2431),
    "E8": (1, -120, 2135, -15120, 54327, -108360, 121555, -71760, 17342),
    "F4": (1, -24, 101, -144, 66),
    "G2": (1, -6, 5),
    "H3": (1, -15, 35, -21),
    "H4": (1, -60, 307, -480, 232),
}


def test_criterion_01_table_fidelity():
    with gate(1, "table fidelity", 1.0):
        for name, coeffs in TABLE_B_ROWS.items():
            assert skew_growth(CoxeterType.parse(name)).poly.coeffs == coeffs
        for p in (3, 5, 12, 29):
            assert skew_growth(CoxeterType("I2", p)).poly.coeffs == (1, -p, p - 1)
        for l in range(2, 31):
            direct = div_scalar_exact(
                IntPoly(tuple((-1) ** k * comb(l, k) * comb(l + k, k + 1) for k in range(l + 1))), l
            )
            assert skew_growth(CoxeterType("A", l)).poly == direct
            direct = IntPoly(tuple((-1) ** k * comb(l, k) * comb(l + k - 1, k) for k in range(l + 1)))
            assert skew_growth(CoxeterType("B", l)).poly == direct
        for l in range(4, 31):
            direct = IntPoly(tuple(
                (-1) ** k * (comb(l, k) * comb(l + k - 2, k)
                             + (comb(l - 2, k - 2) * comb(l + k - 3, k) if k >= 2 else 0))
                for k in range(l + 1)
            ))
            assert skew_growth(CoxeterType("D", l)).poly == direct


def test_criterion_02_rodrigues():
    with gate(2, "Rodrigues formulas to rank 200", 30.0):
        reports = suite_rodrigues(to=200)
        assert _statuses(reports) == {"pass"}
        assert sum(r.check == "rodrigues" for r in reports) == 200 + 199 + 197
        assert sum(r.check == "rodrigues-forms" for r in reports) == 197


def test_criterion_03_jacobi_legendre_identities():
    with gate(3, "Jacobi and Legendre identities", 60.0):
        jac = suite_jacobi(to=200, p_max=50)
        assert _statuses(jac) == {"pass"}
        assert len(jac) == 596 + 1 + 48
        leg = suite_legendre(to=200)
        assert _statuses(leg) == {"pass"}
        assert sum(r.check == "legendre" for r in leg) == 200 + 199
        assert sum(r.check == "d-from-b" for r in leg) == 197


def test_criterion_04_recurrences():
    with gate(4, "recurrences", 60.0):
        reports = suite_recurrence(to=200)
        assert _statuses(reports) == {"pass"}
        by_family = {}
        for r in reports:
            by_family[r.type[0]] = by_family.get(r.type[0], 0) + 1
        assert by_family == {"A": 198, "B": 197, "D": 194}


def test_criterion_05_formulas_a_and_b():
    with gate(5, "derivative formulas at 1/2", 30.0):
        reports = suite_formulaAB(L_max=25, k_max=50)
        assert _statuses(reports) == {"pass"}
        assert sum(r.check == "formulaA" for r in reports) == 101
        assert sum(r.check == "formulaB" for r in reports) == 50


def test_criterion_06_root_counts():
    with gate(6, "rank-many simple roots in (0,1]", 300.0):
        reports = suite_conj2(to=100, p_max=50)
        assert _statuses(reports) == {"pass"}
        assert len(reports) == 7 + 48 + 100 + 99 + 97


def test_criterion_07_derivative_at_one():
    with gate(7, "N'(1) closed forms", 5.0):
        reports = suite_derivative1(to=100)
        assert _statuses(reports) == {"pass"}
        assert len(reports) == 100 + 99 + 97


def test_criterion_08_divisibility():
    with gate(8, "(1-2t) divisibility", 5.0):
        reports = suite_divisibility(to=100)
        assert _statuses(reports) == {"pass"}
        assert len(reports) == 100 + 97


def test_criterion_09_interlacing():
    with gate(9, "interlacing", 300.0):
        reports = suite_interlace(to=100)
        assert _statuses(reports) == {"pass"}
        assert sum(r.check == "interlace-legendre" for r in reports) == 100 + 99
        assert sum(r.check == "interlace-rank" for r in reports) == 99 + 98


def test_criterion_10_bruns_bounds():
    with gate(10, "Bruns bounds to degree 60", 300.0):
        reports = suite_bruns(to=60, working_precision=128, precision_cap=2048)
        assert len(reports) == 60
        assert _statuses(reports) == {"pass"}, "no undecided outcomes allowed at this range"


def test_criterion_11_smallest_root_convergence():
    with gate(11, "smallest-root decrease and witness", 300.0):
        reports = suite_sandwich(to=100, eps=Fraction(1, 10**12))
        assert _statuses(reports) == {"pass"}
        by_key = {(r.check, r.type): r for r in reports}
        assert by_key[("sandwich-decreasing", "A100")].status == "pass"
        assert by_key[("sandwich-decreasing", "B100")].status == "pass"
        assert by_key[("sandwich-d", "D100")].status == "pass"
        wa = by_key[("sandwich-witness", "A100")]
        wb = by_key[("sandwich-witness", "B100")]
        enforced = Fraction(3664, 10**7)
        assert str(enforced) in wa.details and str(enforced) in wb.details
        assert "literal 3.5e-4 bound NOT met" in wa.details
        assert "literal 3.5e-4 bound met" in wb.details


def test_criterion_12_lattice_oracle():
    with gate(12, "noncrossing-partition oracle", 120.0):
        reports = suite_lattice(max_order=10**6, subset_limit=20, p_max=12)
        assert "fail" not in _statuses(reports)
        charpoly = [r for r in reports if r.check == "lattice-charpoly"]
        assert len(charpoly) == 21 and all(r.status == "pass" for r in charpoly)
        for r in reports:
            if r.status == "skipped":
                assert "exceed the subset limit" in r.details
        subset_passes = [r for r in reports if r.check == "lattice-subsets" and r.status == "pass"]
        assert len(subset_passes) == 20


def test_criterion_13_irreducibility_certificates():
    with gate(13, "irreducibility certificates", 120.0):
        reports = suite_conj1(to=30, p_max=12)
        assert len(reports) == 103
        assert _statuses(reports) == {"pass"}


def _marker_count(svg_text: str) -> int:
    m = re.search(r'<path id="(m[0-9a-f]+)" d="M -4\.5', svg_text)
    assert m, "marker path definition not found"
    return svg_text.count(f'xlink:href="#{m.group(1)}"')


def test_criterion_14_zero_locus_plots(tmp_path):
    with gate(14, "zero-locus plots", 10.0):
        for spec in ("A20", "B20", "D20", "E8"):
            ct = CoxeterType.parse(spec)
            svg, companion = plot_roots(ct, tmp_path / f"{spec}.svg")
            assert _marker_count(svg.read_text()) == ct.rank
            rows = companion.read_text().strip().splitlines()[1:]
            assert len(rows) == ct.rank
            for row in rows:
                approx = float(row.split(",")[1])
                assert 0.0 < approx <= 1.0
