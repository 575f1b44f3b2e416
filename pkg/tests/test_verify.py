"""Behavior of the verification suites: filters, statuses, dispatch."""

import pytest

from dualskew.skewgrowth import CoxeterType
from dualskew.verify import (
    Report,
    SUITE_ORDER,
    SUITES,
    exit_code,
    run_suites,
    suite_bruns,
    suite_conj1,
    suite_divisibility,
    suite_interlace,
    suite_lattice,
    suite_legendre,
    suite_recurrence,
    suite_sandwich,
)


def test_report_rejects_unknown_status():
    with pytest.raises(ValueError):
        Report("x", "A1", 1, "maybe")


def test_exit_code_priority():
    ok = Report("c", "A1", 1, "pass")
    bad = Report("c", "A2", 2, "fail")
    und = Report("c", "A3", 3, "undecided")
    skp = Report("c", "A4", 4, "skipped")
    assert exit_code([ok, skp]) == 0
    assert exit_code([ok, und]) == 2
    assert exit_code([ok, und, bad]) == 1
    assert exit_code([]) == 0


def test_run_suites_rejects_unknown_name():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suites(["rodrigues", "nope"])


def test_run_suites_all_expands_in_order():
    reports = run_suites("all", to=5, p_max=3, L_max=1, k_max=2, max_order=10**4)
    seen = []
    for r in reports:
        base = r.check.split("-")[0]
        if base not in seen:
            seen.append(base)
    assert seen.index("rodrigues") < seen.index("jacobi") < seen.index("conj1")


def test_parallel_jobs_match_sequential():
    seq = run_suites(["conj2", "divisibility"], to=8)
    par = run_suites(["conj2", "divisibility"], to=8, jobs=2)
    assert seq == par


def test_family_filter_conj2():
    reports = run_suites(["conj2"], to=9, family="B")
    assert [r.type for r in reports] == [f"B{l}" for l in range(2, 10)]


def test_family_filter_drops_extras_in_jacobi():
    reports = run_suites(["jacobi"], to=6, family="D")
    assert all(r.type.startswith("D") for r in reports)


def test_only_beats_sweep():
    reports = run_suites(["rodrigues"], to=50, only=CoxeterType("D", 7))
    assert len(reports) == 2
    assert {r.check for r in reports} == {"rodrigues", "rodrigues-forms"}


def test_legendre_family_split():
    a_rows = suite_legendre(to=6, family="A")
    assert all(r.check == "legendre" and r.type.startswith("A") for r in a_rows)
    d_rows = suite_legendre(to=6, family="D")
    assert all(r.check == "d-from-b" for r in d_rows)


def test_legendre_only_exceptional_is_skipped():
    rows = suite_legendre(only=CoxeterType("E", 6))
    assert rows[0].status == "skipped"


def test_recurrence_only_low_rank_is_skipped():
    rows = suite_recurrence(only=CoxeterType("A", 2))
    assert rows[0].status == "skipped"
    rows = suite_recurrence(only=CoxeterType("A", 3))
    assert rows[0].status == "pass" and rows[0].type == "A3"


def test_divisibility_family_b_is_empty():
    assert suite_divisibility(to=10, family="B") == []


def test_interlace_family_d_is_skipped():
    rows = suite_interlace(to=10, family="D")
    assert len(rows) == 1 and rows[0].status == "skipped"


def test_bruns_undecided_at_tiny_cap():
    rows = suite_bruns(to=40, working_precision=4, precision_cap=4)
    assert any(r.status == "undecided" for r in rows)
    assert exit_code(rows) == 2


def test_sandwich_witness_details_name_the_bound():
    rows = suite_sandwich(to=6, family="A")
    witness = [r for r in rows if r.check == "sandwich-witness"]
    assert len(witness) == 1 and witness[0].status == "pass"
    assert "1.5 pi^2" in witness[0].details


def test_conj1_inconclusive_maps_to_undecided():
    rows = suite_conj1(only=CoxeterType("A", 15))
    assert rows[0].status == "pass"
    from dualskew.roots import irreducibility_certificate

    cert = irreducibility_certificate(CoxeterType("A", 15), primes=[17])
    assert cert.status == "Inconclusive"


def test_lattice_order_limit_skips():
    rows = suite_lattice(max_order=100, p_max=3)
    skipped = {r.type for r in rows if r.status == "skipped"}
    assert "A5" in skipped and "F4" in skipped
    passed = {r.type for r in rows if r.status == "pass"}
    assert "A3" in passed and "I2(3)" in passed


def test_suite_registry_is_complete():
    assert set(SUITE_ORDER) == set(SUITES)
    assert len(SUITE_ORDER) == 13
