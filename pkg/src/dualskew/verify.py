"""Verification suites over the catalog of skew-growth identities.

Each suite sweeps one family of checks at its default scale and returns a
list of Report records, one per (check, type) pair.  Every comparison is
exact; the only sources of an "undecided" status are the Bruns precision
ladder and the one-sided irreducibility scan.  A "skipped" status records
work ruled out by a configured limit (group order, subset size), never a
silent omission.

Suites accept an ``only`` argument carrying a single CoxeterType; when set,
the sweep collapses to the checks involving that type (for rank-indexed
suites, the rank in the matching family).
"""

from __future__ import annotations

import inspect
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactmath import IntPoly, poly_derive, poly_eval, sign_at
from .nclattice import (
    build_group,
    characteristic_poly,
    nc_interval,
    skew_growth_by_subsets,
    verify_mobius_identity,
)
from .orthopoly import (
    H_deriv_at_half,
    H_deriv_at_half_closed,
    d_from_b_expression,
    h_deriv_at_half,
    rodrigues_poly,
    verify_jacobi_identity,
    verify_legendre_identity,
    verify_recurrence,
)
from .roots import (
    _mpf_to_fraction,
    bruns_bound_check,
    interlacing_across_rank,
    interlacing_with_legendre,
    irreducibility_certificate,
    refine_root,
    smallest_root_sequence,
    verify_conjecture2,
)
from .skewgrowth import (
    CoxeterType,
    all_types_of_rank_at_most,
    derivative_at_one,
    has_factor_one_minus_2t,
    skew_growth,
)

__all__ = [
    "Report",
    "SUITES",
    "SUITE_ORDER",
    "run_suites",
    "exit_code",
    "suite_rodrigues",
    "suite_jacobi",
    "suite_legendre",
    "suite_recurrence",
    "suite_formulaAB",
    "suite_conj2",
    "suite_derivative1",
    "suite_divisibility",
    "suite_interlace",
    "suite_bruns",
    "suite_sandwich",
    "suite_conj1",
    "suite_lattice",
]

_STATUSES = ("pass", "fail", "undecided", "skipped")

_EXCEPTIONAL = ("E6", "E7", "E8", "F4", "G2", "H3", "H4")


@dataclass(frozen=True)
class Report:
    """One verification outcome: which check, on which type, and how it went."""

    check: str
    type: str
    rank: int
    status: str
    details: str = ""

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"status must be one of {_STATUSES}, got {self.status!r}")


def _ok(check: str, ctype, rank: int, good: bool, details: str = "") -> Report:
    return Report(check, str(ctype), rank, "pass" if good else "fail", details)


def _family_sweep(to: int, families=("A", "B", "D")) -> list:
    """A from rank 1, B from 2, D from 4, each up to ``to``."""
    out = []
    starts = {"A": 1, "B": 2, "D": 4}
    for fam in families:
        for l in range(starts[fam], to + 1):
            out.append(CoxeterType(fam, l))
    return out


def _families(family) -> tuple:
    return ("A", "B", "D") if family is None else (family,)


def suite_rodrigues(to: int = 200, only: CoxeterType = None, family: str = None) -> list:
    """Derivative formulas against the catalog rows; D checks both forms."""
    types = [only] if only is not None else _family_sweep(to, _families(family))
    reports = []
    for ct in types:
        if ct.family not in ("A", "B", "D"):
            reports.append(Report("rodrigues", str(ct), ct.rank, "skipped", "no derivative formula"))
            continue
        n = skew_growth(ct).poly
        got = rodrigues_poly(ct.family, ct.rank)
        reports.append(_ok("rodrigues", ct, ct.rank, got == n, "" if got == n else "formula != catalog row"))
        if ct.family == "D":
            alt = rodrigues_poly("D", ct.rank, form=2)
            reports.append(_ok("rodrigues-forms", ct, ct.rank, alt == got, "" if alt == got else "the two D forms differ"))
    return reports


def suite_jacobi(to: int = 200, p_max: int = 50, only: CoxeterType = None, family: str = None) -> list:
    """Shifted-Jacobi expressions for A/B/D plus the H3 and I2 identities."""
    if only is not None:
        types = [only]
    elif family is not None:
        types = _family_sweep(to, (family,))
    else:
        types = _family_sweep(to)
        types.append(CoxeterType("H", 3))
        types.extend(CoxeterType("I2", p) for p in range(3, p_max + 1))
    reports = []
    for ct in types:
        if ct.family not in ("A", "B", "D", "I2") and (ct.family, ct.rank) != ("H", 3):
            reports.append(Report("jacobi", str(ct), ct.rank, "skipped", "no Jacobi expression"))
            continue
        res = verify_jacobi_identity(ct)
        reports.append(_ok("jacobi", ct, ct.rank, res.ok, "" if res.ok else res.detail))
    return reports


def suite_legendre(to: int = 200, only: CoxeterType = None, family: str = None) -> list:
    """Legendre derivative identities for A and B, and N_D through B rows."""
    reports = []
    if only is not None:
        if only.family in ("A", "B"):
            res = verify_legendre_identity(only.family, only.rank)
            reports.append(_ok("legendre", only, only.rank, res.ok, "" if res.ok else res.detail))
        elif only.family == "D":
            good = d_from_b_expression(only.rank) == skew_growth(only).poly
            reports.append(_ok("d-from-b", only, only.rank, good))
        else:
            reports.append(Report("legendre", str(only), only.rank, "skipped", "no Legendre identity"))
        return reports
    for fam, start in (("A", 1), ("B", 2)):
        if family not in (None, fam):
            continue
        for l in range(start, to + 1):
            res = verify_legendre_identity(fam, l)
            reports.append(_ok("legendre", CoxeterType(fam, l), l, res.ok, "" if res.ok else res.detail))
    if family in (None, "D"):
        for l in range(4, to + 1):
            good = d_from_b_expression(l) == skew_growth(CoxeterType("D", l)).poly
            reports.append(_ok("d-from-b", CoxeterType("D", l), l, good))
    return reports


def suite_recurrence(to: int = 200, only: CoxeterType = None, family: str = None) -> list:
    """Three-term A/B and four-term D relations; ranks involved stay <= to."""
    reports = []

    def run(fam: str, base: int):
        res = verify_recurrence(fam, base)
        top = base + (3 if fam == "D" else 2)
        ct = CoxeterType(fam, top)
        reports.append(_ok("recurrence", ct, top, res.ok, "" if res.ok else res.detail))

    if only is not None:
        if only.family not in ("A", "B", "D"):
            return [Report("recurrence", str(only), only.rank, "skipped", "no recurrence")]
        base = only.rank - (3 if only.family == "D" else 2)
        floor = {"A": 1, "B": 2, "D": 4}[only.family]
        if base < floor:
            return [Report("recurrence", str(only), only.rank, "skipped", "rank below the first recurrence instance")]
        run(only.family, base)
        return reports
    if family in (None, "A"):
        for base in range(1, to - 1):
            run("A", base)
    if family in (None, "B"):
        for base in range(2, to - 1):
            run("B", base)
    if family in (None, "D"):
        for base in range(4, to - 2):
            run("D", base)
    return reports


def suite_formulaAB(L_max: int = 25, k_max: int = 50, only: CoxeterType = None) -> list:
    """Closed-form derivative values at t = 1/2 against literal differentiation.

    Formula A: the order-2L derivative of H_l for every l with l // 4 <= L_max
    (all four residue classes).  Formula B: every valid order i for
    h_k = (t(t-1))^k, k <= k_max.
    """
    reports = []
    if only is not None:
        l = only.rank
        if l < 3:
            return [Report("formulaA", str(only), l, "skipped", "H_l needs l >= 3")]
        order, value = H_deriv_at_half_closed(l)
        good = H_deriv_at_half(l, order) == value
        reports.append(_ok("formulaA", f"H_{l}", l, good, f"order {order}"))
        return reports
    for l in range(3, 4 * L_max + 4):
        order, value = H_deriv_at_half_closed(l)
        good = H_deriv_at_half(l, order) == value
        reports.append(_ok("formulaA", f"H_{l}", l, good, f"order {order}"))
    for k in range(1, k_max + 1):
        h = IntPoly.binom_expand(-1, 1, k).shift(k)
        bad = ""
        for i in range(0, k + 1):
            lit = Fraction(poly_eval(poly_derive(h, i), Fraction(1, 2)))
            if h_deriv_at_half(k, i) != lit:
                bad = f"order {i}: closed {h_deriv_at_half(k, i)} vs literal {lit}"
                break
        reports.append(_ok("formulaB", f"h_{k}", k, not bad, bad))
    return reports


def suite_conj2(to: int = 100, p_max: int = 50, only: CoxeterType = None, family: str = None) -> list:
    """Rank-many simple roots in (0, 1] with t = 1 among them, every type."""
    if only is not None:
        types = [only]
    elif family is not None:
        types = _family_sweep(to, (family,))
    else:
        types = [CoxeterType(f[0], int(f[1:])) for f in _EXCEPTIONAL]
        types.extend(CoxeterType("I2", p) for p in range(3, p_max + 1))
        types.extend(_family_sweep(to))
    reports = []
    for ct in types:
        r = verify_conjecture2(ct)
        good = r.count == ct.rank and r.all_simple and r.has_root_at_one
        detail = "" if good else f"count {r.count} of {ct.rank}, simple={r.all_simple}, root at 1: {r.has_root_at_one}"
        reports.append(_ok("conj2", ct, ct.rank, good, detail))
    return reports


def suite_derivative1(to: int = 100, only: CoxeterType = None, family: str = None) -> list:
    """N'(1) against the closed forms for the three infinite series."""
    types = [only] if only is not None else _family_sweep(to, _families(family))
    reports = []
    for ct in types:
        if ct.family not in ("A", "B", "D"):
            reports.append(Report("derivative1", str(ct), ct.rank, "skipped", "no closed form"))
            continue
        try:
            val = derivative_at_one(ct)
            reports.append(_ok("derivative1", ct, ct.rank, True, f"N'(1) = {val}"))
        except RuntimeError as e:
            reports.append(Report("derivative1", str(ct), ct.rank, "fail", str(e)))
    return reports


def suite_divisibility(to: int = 100, only: CoxeterType = None, family: str = None) -> list:
    """(1 - 2t) divides N exactly when the parity/rank rule says it does."""
    if only is not None:
        types = [only]
    else:
        wanted = ("A", "D") if family is None else tuple(f for f in ("A", "D") if f == family)
        types = _family_sweep(to, families=wanted) if wanted else []
    reports = []
    for ct in types:
        if ct.family == "A":
            expected = ct.rank % 2 == 0
        elif ct.family == "D":
            expected = ct.rank == 4
        else:
            reports.append(Report("divisibility", str(ct), ct.rank, "skipped", "no divisibility rule"))
            continue
        got = has_factor_one_minus_2t(ct)
        detail = "" if got == expected else f"N(1/2) {'=' if got else '!='} 0 but the rule says {expected}"
        reports.append(_ok("divisibility", ct, ct.rank, got == expected, detail))
    return reports


def suite_interlace(to: int = 100, only: CoxeterType = None, family: str = None) -> list:
    """Legendre interlacing and consecutive-rank interlacing for A and B."""
    reports = []

    def at(fam: str, l: int, cross: bool):
        good = interlacing_with_legendre(fam, l)
        reports.append(_ok("interlace-legendre", CoxeterType(fam, l), l, good))
        if cross:
            good = interlacing_across_rank(fam, l)
            reports.append(_ok("interlace-rank", CoxeterType(fam, l + 1), l + 1, good, f"against rank {l}"))

    if only is not None:
        if only.family not in ("A", "B"):
            return [Report("interlace-legendre", str(only), only.rank, "skipped", "interlacing checked for A and B")]
        at(only.family, only.rank, cross=False)
        return reports
    if family not in (None, "A", "B"):
        return [Report("interlace-legendre", family, 0, "skipped", "interlacing checked for A and B")]
    for fam, start in (("A", 1), ("B", 2)):
        if family not in (None, fam):
            continue
        for l in range(start, to + 1):
            at(fam, l, cross=l < to)
    return reports


def suite_bruns(to: int = 60, working_precision: int = 128, precision_cap: int = 2048, only: CoxeterType = None) -> list:
    """Angular localization of the shifted-Legendre roots, rank by rank."""
    ls = [only.rank] if only is not None else range(1, to + 1)
    reports = []
    for l in ls:
        res = bruns_bound_check(l, working_precision, precision_cap)
        if res == "undecided":
            reports.append(Report("bruns", f"P_{l}", l, "undecided", f"precision cap {precision_cap} reached"))
        else:
            reports.append(_ok("bruns", f"P_{l}", l, bool(res)))
    return reports


def _witness_bound(l: int) -> Fraction:
    """Rational upper bound for 1.5 pi^2 / (2l + 1)^2."""
    if l == 100:
        return Fraction(3664, 10**7)
    saved = mpmath.iv.prec
    try:
        mpmath.iv.prec = 128
        pi_sq_high = _mpf_to_fraction((mpmath.iv.pi ** 2)._mpi_[1])
    finally:
        mpmath.iv.prec = saved
    exact = Fraction(3, 2) * pi_sq_high / (2 * l + 1) ** 2
    return Fraction(-(-exact.numerator * 10**9 // exact.denominator), 10**9)


def _root_below(p, box, bound: Fraction) -> bool:
    """Decide root < bound exactly, refining the box as far as needed."""
    if sign_at(p, bound) == 0:
        return False
    while True:
        if box.high < bound:
            return True
        if box.low >= bound:
            return False
        box = refine_root(p, box, (box.high - box.low) / 4)


def suite_sandwich(to: int = 100, eps: Fraction = Fraction(1, 10**12), only: CoxeterType = None, family: str = None) -> list:
    """Strict decrease of the smallest roots, the D sandwich, and the
    quantitative convergence witness at the top rank for A and B.

    The witness bound is 1.5 pi^2 / (2 to + 1)^2 rounded outward (the
    pinned fraction 3664/10^7 at to = 100); for that rank the details also
    record how the root compares with the cruder literal 3.5e-4.
    """
    families = _families(family)
    if only is not None:
        if only.family not in ("A", "B", "D"):
            return [Report("sandwich-decreasing", str(only), only.rank, "skipped", "sequences exist for A, B, D")]
        families = (only.family,)
        to = only.rank
    reports = []
    for fam in families:
        start = {"A": 1, "B": 2, "D": 4}[fam]
        if to < start:
            reports.append(Report("sandwich-decreasing", f"{fam}{to}", to, "skipped", f"family starts at rank {start}"))
            continue
        try:
            seq = smallest_root_sequence(fam, to, eps)
        except RuntimeError as e:
            reports.append(Report("sandwich-decreasing", f"{fam}{to}", to, "fail", str(e)))
            continue
        check = "sandwich-decreasing" if fam != "D" else "sandwich-d"
        reports.append(Report(check, f"{fam}{to}", to, "pass", f"{len(seq)} ranks, strictly decreasing"))
        if fam in ("A", "B"):
            bound = _witness_bound(to)
            n = skew_growth(CoxeterType(fam, to)).poly
            below = _root_below(n, seq[-1][1], bound)
            detail = f"smallest root < {bound} = 1.5 pi^2/(2l+1)^2 rounded up"
            if to == 100:
                lit = _root_below(n, seq[-1][1], Fraction(7, 20000))
                detail += f"; literal 3.5e-4 bound {'met' if lit else 'NOT met'}"
            reports.append(Report("sandwich-witness", f"{fam}{to}", to, "pass" if below else "fail", detail))
    return reports


def suite_conj1(to: int = 30, p_max: int = 12, only: CoxeterType = None, family: str = None) -> list:
    """Irreducibility certificates after stripping the known linear factors."""
    if only is not None:
        types = [only]
    else:
        types = all_types_of_rank_at_most(to, i2_max_p=p_max)
        if family is not None:
            types = [ct for ct in types if ct.family == family]
    reports = []
    for ct in types:
        cert = irreducibility_certificate(ct)
        if cert.status == "Certified":
            detail = f"degree {cert.degree}" + (f", prime {cert.prime} ({len(cert.tried)} tried)" if cert.prime else "")
            reports.append(Report("conj1", str(ct), ct.rank, "pass", detail))
        else:
            reports.append(Report("conj1", str(ct), ct.rank, "undecided", f"degree {cert.degree}, {len(cert.tried)} primes tried, none decisive"))
    return reports


_LATTICE_TYPES = (
    [CoxeterType("A", l) for l in range(1, 6)]
    + [CoxeterType("B", l) for l in range(2, 5)]
    + [CoxeterType("D", 4), CoxeterType("G", 2), CoxeterType("F", 4)]
)


def suite_lattice(max_order: int = 10**6, subset_limit: int = 20, p_max: int = 12, only: CoxeterType = None) -> list:
    """The interval below a Coxeter element re-derives N three ways."""
    if only is not None:
        types = [only]
    else:
        types = list(_LATTICE_TYPES) + [CoxeterType("I2", p) for p in range(3, p_max + 1)]
    reports = []
    for ct in types:
        try:
            group = build_group(ct, max_order=max_order)
        except ValueError as e:
            for check in ("lattice-charpoly", "lattice-subsets", "lattice-mobius"):
                reports.append(Report(check, str(ct), ct.rank, "skipped", str(e)))
            continue
        ncl = nc_interval(group)
        n = skew_growth(ct).poly
        got = characteristic_poly(ncl)
        reports.append(_ok("lattice-charpoly", ct, ct.rank, got == n, "" if got == n else f"lattice gives {got}"))
        try:
            by_subsets = skew_growth_by_subsets(ncl, subset_limit=subset_limit)
            reports.append(_ok("lattice-subsets", ct, ct.rank, by_subsets == n))
            good = verify_mobius_identity(ncl, subset_limit=subset_limit)
            reports.append(_ok("lattice-mobius", ct, ct.rank, good))
        except ValueError as e:
            reports.append(Report("lattice-subsets", str(ct), ct.rank, "skipped", str(e)))
            reports.append(Report("lattice-mobius", str(ct), ct.rank, "skipped", str(e)))
    return reports


SUITES = {
    "rodrigues": suite_rodrigues,
    "jacobi": suite_jacobi,
    "legendre": suite_legendre,
    "recurrence": suite_recurrence,
    "formulaAB": suite_formulaAB,
    "conj2": suite_conj2,
    "derivative1": suite_derivative1,
    "divisibility": suite_divisibility,
    "interlace": suite_interlace,
    "bruns": suite_bruns,
    "sandwich": suite_sandwich,
    "conj1": suite_conj1,
    "lattice": suite_lattice,
}

SUITE_ORDER = tuple(SUITES)


def _filtered_kwargs(fn, options: dict) -> dict:
    sig = inspect.signature(fn)
    return {k: v for k, v in options.items() if k in sig.parameters and v is not None}


def _run_job(job):
    name, kwargs = job
    return SUITES[name](**kwargs)


def run_suites(names, jobs: int = 1, **options) -> list:
    """Run the named suites (or all of them) and concatenate their reports.

    Suites run as independent jobs; with jobs > 1 they fan out over a
    process pool.  Report order is deterministic either way: canonical
    suite order, generation order within a suite.
    """
    if isinstance(names, str):
        names = [names]
    if "all" in names:
        names = list(SUITE_ORDER)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_ORDER)} or all")
    ordered = [n for n in SUITE_ORDER if n in names]
    job_list = [(n, _filtered_kwargs(SUITES[n], options)) for n in ordered]
    if jobs > 1 and len(job_list) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(job_list))) as pool:
            results = list(pool.map(_run_job, job_list))
    else:
        results = [_run_job(j) for j in job_list]
    out = []
    for chunk in results:
        out.extend(chunk)
    return out


def exit_code(reports) -> int:
    """0 when everything passed, 1 on any failure, 2 on undecided results."""
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return 1
    if "undecided" in statuses:
        return 2
    return 0
