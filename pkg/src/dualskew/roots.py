"""Exact real-root counting, isolation and certification via Sturm chains.

All root counts are exact integer computations (no floating point enters
a decision).  Floating point appears in exactly two supporting roles:
placing grid points that are then snapped to rationals and checked
exactly, and the directed-rounding enclosures inside bruns_bound_check,
which can return "undecided" but never a wrong boolean.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import cos, isqrt, pi
from typing import NamedTuple, Optional, Union

import mpmath

from .exactmath import (
    BadPrimeError,
    BigRat,
    IntPoly,
    _is_prime,
    _pseudo_rem,
    factor_degrees_mod_p,
    poly_derive,
    poly_divexact,
    poly_eval,
    poly_gcd,
    primitive_part,
    sign_at,
    t,
)
from .orthopoly import shifted_legendre
from .skewgrowth import CoxeterType, has_factor_one_minus_2t, reduced_skew_growth, skew_growth

__all__ = [
    "SturmChain",
    "RootBox",
    "Conjecture2Report",
    "IrreducibilityCertificate",
    "sturm_chain",
    "count_roots",
    "isolate_roots",
    "refine_root",
    "verify_conjecture2",
    "boundary_sign_check",
    "interlacing_with_legendre",
    "interlacing_across_rank",
    "bruns_bound_check",
    "smallest_root_sequence",
    "irreducibility_certificate",
]


@dataclass(frozen=True)
class SturmChain:
    """Negated-remainder Euclidean chain of a polynomial and its derivative."""

    chain: tuple

    def __post_init__(self):
        if not self.chain or not self.chain[-1]:
            raise ValueError("chain must end in a nonzero polynomial")
        degs = [f.degree for f in self.chain]
        if any(d1 <= d2 for d1, d2 in zip(degs, degs[1:])):
            raise ValueError("chain degrees must strictly decrease")

    @property
    def is_squarefree(self) -> bool:
        return self.chain[-1].degree == 0


@dataclass(frozen=True)
class RootBox:
    """Either a half-open bracket (low, high] holding exactly one root, or a
    degenerate box pinning a rational root exactly."""

    low: BigRat
    high: BigRat
    exact: Optional[BigRat] = None

    def __post_init__(self):
        object.__setattr__(self, "low", Fraction(self.low))
        object.__setattr__(self, "high", Fraction(self.high))
        if self.exact is not None:
            object.__setattr__(self, "exact", Fraction(self.exact))
            if not self.low == self.high == self.exact:
                raise ValueError("an exact box must have low = high = exact")
        elif not self.low < self.high:
            raise ValueError("a bracket needs low < high")

    @property
    def width(self) -> BigRat:
        return self.high - self.low

    def midpoint(self) -> BigRat:
        return self.exact if self.exact is not None else (self.low + self.high) / 2


@lru_cache(maxsize=64)
def sturm_chain(p: IntPoly) -> SturmChain:
    """Build the standard Sturm chain of p.

    The first two entries are p and p' as given; the remainders are
    content-normalized to control coefficient growth (a positive constant
    factor never changes a sign).  For squarefree p the chain ends in a
    nonzero constant; otherwise it terminates early at (an associate of)
    gcd(p, p').
    """
    if not p:
        raise ValueError("zero polynomial has no Sturm chain")
    chain = [p]
    if p.degree >= 1:
        chain.append(poly_derive(p, 1))
        while chain[-1].degree > 0:
            r, m = _pseudo_rem(chain[-2].coeffs, chain[-1].coeffs)
            if not r:
                break
            nxt = primitive_part(IntPoly(r))
            if m > 0:
                nxt = -nxt
            chain.append(nxt)
    return SturmChain(tuple(chain))


def _variations(chain: SturmChain, x: BigRat) -> int:
    signs = []
    for f in chain.chain:
        s = sign_at(f, x)
        if s:
            signs.append(s)
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def count_roots(chain: SturmChain, a: BigRat, b: BigRat, half_open: bool = True) -> int:
    """Distinct real roots of the chain's polynomial in (a, b] (default) or (a, b).

    Non-squarefree chains are handled by recounting on the squarefree part,
    which has the same distinct roots.  A root at b is included exactly when
    half_open is set; a root at a is never included.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if not chain.is_squarefree:
        p = chain.chain[0]
        sq = poly_divexact(p, poly_gcd(p, poly_derive(p, 1)))
        chain = sturm_chain(sq)
    n = _variations(chain, a) - _variations(chain, b)
    if not half_open and sign_at(chain.chain[0], b) == 0:
        n -= 1
    return n


# -- rational root detection ------------------------------------------------

def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    d = 1
    while d <= isqrt(n):
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return out


def _rational_roots_in(p: IntPoly, a: Fraction, b: Fraction) -> list:
    """Rational roots of p in (a, b] that a modest candidate scan can reach.

    Covers every case the rest of the package relies on (roots with small
    numerator or denominator dividing manageable end coefficients); missing
    an exotic rational root only costs exactness of one box, never
    correctness of isolation.
    """
    cands = {Fraction(1), Fraction(1, 2), Fraction(b), Fraction(0)}
    for d in range(1, 25):
        for n in range(1, d + 1):
            cands.add(Fraction(n, d))
    cs = p.coeffs
    v = 0
    while v < len(cs) and cs[v] == 0:
        v += 1
    c0, lc = cs[v], cs[-1]
    if abs(c0) <= 10**9 and abs(lc) <= 10**9:
        for num in _divisors(c0):
            for den in _divisors(lc):
                cands.add(Fraction(num, den))
                cands.add(Fraction(-num, den))
    return sorted(x for x in cands if a < x <= b and sign_at(p, x) == 0)


def _linear_factor(r: Fraction) -> IntPoly:
    return IntPoly((-r.numerator, r.denominator))


def _snap(x: float, a: Fraction, b: Fraction) -> Optional[Fraction]:
    q = Fraction(round(x * (1 << 26)), 1 << 26)
    return q if a < q < b else None


def _grid_points(a: Fraction, b: Fraction, m: int, anchors) -> list:
    """Chebyshev-extrema spaced rational points spanning [a, b].

    The cos^2 spacing matches how the roots in this package cluster toward
    both interval ends, so modest grids already separate them.
    """
    pts = {a, b}
    pts.update(x for x in anchors if a < x < b)
    fa, fb = float(a), float(b)
    for j in range(1, m):
        x = _snap(fa + (fb - fa) * (1 + cos(j * pi / m)) / 2, a, b)
        if x is not None:
            pts.add(x)
    return sorted(pts)


def _bisect_isolate(p: IntPoly, chain: SturmChain, a: Fraction, b: Fraction, k: int) -> list:
    """Count-driven fallback isolation: split (a, b] until each piece holds one root."""
    if k == 1:
        return [RootBox(a, b)]
    mid = (a + b) / 2
    if sign_at(p, mid) == 0:
        left = count_roots(chain, a, mid) - 1
        out = []
        if left:
            out += _bisect_isolate(p, chain, a, mid, left)
        out.append(RootBox(mid, mid, mid))
        right = k - left - 1
        if right:
            out += _bisect_isolate(p, chain, mid, b, right)
        return out
    left = count_roots(chain, a, mid)
    out = []
    if left:
        out += _bisect_isolate(p, chain, a, mid, left)
    if k - left:
        out += _bisect_isolate(p, chain, mid, b, k - left)
    return out


@lru_cache(maxsize=256)
def isolate_roots(p: IntPoly, a: BigRat, b: BigRat) -> tuple:
    """Disjoint one-root boxes for all roots of p in (a, b], largest first.

    Rational roots come back as exact boxes; the rest are bracketed by sign
    changes on a rational grid.  The grid answer is accepted only when the
    number of brackets matches the exact Sturm count, which certifies one
    root per bracket; otherwise the grid is refined, with count-driven
    bisection as the final fallback.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    chain = sturm_chain(p)
    if not chain.is_squarefree:
        raise ValueError("polynomial has repeated roots; divide by gcd(p, p') before isolating")
    total = count_roots(chain, a, b)
    if total == 0:
        return ()
    exacts = _rational_roots_in(p, a, b)
    work = p
    for r in exacts:
        work = poly_divexact(work, _linear_factor(r))
    while work.degree > 0 and sign_at(work, a) == 0:
        work = poly_divexact(work, _linear_factor(a))
    boxes = [RootBox(r, r, r) for r in exacts]
    missing = total - len(exacts)
    if missing:
        boxes += _bracket_by_grid(work, a, b, missing, exacts)
    boxes.sort(key=lambda box: box.midpoint(), reverse=True)
    return tuple(boxes)


def _bracket_by_grid(work: IntPoly, a: Fraction, b: Fraction, m: int, anchors) -> list:
    grid = max(16, 4 * work.degree)
    while grid <= (1 << 14):
        pts = _grid_points(a, b, grid, anchors)
        signs = [sign_at(work, x) for x in pts]
        if 0 in signs[1:]:
            # a rational root the candidate scan missed; make it exact and go again
            r = pts[signs[1:].index(0) + 1]
            rest = _bracket_by_grid(poly_divexact(work, _linear_factor(r)), a, b, m - 1, list(anchors) + [r])
            return rest + [RootBox(r, r, r)]
        brackets = [
            RootBox(pts[i], pts[i + 1])
            for i in range(len(pts) - 1)
            if signs[i] != 0 and signs[i] * signs[i + 1] < 0
        ]
        if len(brackets) == m:
            return brackets
        grid *= 2
    # count-driven fallback, pre-split at the known exact roots so no
    # bisection box swallows one of them
    wchain = sturm_chain(work)
    cuts = [a] + [x for x in sorted(anchors) if a < x < b] + [b]
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        k = count_roots(wchain, lo, hi)
        if k:
            out += _bisect_isolate(work, wchain, lo, hi, k)
    return out


def refine_root(p: IntPoly, box: RootBox, eps: BigRat) -> RootBox:
    """Shrink an isolating box below eps by sign-preserving bisection.

    Detects rational roots on the way (a zero midpoint, or a candidate-scan
    hit up front) and returns them as exact boxes; exact boxes pass through
    untouched.
    """
    if box.exact is not None:
        return box
    eps = Fraction(eps)
    lo, hi = box.low, box.high
    hits = _rational_roots_in(p, lo, hi)
    if hits:
        r = hits[0]
        return RootBox(r, r, r)
    work = p
    while sign_at(work, lo) == 0:
        work = poly_divexact(work, _linear_factor(lo))
    while sign_at(work, hi) == 0:
        work = poly_divexact(work, _linear_factor(hi))
    slo = sign_at(work, lo)
    if slo * sign_at(work, hi) > 0:
        raise ValueError("box endpoints do not bracket a sign change")
    while hi - lo >= eps:
        mid = (lo + hi) / 2
        sm = sign_at(work, mid)
        if sm == 0:
            return RootBox(mid, mid, mid)
        if slo * sm < 0:
            hi = mid
        else:
            lo, slo = mid, sm
    return RootBox(lo, hi)


# -- box ordering certification ---------------------------------------------

def _surely_greater(b1: RootBox, b2: RootBox) -> bool:
    """True when the root in b1 certainly exceeds the root in b2.

    Bracket endpoints are never roots of their own polynomial (isolation and
    refinement maintain that), so a bracket's root lies strictly inside it.
    """
    lo1 = b1.exact if b1.exact is not None else b1.low
    hi2 = b2.exact if b2.exact is not None else b2.high
    if b1.exact is not None and b2.exact is not None:
        return b1.exact > b2.exact
    return lo1 >= hi2


def _certify_decreasing(seq, rounds: int = 300) -> bool:
    """Refine boxes in (box, poly) pairs until the strict decreasing order of
    their roots is certain.  Returns False on a certified tie (shared root)."""
    seq = [list(item) for item in seq]
    for i in range(len(seq) - 1):
        for _ in range(rounds):
            b1, p1 = seq[i]
            b2, p2 = seq[i + 1]
            if _surely_greater(b1, b2):
                break
            if _surely_greater(b2, b1):
                return False
            if b1.exact is not None and b2.exact is not None:
                return False  # equal rationals
            if b1.exact is not None and b2.low < b1.exact <= b2.high and sign_at(p2, b1.exact) == 0:
                return False  # b2's root is exactly b1's
            if b2.exact is not None and b1.low < b2.exact <= b1.high and sign_at(p1, b2.exact) == 0:
                return False
            if b1.exact is None:
                seq[i][0] = refine_root(p1, b1, b1.width / 2)
            if b2.exact is None:
                seq[i + 1][0] = refine_root(p2, b2, b2.width / 2)
        else:
            raise RuntimeError("could not separate adjacent roots; refinement budget exhausted")
    return True


class Conjecture2Report(NamedTuple):
    count: int
    all_simple: bool
    has_root_at_one: bool


def verify_conjecture2(ctype: CoxeterType) -> Conjecture2Report:
    """Count the roots of N on (0, 1] exactly and check simplicity and N(1) = 0."""
    n = skew_growth(ctype).poly
    chain = sturm_chain(n)
    return Conjecture2Report(
        count=count_roots(chain, 0, 1),
        all_simple=chain.is_squarefree,
        has_root_at_one=poly_eval(n, 1) == 0,
    )


def boundary_sign_check(ctype: CoxeterType) -> bool:
    """Endpoint sign pattern of the Sturm chain of the reduced polynomial.

    Since all deg(N-hat) roots lie in (0, 1), the chain must realize the
    extreme variation counts at the two ends: degrees stepping down by
    exactly one to a nonzero constant, a strictly alternating sign column at
    t = 0, and a constant sign column at t = 1.  (An equivalent statement
    decorates a plain-remainder Euclid sequence with a period-four sign
    pattern; this is the undecorated form.)
    """
    nh = reduced_skew_growth(ctype)
    chain = sturm_chain(nh).chain
    d = nh.degree
    if len(chain) != d + 1 or any(f.degree != d - i for i, f in enumerate(chain)):
        return False
    at0 = [sign_at(f, 0) for f in chain]
    at1 = [sign_at(f, 1) for f in chain]
    if 0 in at0 or 0 in at1:
        return False
    alternating = all(s1 == -s2 for s1, s2 in zip(at0, at0[1:]))
    constant = all(s == at1[0] for s in at1)
    return alternating and constant


def _no_shared_roots_inside(p1: IntPoly, p2: IntPoly) -> bool:
    g = poly_gcd(p1, p2)
    if g.degree == 0:
        return True
    return count_roots(sturm_chain(g), 0, 1, half_open=False) == 0


def interlacing_with_legendre(family: str, l: int) -> bool:
    """Zipper check 1 = t_1 > x_1 > t_2 > ... > x_(l-1) > t_l > x_l > 0,
    between the roots t of N and the roots x of the degree-l Legendre
    polynomial, certified by exact box separation."""
    if family not in ("A", "B"):
        raise ValueError("Legendre interlacing applies to families A and B")
    n = skew_growth(CoxeterType(family, l)).poly
    p = shifted_legendre(l)
    if not _no_shared_roots_inside(n, p):
        return False
    tboxes = isolate_roots(n, 0, 1)
    xboxes = isolate_roots(p, 0, 1)
    if len(tboxes) != l or len(xboxes) != l or tboxes[0].exact != 1:
        return False
    seq = []
    for tb, xb in zip(tboxes, xboxes):
        seq.append((tb, n))
        seq.append((xb, p))
    if not _certify_decreasing(seq):
        return False
    last = xboxes[-1]
    while (last.exact if last.exact is not None else last.low) <= 0:
        if last.exact is not None:
            return False
        last = refine_root(p, last, last.width / 2)
    return True


def interlacing_across_rank(family: str, l: int) -> bool:
    """Check t_(l+1, v) > t_(l, v) > t_(l+1, v+1) for v = 2..l by exact box
    separation; vacuously true when the range is empty."""
    if family not in ("A", "B"):
        raise ValueError("cross-rank interlacing applies to families A and B")
    lo_rank = 2 if family == "B" else 1
    if l < lo_rank:
        raise ValueError(f"family {family} starts at rank {lo_rank}")
    n1 = skew_growth(CoxeterType(family, l)).poly
    n2 = skew_growth(CoxeterType(family, l + 1)).poly
    if not _no_shared_roots_inside(n1, n2):
        return False
    cur = isolate_roots(n1, 0, 1)
    nxt = isolate_roots(n2, 0, 1)
    if len(cur) != l or len(nxt) != l + 1:
        return False
    seq = []
    for v in range(2, l + 1):
        seq.append((nxt[v - 1], n2))
        seq.append((cur[v - 1], n1))
    if l >= 2:
        seq.append((nxt[l], n2))
    if len(seq) < 2:
        return True
    return _certify_decreasing(seq)


# -- Bruns angular bounds ---------------------------------------------------

def _mpf_to_fraction(raw) -> Fraction:
    """Exact value of a raw mpf tuple (sign, mantissa, exponent, bitcount)."""
    sign, man, exp, _ = raw
    if man == 0:
        if exp != 0:
            raise ValueError(f"non-finite bound {raw!r}")
        return Fraction(0)
    v = Fraction(int(man)) * Fraction(2) ** exp
    return -v if sign else v


def bruns_bound_check(l: int, working_precision: int = 128, precision_cap: int = 2048) -> Union[bool, str]:
    """Certify the angular localization of the degree-l Legendre roots.

    For each v, the v-th largest root (in the cos^2(theta/2) coordinate)
    must lie strictly between cos^2(v pi/(2l+1)) and
    cos^2((2v-1) pi/(4l+2)).  Directed-rounding enclosures of those
    boundary values yield rational inner points; exact sign changes of the
    polynomial between the inner points, together with the exact total root
    count and the disjointness of the intervals, pin one root per interval.
    Returns True, False, or "undecided" on precision exhaustion.
    """
    if l < 1:
        raise ValueError("l >= 1 required")
    p = shifted_legendre(l)
    if count_roots(sturm_chain(p), 0, 1) != l:
        return False
    q = 2 * l + 1
    prec = working_precision
    while prec <= precision_cap:
        pairs = []
        ok = True
        saved = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            for v in range(1, l + 1):
                a_enc = mpmath.iv.cos(mpmath.iv.pi * v / q) ** 2
                b_enc = mpmath.iv.cos(mpmath.iv.pi * (2 * v - 1) / (2 * q)) ** 2
                u = _mpf_to_fraction(a_enc._mpi_[1])
                w = _mpf_to_fraction(b_enc._mpi_[0])
                if not 0 <= u < w <= 1:
                    ok = False
                    break
                pairs.append((u, w))
        finally:
            mpmath.iv.prec = saved
        if ok:
            for (u, w), (u_prev, _) in zip(pairs[1:], pairs):
                if not w < u_prev:
                    ok = False
                    break
        if ok:
            for u, w in pairs:
                if sign_at(p, u) * sign_at(p, w) >= 0:
                    ok = False
                    break
        if ok:
            return True
        prec *= 2
    return "undecided"


def smallest_root_sequence(family: str, l_max: int, eps: BigRat) -> list:
    """Smallest root of N per rank, refined below eps, with the strict
    decrease certified exactly; for D the B-series sandwich
    t_(B_l) < t_(D_l) < t_(B_(l-1)) is certified as well."""
    if family not in ("A", "B", "D"):
        raise ValueError("smallest-root sequences exist for families A, B, D")
    eps = Fraction(eps)
    start = {"A": 1, "B": 2, "D": 4}[family]
    if l_max < start:
        raise ValueError(f"family {family} starts at rank {start}")

    @lru_cache(maxsize=None)
    def smallest(fam: str, rank: int):
        n = skew_growth(CoxeterType(fam, rank)).poly
        boxes = isolate_roots(n, 0, 1)
        if len(boxes) != rank:
            raise RuntimeError(f"expected {rank} roots for {fam}{rank}, found {len(boxes)}")
        return refine_root(n, boxes[-1], eps), n

    out = []
    prev = None
    for l in range(start, l_max + 1):
        box, n = smallest(family, l)
        if prev is not None and not _certify_decreasing([prev, (box, n)]):
            raise RuntimeError(f"smallest roots of {family}{l - 1} and {family}{l} failed to decrease")
        if family == "D":
            lo_b, nb = smallest("B", l)
            hi_b, nb1 = smallest("B", l - 1)
            if not _certify_decreasing([(hi_b, nb1), (box, n), (lo_b, nb)]):
                raise RuntimeError(f"sandwich inequality failed at D{l}")
        out.append((l, box))
        prev = (box, n)
    return out


@dataclass(frozen=True)
class IrreducibilityCertificate:
    """One-sided verdict: Certified when some prime shows the whole reduced
    polynomial irreducible mod p; Inconclusive otherwise, never Reducible."""

    status: str
    degree: int
    prime: Optional[int] = None
    tried: tuple = ()

    def __bool__(self) -> bool:
        return self.status == "Certified"


def _first_primes_above(n: int, count: int) -> list:
    out = []
    q = n + 1
    while len(out) < count:
        if _is_prime(q):
            out.append(q)
        q += 1
    return out


def irreducibility_certificate(ctype: CoxeterType, primes=None) -> IrreducibilityCertificate:
    """Try to certify irreducibility of N after stripping its known factors.

    Strips (1 - t) always and (1 - 2t) when present, then scans primes for
    one modulo which the remainder is irreducible.  Default prime list: the
    first max(50, 8 * degree) primes above the degree.  Irreducible-mod-p
    primes have density roughly 1/degree when the Galois group is the full
    symmetric group, so a scan shorter than a few multiples of the degree
    misses routinely; at 8x the expected hit count is about 8 per type.
    """
    h = reduced_skew_growth(ctype)
    if has_factor_one_minus_2t(ctype):
        h = poly_divexact(h, 1 - 2 * t)
    d = h.degree
    if d <= 1:
        return IrreducibilityCertificate("Certified", d)
    if primes is None:
        primes = _first_primes_above(d, max(50, 8 * d))
    tried = []
    for q in primes:
        tried.append(q)
        try:
            degs = factor_degrees_mod_p(h, q)
        except (BadPrimeError, ValueError):
            continue
        if degs == (d,):
            return IrreducibilityCertificate("Certified", d, q, tuple(tried))
    return IrreducibilityCertificate("Inconclusive", d, None, tuple(tried))
