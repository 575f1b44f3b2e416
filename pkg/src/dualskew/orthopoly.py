"""Rodrigues-type formulas, shifted Jacobi/Legendre polynomials, and the
exact identities tying them to the skew-growth polynomials.

Everything here is an exact computation over the integers or rationals.
The verify_* functions compare two independently computed sides of an
identity and report the first differing coefficient on failure, so a
broken identity tells you where it broke, not just that it did.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exactmath import (
    BigRat,
    IntPoly,
    RatPoly,
    binomial_general,
    div_scalar_exact,
    poly_derive,
    poly_divexact,
    poly_eval,
    t,
)
from .skewgrowth import CoxeterType, skew_growth

__all__ = [
    "CheckResult",
    "JacobiParams",
    "DRecurrenceCoeffs",
    "rodrigues_poly",
    "shifted_jacobi",
    "shifted_legendre",
    "verify_jacobi_identity",
    "verify_legendre_identity",
    "recurrence_coeffs_D",
    "verify_recurrence",
    "H_poly",
    "h_deriv_at_half",
    "H_deriv_at_half",
    "H_deriv_at_half_closed",
    "d_from_b_expression",
]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exact identity check; truthy iff the identity held."""

    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _compare(lhs, rhs, label: str) -> CheckResult:
    diff = lhs - rhs
    if not diff:
        return CheckResult(True, label)
    for k, c in enumerate(diff.coeffs):
        if c:
            la = lhs.coeffs[k] if k < len(lhs.coeffs) else 0
            ra = rhs.coeffs[k] if k < len(rhs.coeffs) else 0
            return CheckResult(False, f"{label}: first differing coefficient at t^{k}: {la} vs {ra}")
    raise AssertionError("unreachable")


def rodrigues_poly(family: str, l: int, form: int = 1) -> IntPoly:
    """The derivative-formula side for N of type family_l, expanded exactly.

    For D there are two equivalent derivative expressions; ``form`` picks
    one (1 = two-term sum, 2 = single derivative of the degree-2 cofactor).
    """
    if family == "A":
        if l < 1:
            raise ValueError("A needs l >= 1")
        inner = IntPoly.binom_expand(1, -1, l).shift(l)  # t^l (1-t)^l
        return poly_divexact(div_scalar_exact(poly_derive(inner, l - 1), factorial(l)), t)
    if family == "B":
        if l < 2:
            raise ValueError("B needs l >= 2")
        inner = IntPoly.binom_expand(1, -1, l).shift(l - 1)
        return div_scalar_exact(poly_derive(inner, l - 1), factorial(l - 1))
    if family == "D":
        if l < 4:
            raise ValueError("D needs l >= 4")
        if form == 1:
            first = div_scalar_exact(
                poly_derive(IntPoly.binom_expand(1, -1, l).shift(l - 2), l - 2), factorial(l - 2)
            )
            second = div_scalar_exact(
                poly_derive(IntPoly.binom_expand(1, -1, l - 2).shift(l - 1), l - 3), factorial(l - 3)
            )
            return first + second
        if form == 2:
            cofactor = IntPoly((l - 2, -(3 * l - 4), 3 * l - 4))
            inner = IntPoly.binom_expand(1, -1, l - 2).shift(l - 3) * cofactor
            return div_scalar_exact(poly_derive(inner, l - 3), factorial(l - 2))
        raise ValueError(f"form must be 1 or 2, got {form}")
    raise ValueError(f"no derivative formula for family {family!r}")


@dataclass(frozen=True)
class JacobiParams:
    """Parameters (alpha, beta, degree) of a shifted Jacobi polynomial."""

    alpha: BigRat
    beta: BigRat
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha <= -1 or self.beta <= -1:
            raise ValueError(f"Jacobi parameters must exceed -1, got ({self.alpha}, {self.beta})")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")


def _jacobi_by_sum(params: JacobiParams) -> RatPoly:
    l, a, b = params.degree, params.alpha, params.beta
    acc = RatPoly(())
    for s in range(l + 1):
        c = binomial_general(l + a, l - s) * binomial_general(l + b, s)
        if c:
            acc = acc + c * IntPoly.binom_expand(-1, 1, s).shift(l - s)
    return acc


def _jacobi_by_derivative(l: int, a: int, b: int) -> RatPoly:
    inner = IntPoly.binom_expand(-1, 1, l + a).shift(l + b)  # (t-1)^(l+a) t^(l+b)
    num = div_scalar_exact(poly_derive(inner, l), factorial(l))
    num = poly_divexact(num, IntPoly.binom_expand(-1, 1, a))
    if b:
        num = poly_divexact(num, t**b)
    return num.to_ratpoly()


@lru_cache(maxsize=None)
def shifted_jacobi(params: JacobiParams) -> RatPoly:
    """The Jacobi polynomial in the variable 2t - 1, exactly.

    General rational parameters use the finite binomial sum over
    (t-1)^s t^(l-s).  Nonnegative integer parameters are additionally
    recomputed through the derivative identity
    (t-1)^a t^b P = (1/l!) d^l[(t-1)^(l+a) t^(l+b)], whose exact
    divisions double as a self-check; the two routes must agree.
    """
    p = _jacobi_by_sum(params)
    a, b = params.alpha, params.beta
    if a.denominator == 1 and b.denominator == 1 and a >= 0 and b >= 0:
        q = _jacobi_by_derivative(params.degree, a.numerator, b.numerator)
        if p != q:
            raise RuntimeError(f"Jacobi routes disagree for {params}: {p} vs {q}")
    return p


@lru_cache(maxsize=None)
def shifted_legendre(l: int) -> IntPoly:
    """Legendre polynomial in the variable 2t - 1; integer coefficients."""
    if l < 0:
        raise ValueError("degree must be nonnegative")
    return IntPoly(tuple((-1) ** (l + k) * comb(l + k, 2 * k) * comb(2 * k, k) for k in range(l + 1)))


def verify_jacobi_identity(ctype: CoxeterType, a: BigRat = None, b: BigRat = None) -> CheckResult:
    """Check the shifted-Jacobi expression of N for the supported types.

    A, B, D use integer parameters fixed by the family.  H3 uses the
    parameter pair (1, -1/2) with normalization 8/3 (1-t); I2(p) uses any
    rational pair with 1 + a = (p-2)(1 + b), by default b = 0, a = p - 3,
    with normalization (t-1)/(1+b).  Both non-crystallographic constants
    were pinned down by expanding the candidate right-hand sides against
    the catalog polynomials.
    """
    n = skew_growth(ctype).poly
    fam, l = ctype.family, ctype.rank
    if fam == "A":
        rhs = Fraction((-1) ** (l - 1), l) * (1 - t) * shifted_jacobi(JacobiParams(1, 1, l - 1))
    elif fam == "B":
        rhs = (-1) ** (l - 1) * (1 - t) * shifted_jacobi(JacobiParams(1, 0, l - 1))
    elif fam == "D":
        rhs = (-1) ** (l - 2) * (1 - t) ** 2 * shifted_jacobi(JacobiParams(2, 0, l - 2)) + (
            -1
        ) ** (l - 1) * (t**2) * (1 - t) * shifted_jacobi(JacobiParams(1, 2, l - 3))
    elif fam == "H" and l == 3:
        rhs = Fraction(8, 3) * (1 - t) * shifted_jacobi(JacobiParams(1, Fraction(-1, 2), 2))
    elif fam == "I2":
        p = ctype.p
        if a is None and b is None:
            b = Fraction(0)
            a = Fraction(p - 3)
        elif a is None or b is None:
            raise ValueError("supply both parameters or neither")
        a, b = Fraction(a), Fraction(b)
        if 1 + a != (p - 2) * (1 + b):
            raise ValueError(f"need 1 + a = (p-2)(1 + b); got a={a}, b={b}, p={p}")
        rhs = Fraction(1, 1 + b) * (t - 1) * shifted_jacobi(JacobiParams(a, b, 1))
    else:
        raise ValueError(f"no Jacobi expression wired for {ctype}")
    return _compare(n.to_ratpoly(), rhs, f"jacobi {ctype}")


def verify_legendre_identity(family: str, l: int) -> CheckResult:
    """Check the Legendre expressions: (t N_A)' and the B-series analogue."""
    p = shifted_legendre(l)
    if family == "A":
        n = skew_growth(CoxeterType("A", l)).poly
        return _compare(poly_derive(t * n, 1), (-1) ** l * p, f"legendre A{l}")
    if family == "B":
        n = skew_growth(CoxeterType("B", l)).poly
        lhs = l * n + t * poly_derive(n, 1)
        return _compare(lhs, (-1) ** l * l * p, f"legendre B{l}")
    raise ValueError(f"Legendre identities exist for families A and B, not {family!r}")


@dataclass(frozen=True)
class DRecurrenceCoeffs:
    """The seven rational coefficients of the four-term D-series recurrence."""

    a: BigRat
    b: BigRat
    c: BigRat
    d: BigRat
    e: BigRat
    f: BigRat
    g: BigRat


def recurrence_coeffs_D(l: int) -> DRecurrenceCoeffs:
    if l < 1:
        raise ValueError("l >= 1 required")
    den = (l + 3) * (43 * l**3 - 35 * l**2 - 36 * l - 32)
    return DRecurrenceCoeffs(
        a=Fraction((l + 2) * (43 * l**3 - 78 * l**2 - 129 * l - 24), den),
        b=Fraction(-(86 * l**4 + 145 * l**3 - 196 * l**2 - 623 * l - 456), den),
        c=Fraction(l * (43 * l**3 + 180 * l**2 + 45 * l + 56), den),
        d=Fraction(-2 * l * (172 * l**3 + 333 * l**2 - 23 * l - 32), den),
        e=Fraction(2 * (2 * l - 1) * (2 * l + 1) * (43 * l**2 + 51 * l - 24), den),
        f=Fraction(-(l - 1) * (43 * l**3 + 137 * l**2 + 38 * l - 48), den),
        g=Fraction((l - 1) * (2 * l + 1) * (43 * l**2 + 51 * l - 24), den),
    )


def verify_recurrence(family: str, l: int) -> CheckResult:
    """Check the three-term (A, B, Legendre) or four-term (D) recurrence at l.

    Family 'P' means the shifted Legendre three-term relation; it anchors
    the A/B relations, which reduce to it classically.
    """

    def N(fam: str, r: int) -> IntPoly:
        return skew_growth(CoxeterType(fam, r)).poly

    if family == "A":
        if l < 1:
            raise ValueError("A recurrence needs l >= 1")
        lhs = (l + 3) * N("A", l + 2)
        rhs = -(2 * l + 3) * (2 * t - 1) * N("A", l + 1) - l * N("A", l)
        return _compare(lhs, rhs, f"recurrence A at l={l}")
    if family == "B":
        if l < 2:
            raise ValueError("B recurrence needs l >= 2")
        lhs = (l + 2) * N("B", l + 2)
        mid = 2 * t - Fraction(2 * (2 * l**2 + 4 * l + 1), (2 * l + 1) * (2 * l + 3))
        rhs = -(2 * l + 3) * mid * N("B", l + 1) - Fraction(l * (2 * l + 3), 2 * l + 1) * N("B", l)
        return _compare(lhs.to_ratpoly(), rhs, f"recurrence B at l={l}")
    if family == "D":
        if l < 4:
            raise ValueError("D recurrence needs l >= 4 so that all four ranks exist")
        k = recurrence_coeffs_D(l)
        rhs = (
            (k.a + k.b * t) * N("D", l + 2)
            + (k.c + k.d * t + k.e * t**2) * N("D", l + 1)
            + (k.f + k.g * t) * N("D", l)
        )
        return _compare(N("D", l + 3).to_ratpoly(), rhs, f"recurrence D at l={l}")
    if family == "P":
        if l < 0:
            raise ValueError("l >= 0 required")
        lhs = (l + 2) * shifted_legendre(l + 2)
        rhs = (2 * l + 3) * (2 * t - 1) * shifted_legendre(l + 1) - (l + 1) * shifted_legendre(l)
        return _compare(lhs, rhs, f"recurrence P at l={l}")
    raise ValueError(f"no recurrence for family {family!r}")


@lru_cache(maxsize=None)
def H_poly(l: int) -> IntPoly:
    """(t^2 - t)^(l-3) ((l-2) - (3l-4)t + (3l-4)t^2), expanded."""
    if l < 3:
        raise ValueError("H_poly needs l >= 3")
    base = IntPoly.binom_expand(-1, 1, l - 3).shift(l - 3)  # (t-1)^(l-3) t^(l-3)
    return base * IntPoly((l - 2, -(3 * l - 4), 3 * l - 4))


def h_deriv_at_half(k: int, i: int) -> BigRat:
    """The i-th derivative of (t(t-1))^k at t = 1/2, in closed form.

    Odd orders vanish by the symmetry t -> 1 - t; even order 2j gives
    (-1/4)^(k-j) k! (2j)! / ((k-j)! j!).
    """
    if not 0 <= i <= k:
        raise ValueError(f"order must satisfy 0 <= i <= k, got i={i}, k={k}")
    if i % 2:
        return Fraction(0)
    j = i // 2
    return Fraction(-1, 4) ** (k - j) * Fraction(factorial(k) * factorial(2 * j), factorial(k - j) * factorial(j))


def H_deriv_at_half(l: int, order: int) -> BigRat:
    """d^order H_l / dt^order at t = 1/2, by literal differentiation."""
    if l < 3:
        raise ValueError("needs l >= 3")
    if order < 0:
        raise ValueError("order must be nonnegative")
    return Fraction(poly_eval(poly_derive(H_poly(l), order), Fraction(1, 2)))


def H_deriv_at_half_closed(l: int) -> tuple[int, BigRat]:
    """The order-2L derivative of H_l at 1/2 (L = l // 4) from the closed
    form indexed by l mod 4; returns (order, value)."""
    if l < 3:
        raise ValueError("needs l >= 3")
    L, r = divmod(l, 4)
    two = Fraction(2)
    if r == 0:
        v = (-1) ** L * two ** (6 - 6 * L) * Fraction(factorial(4 * L - 2) * factorial(2 * L), factorial(3 * L - 2) * factorial(L))
    elif r == 1:
        v = (-1) ** (L + 1) * two ** (2 - 6 * L) * 3 * Fraction(factorial(4 * L - 1) * factorial(2 * L), factorial(3 * L - 1) * factorial(L))
    elif r == 2:
        v = (-1) ** L * two ** (1 - 6 * L) * Fraction(factorial(4 * L) * factorial(2 * L), factorial(3 * L) * factorial(L))
    else:
        v = (-1) ** (L + 1) * two ** (-2 - 6 * L) * Fraction(factorial(4 * L + 1) * factorial(2 * L), factorial(3 * L + 1) * factorial(L))
    return 2 * L, v


def d_from_b_expression(l: int) -> IntPoly:
    """N of D_l written through the two B-series polynomials below it:
    ((l-2) N_B_l + ((l+1) - (2l-1)t) N_B_(l-1)) / (2l-1)."""
    if l < 4:
        raise ValueError("needs l >= 4")
    nb = skew_growth(CoxeterType("B", l)).poly
    nb1 = skew_growth(CoxeterType("B", l - 1)).poly
    combo = (l - 2) * nb + (IntPoly((l + 1, -(2 * l - 1)))) * nb1
    return div_scalar_exact(combo, 2 * l - 1)
