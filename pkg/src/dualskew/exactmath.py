"""Exact scalars and dense univariate polynomial arithmetic.

Everything downstream is built on two polynomial kinds with one shared
layout: ``coeffs[k]`` is the coefficient of t**k, stored ascending, and
the trailing entry is nonzero (the zero polynomial is the empty tuple).
``IntPoly`` holds Python ints, ``RatPoly`` holds ``Fraction``.  Mixed
arithmetic promotes to ``RatPoly``; demotion back to ``IntPoly`` insists
on unit denominators.  ``BigRat`` is an alias for ``fractions.Fraction``,
which already is the reduced, positive-denominator rational we need.

No floats anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, perm
from typing import Iterable, Union

BigRat = Fraction

Scalar = Union[int, Fraction]

__all__ = [
    "BigRat",
    "IntPoly",
    "RatPoly",
    "BadPrimeError",
    "t",
    "poly_derive",
    "poly_divide",
    "poly_divexact",
    "poly_gcd",
    "poly_eval",
    "binomial_general",
    "factor_degrees_mod_p",
    "content",
    "primitive_part",
]


def _trim(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def _add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


class _PolyOps:
    """Arithmetic shared by both polynomial kinds."""

    __slots__ = ()
    coeffs: tuple

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if isinstance(other, _PolyOps):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return _result_kind(self, other)(_add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return type(self)(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return _result_kind(self, other)(_add(self.coeffs, tuple(-c for c in other.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            kind = RatPoly if isinstance(other, Fraction) and other.denominator != 1 else type(self)
            if isinstance(other, Fraction) and other.denominator == 1:
                other = other.numerator if kind is IntPoly else other
            return kind(tuple(c * other for c in self.coeffs))
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return _result_kind(self, other)(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers take a nonnegative integer exponent")
        out = type(self)((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __call__(self, x: Scalar):
        return poly_eval(self, x)

    def shift(self, k: int):
        """Multiply by t**k (k >= 0)."""
        if k < 0:
            raise ValueError("shift takes k >= 0")
        if not self.coeffs:
            return self
        return type(self)((0,) * k + self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "t" if mag == 1 else f"{mag}t"
            else:
                body = f"t^{k}" if mag == 1 else f"{mag}t^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


@dataclass(frozen=True, eq=False)
class IntPoly(_PolyOps):
    """Dense polynomial over the integers."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"IntPoly wants integer coefficients, got {c!r}")
        object.__setattr__(self, "coeffs", _trim(cs))

    def to_ratpoly(self) -> "RatPoly":
        return RatPoly(tuple(Fraction(c) for c in self.coeffs))

    @staticmethod
    def binom_expand(c0: int, c1: int, n: int) -> "IntPoly":
        """(c0 + c1*t)**n by the binomial theorem, avoiding repeated products."""
        return IntPoly(tuple(comb(n, k) * c1**k * c0 ** (n - k) for k in range(n + 1)))


@dataclass(frozen=True, eq=False)
class RatPoly(_PolyOps):
    """Dense polynomial over Fraction."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in self.coeffs]
        object.__setattr__(self, "coeffs", _trim(cs))

    def to_intpoly(self) -> IntPoly:
        """Demote; every denominator must be 1."""
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"cannot demote to IntPoly: coefficient {c} is not an integer")
        return IntPoly(tuple(c.numerator for c in self.coeffs))


#: the indeterminate, for readable construction: 1 - 3*t + 2*t**2
t = IntPoly((0, 1))


def _as_poly(v):
    if isinstance(v, _PolyOps):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    if isinstance(v, Fraction):
        return RatPoly((v,))
    return NotImplemented


def _result_kind(a, b):
    return RatPoly if RatPoly in (type(a), type(b)) else IntPoly


def poly_derive(p: _PolyOps, k: int = 1) -> _PolyOps:
    """Exact k-th formal derivative, in one pass via falling factorials."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    cs = p.coeffs
    if k == 0:
        return p
    if k > p.degree:
        return type(p)(())
    return type(p)(tuple(cs[j + k] * perm(j + k, k) for j in range(len(cs) - k)))


def poly_divide(num, den) -> tuple[RatPoly, RatPoly]:
    """Euclidean division over the rationals: num = den*q + r, deg r < deg den."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(num.to_ratpoly().coeffs if isinstance(num, IntPoly) else num.coeffs)
    d = den.to_ratpoly().coeffs if isinstance(den, IntPoly) else den.coeffs
    dd, lead = len(d) - 1, d[-1]
    q = [Fraction(0)] * max(len(r) - dd, 0)
    while len(r) - 1 >= dd and r:
        c = r[-1] / lead
        shift = len(r) - 1 - dd
        q[shift] = c
        for i in range(len(d) - 1):
            r[shift + i] -= c * d[i]
        r.pop()
        while r and not r[-1]:
            r.pop()
    return RatPoly(tuple(q)), RatPoly(tuple(r))


def poly_divexact(num, den):
    """Division known to be exact; raises if a remainder appears.

    Keeps IntPoly results for IntPoly inputs (integrality is checked).
    """
    if isinstance(num, IntPoly) and isinstance(den, IntPoly) and den.coeffs and den.coeffs[-1] in (1, -1):
        # monic up to sign: stay in integer arithmetic
        r = list(num.coeffs)
        d = den.coeffs
        dd, lead = len(d) - 1, d[-1]
        q = [0] * max(len(r) - dd, 0)
        while len(r) - 1 >= dd and r:
            c = r[-1] * lead  # lead is +-1
            shift = len(r) - 1 - dd
            q[shift] = c
            for i in range(len(d) - 1):
                r[shift + i] -= c * d[i]
            r.pop()
            while r and not r[-1]:
                r.pop()
        if r:
            raise ValueError("division is not exact")
        return IntPoly(tuple(q))
    q, r = poly_divide(num, den)
    if r:
        raise ValueError("division is not exact")
    if isinstance(num, IntPoly) and isinstance(den, IntPoly):
        return q.to_intpoly()
    return q


def div_scalar_exact(p: IntPoly, m: int) -> IntPoly:
    """Divide every coefficient by the integer m, which must divide exactly."""
    out = []
    for c in p.coeffs:
        q, rem = divmod(c, m)
        if rem:
            raise ValueError(f"coefficient {c} not divisible by {m}")
        out.append(q)
    return IntPoly(tuple(out))


def content(p: IntPoly) -> int:
    """gcd of the coefficients, nonnegative; 0 only for the zero polynomial."""
    g = 0
    for c in p.coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive_part(p: IntPoly) -> IntPoly:
    """p divided by its content, sign kept."""
    g = content(p)
    if g in (0, 1):
        return p
    return IntPoly(tuple(c // g for c in p.coeffs))


def _pseudo_rem(a: tuple, b: tuple) -> tuple[tuple, int]:
    """Fraction-free remainder: returns (r, m) with m*poly(a) = q*poly(b) + poly(r).

    m is lc(b)**(deg a - deg b + 1); every interior division is exact.
    """
    lb = b[-1]
    m = lb ** (len(a) - len(b) + 1)
    r = [c * m for c in a]
    dd = len(b) - 1
    while len(r) - 1 >= dd and r:
        c, rem = divmod(r[-1], lb)
        assert rem == 0, "pseudo-remainder interior division must be exact"
        shift = len(r) - 1 - dd
        for i in range(len(b) - 1):
            r[shift + i] -= c * b[i]
        r.pop()
        while r and not r[-1]:
            r.pop()
    return tuple(r), m


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive-PRS Euclid)."""
    a, b = p.coeffs, q.coeffs
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    a = primitive_part(IntPoly(a)).coeffs
    b = primitive_part(IntPoly(b)).coeffs
    if len(a) < len(b):
        a, b = b, a
    while b:
        r, _ = _pseudo_rem(a, b)
        a, b = b, primitive_part(IntPoly(r)).coeffs
    if a and a[-1] < 0:
        a = tuple(-c for c in a)
    return IntPoly(a)


def poly_eval(p: _PolyOps, x: Scalar):
    """Exact evaluation.  Rational points use homogeneous Horner over ints."""
    cs = p.coeffs
    if not cs:
        return 0
    if isinstance(x, Fraction) and x.denominator != 1:
        num, den = x.numerator, x.denominator
        if isinstance(p, IntPoly):
            acc = cs[-1]
            pd = 1
            for k in range(len(cs) - 2, -1, -1):
                pd *= den
                acc = acc * num + cs[k] * pd
            return Fraction(acc, pd)
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * x + c
        return acc
    x = x.numerator if isinstance(x, Fraction) else x
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def sign_at(p: _PolyOps, x: Scalar) -> int:
    """Sign of p(x) in {-1, 0, 1}, avoiding Fraction normalization."""
    cs = p.coeffs
    if not cs:
        return 0
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
    else:
        num, den = x, 1
    if isinstance(p, RatPoly):
        v = poly_eval(p, Fraction(num, den))
        return (v > 0) - (v < 0)
    acc = cs[-1]
    pd = 1
    for k in range(len(cs) - 2, -1, -1):
        pd *= den
        acc = acc * num + cs[k] * pd
    return (acc > 0) - (acc < 0)


def binomial_general(a: Union[int, Fraction], k: int):
    """Generalized binomial a(a-1)...(a-k+1)/k!.

    Integer a >= 0 falls through to math.comb (so 0 <= a < k gives 0);
    other arguments use the falling-factorial product.
    """
    if k < 0:
        raise ValueError("binomial_general wants k >= 0; map negative k to 0 at the call site")
    if isinstance(a, Fraction) and a.denominator == 1:
        a = a.numerator
    if isinstance(a, int):
        if a >= 0:
            return comb(a, k)
        num = 1
        for i in range(k):
            num *= a - i
        q, rem = divmod(num, factorial(k))
        assert rem == 0
        return q
    num = Fraction(1)
    for i in range(k):
        num *= a - i
    return num / factorial(k)


class BadPrimeError(ValueError):
    """The reduction mod this prime is not squarefree; pick another prime."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- polynomials over the prime field: plain int lists, ascending ----------

def _mp_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _mp_monic(a: list, p: int) -> list:
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _mp_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    r = list(a)
    dd = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(r) - dd, 0)
    while len(r) - 1 >= dd and r:
        c = r[-1] * inv % p
        shift = len(r) - 1 - dd
        q[shift] = c
        for i in range(len(b) - 1):
            r[shift + i] = (r[shift + i] - c * b[i]) % p
        r.pop()
        _mp_trim(r)
    return q, r


def _mp_mulmod(a: list, b: list, mod: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    _mp_trim(out)
    return _mp_divmod(out, mod, p)[1]


def _mp_gcd(a: list, b: list, p: int) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, _mp_divmod(a, b, p)[1]
    return _mp_monic(a, p)


def _mp_powmod(a: list, e: int, mod: list, p: int) -> list:
    out = [1]
    base = _mp_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            out = _mp_mulmod(out, base, mod, p)
        base = _mp_mulmod(base, base, mod, p)
        e >>= 1
    return out


def factor_degrees_mod_p(poly: IntPoly, prime: int) -> tuple:
    """Degrees (with multiplicity) of the irreducible factors of poly mod prime.

    Distinct-degree factorization; the degree multiset is all we ever need.
    Requires the reduction to keep full degree and to be squarefree.
    """
    if not _is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if not poly:
        raise ValueError("zero polynomial has no factorization")
    if poly.coeffs[-1] % prime == 0:
        raise ValueError(f"prime {prime} divides the leading coefficient")
    f = _mp_monic([c % prime for c in poly.coeffs], prime)
    df = _mp_trim([k * f[k] % prime for k in range(1, len(f))])
    if not df or len(_mp_gcd(f, df, prime)) > 1:
        raise BadPrimeError(f"reduction mod {prime} is not squarefree")
    degrees = []
    x = [0, 1]
    h = list(x)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _mp_powmod(h, prime, f, prime)
        diff = list(h)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % prime
        _mp_trim(diff)
        g = _mp_gcd(f, diff, prime)
        if len(g) > 1:
            degrees += [d] * ((len(g) - 1) // d)
            f = _mp_divmod(f, g, prime)[0]
            h = _mp_divmod(h, f, prime)[1]
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return tuple(sorted(degrees))
