"""Finite Coxeter types and the skew-growth polynomials of their dual Artin monoids.

The four infinite families carry closed-form coefficient sums; the
exceptional and non-crystallographic types are literal coefficient rows.
Every polynomial is degree = rank, starts at 1, vanishes at t = 1, and
strictly alternates in sign; ``SkewGrowthPoly`` refuses to exist otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .exactmath import BigRat, IntPoly, div_scalar_exact, poly_derive, poly_divexact, poly_eval, t

__all__ = [
    "CoxeterType",
    "SkewGrowthPoly",
    "RANK_LIMIT",
    "skew_growth",
    "reduced_skew_growth",
    "has_factor_one_minus_2t",
    "derivative_at_one",
    "reflection_count",
    "all_types_of_rank_at_most",
]

#: generation guard for the infinite families; arithmetic stays exact at any
#: rank, this only caps runtime
RANK_LIMIT = 300

_EXCEPTIONAL_RANK = {"E": (6, 7, 8), "F": (4,), "G": (2,), "H": (3, 4)}

_TABLE_B = {
    ("E", 6): (1, -36, 300, -1035, 1720, -1368, 418),
    ("E", 7): (1, -63, 777, -3927, 9933, -13299, 9009, -2431),
    ("E", 8): (1, -120, 2135, -15120, 54327, -108360, 121555, -71760, 17342),
    ("F", 4): (1, -24, 101, -144, 66),
    ("G", 2): (1, -6, 5),
    ("H", 3): (1, -15, 35, -21),
    ("H", 4): (1, -60, 307, -480, 232),
}

_TYPE_RE = re.compile(r"^\s*(I2|[ABDEFGH])\s*[:(]?\s*(\d+)\s*\)?\s*$", re.IGNORECASE)


@dataclass(frozen=True, order=True)
class CoxeterType:
    """A finite Coxeter type: family letter, rank, and the dihedral parameter p.

    ``CoxeterType("I2", 7)`` reads the 7 as p (the rank of a dihedral type
    is always 2), so the rank slot doubles as the parameter slot for I2.
    """

    family: str
    rank: int
    p: Optional[int] = None

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if fam == "I2":
            p = self.p if self.p is not None else self.rank
            if p < 3:
                raise ValueError(f"I2 needs p >= 3, got p={p}")
            object.__setattr__(self, "rank", 2)
            object.__setattr__(self, "p", p)
            return
        if self.p is not None:
            raise ValueError(f"parameter p only applies to I2, not {fam}")
        r = self.rank
        if fam == "A":
            if r < 1:
                raise ValueError(f"A needs rank >= 1, got {r}")
        elif fam == "B":
            if r < 2:
                raise ValueError(f"B needs rank >= 2, got {r}")
        elif fam == "D":
            if r == 3:
                raise ValueError("D3 is excluded; it coincides with A3, use that")
            if r < 4:
                raise ValueError(f"D needs rank >= 4, got {r}")
        elif fam in _EXCEPTIONAL_RANK:
            if r not in _EXCEPTIONAL_RANK[fam]:
                allowed = ", ".join(str(v) for v in _EXCEPTIONAL_RANK[fam])
                raise ValueError(f"{fam} exists only at rank {allowed}, got {r}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def parse(cls, spec: str) -> "CoxeterType":
        """Parse 'A3', 'B:12', 'I2(7)', 'I2:7' (case-insensitive)."""
        m = _TYPE_RE.match(spec)
        if not m:
            raise ValueError(f"cannot parse Coxeter type {spec!r}; want e.g. A3, B:12, I2:7")
        fam, num = m.group(1).upper(), int(m.group(2))
        return cls(fam, num)

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2({self.p})"
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class SkewGrowthPoly:
    """The skew-growth polynomial of the dual Artin monoid of ``ctype``.

    Construction re-checks the structural facts that hold for every finite
    type: degree equals rank, constant term 1, a simple zero pattern of
    strictly alternating signs, and t = 1 is a root.
    """

    ctype: CoxeterType
    poly: IntPoly

    def __post_init__(self):
        n = self.poly
        if n.degree != self.ctype.rank:
            raise ValueError(f"degree {n.degree} != rank {self.ctype.rank} for {self.ctype}")
        if n.coeffs[0] != 1:
            raise ValueError(f"constant coefficient must be 1, got {n.coeffs[0]}")
        if poly_eval(n, 1) != 0:
            raise ValueError(f"t=1 must be a root of the skew growth of {self.ctype}")
        for k, c in enumerate(n.coeffs):
            if c == 0 or (c > 0) != (k % 2 == 0):
                raise ValueError(f"coefficients must strictly alternate in sign, broken at k={k}")

    @property
    def degree(self) -> int:
        return self.poly.degree


def _row_A(l: int) -> IntPoly:
    raw = IntPoly(tuple((-1) ** k * comb(l, k) * comb(l + k, k + 1) for k in range(l + 1)))
    return div_scalar_exact(raw, l)


def _row_B(l: int) -> IntPoly:
    return IntPoly(tuple((-1) ** k * comb(l, k) * comb(l + k - 1, k) for k in range(l + 1)))


def _row_D(l: int) -> IntPoly:
    def c(k: int) -> int:
        extra = comb(l - 2, k - 2) * comb(l + k - 3, k) if k >= 2 else 0
        return (-1) ** k * (comb(l, k) * comb(l + k - 2, k) + extra)

    return IntPoly(tuple(c(k) for k in range(l + 1)))


@lru_cache(maxsize=None)
def skew_growth(ctype: CoxeterType) -> SkewGrowthPoly:
    """The skew-growth polynomial N of the dual Artin monoid of type ctype."""
    fam, l = ctype.family, ctype.rank
    if fam in ("A", "B", "D") and l > RANK_LIMIT:
        raise ValueError(f"rank {l} exceeds the generation limit {RANK_LIMIT}")
    if fam == "A":
        poly = _row_A(l)
    elif fam == "B":
        poly = _row_B(l)
    elif fam == "D":
        poly = _row_D(l)
    elif fam == "I2":
        poly = IntPoly((1, -ctype.p, ctype.p - 1))
    else:
        poly = IntPoly(_TABLE_B[(fam, l)])
    return SkewGrowthPoly(ctype, poly)


def reduced_skew_growth(ctype: CoxeterType) -> IntPoly:
    """N / (1 - t); the division is always exact since N(1) = 0."""
    return poly_divexact(skew_growth(ctype).poly, 1 - t)


def has_factor_one_minus_2t(ctype: CoxeterType) -> bool:
    return poly_eval(skew_growth(ctype).poly, Fraction(1, 2)) == 0


def derivative_at_one(ctype: CoxeterType) -> BigRat:
    """Exact N'(1), cross-checked against the closed forms for A, B, D."""
    val = poly_eval(poly_derive(skew_growth(ctype).poly, 1), 1)
    l, sign = ctype.rank, (-1) ** ctype.rank
    expected = {"A": sign, "B": sign * l, "D": sign * (l - 2)}.get(ctype.family)
    if expected is not None and val != expected:
        raise RuntimeError(f"N'(1) = {val} for {ctype} disagrees with the closed form {expected}")
    return Fraction(val)


_REFLECTIONS = {
    ("E", 6): 36,
    ("E", 7): 63,
    ("E", 8): 120,
    ("F", 4): 24,
    ("G", 2): 6,
    ("H", 3): 15,
    ("H", 4): 60,
}


def reflection_count(ctype: CoxeterType) -> int:
    """Number of reflections of the Coxeter group; equals minus the linear
    coefficient of its skew growth."""
    fam, l = ctype.family, ctype.rank
    if fam == "A":
        return l * (l + 1) // 2
    if fam == "B":
        return l * l
    if fam == "D":
        return l * (l - 1)
    if fam == "I2":
        return ctype.p
    return _REFLECTIONS[(fam, l)]


def all_types_of_rank_at_most(bound: int, i2_max_p: int = 12) -> list[CoxeterType]:
    """Every valid type of rank <= bound, with I2 sampled up to i2_max_p."""
    out = [CoxeterType("A", l) for l in range(1, bound + 1)]
    out += [CoxeterType("B", l) for l in range(2, bound + 1)]
    out += [CoxeterType("D", l) for l in range(4, bound + 1)]
    for fam, ranks in _EXCEPTIONAL_RANK.items():
        out += [CoxeterType(fam, l) for l in ranks if l <= bound]
    if bound >= 2:
        out += [CoxeterType("I2", p) for p in range(3, i2_max_p + 1)]
    return out
