from fractions import Fraction
from math import factorial

import pytest

from dualskew.exactmath import IntPoly, RatPoly, binomial_general, div_scalar_exact, poly_derive, poly_eval, t
from dualskew.orthopoly import (
    H_deriv_at_half,
    H_deriv_at_half_closed,
    H_poly,
    JacobiParams,
    d_from_b_expression,
    h_deriv_at_half,
    recurrence_coeffs_D,
    rodrigues_poly,
    shifted_jacobi,
    shifted_legendre,
    verify_jacobi_identity,
    verify_legendre_identity,
    verify_recurrence,
)
from dualskew.skewgrowth import CoxeterType, skew_growth


def N(spec):
    return skew_growth(CoxeterType.parse(spec)).poly


def reflect(p):
    """p(1 - t), exactly."""
    acc = IntPoly(()) if isinstance(p, IntPoly) else RatPoly(())
    for k, c in enumerate(p.coeffs):
        if c:
            acc = acc + c * IntPoly.binom_expand(1, -1, k)
    return acc


def test_rodrigues_examples():
    assert rodrigues_poly("A", 1) == 1 - t
    assert rodrigues_poly("B", 2) == 1 - 4 * t + 3 * t**2
    assert rodrigues_poly("D", 4) == N("D4")
    assert rodrigues_poly("D", 4, form=2) == N("D4")


def test_rodrigues_rejects():
    with pytest.raises(ValueError):
        rodrigues_poly("A", 0)
    with pytest.raises(ValueError):
        rodrigues_poly("D", 3)
    with pytest.raises(ValueError):
        rodrigues_poly("E", 6)
    with pytest.raises(ValueError):
        rodrigues_poly("D", 5, form=3)


@pytest.mark.parametrize("l", range(1, 26))
def test_rodrigues_matches_catalog_A(l):
    assert rodrigues_poly("A", l) == N(f"A{l}")


@pytest.mark.parametrize("l", range(2, 26))
def test_rodrigues_matches_catalog_B(l):
    assert rodrigues_poly("B", l) == N(f"B{l}")


@pytest.mark.parametrize("l", range(4, 26))
def test_rodrigues_matches_catalog_D_both_forms(l):
    nd = N(f"D{l}")
    assert rodrigues_poly("D", l) == nd
    assert rodrigues_poly("D", l, form=2) == nd


def test_jacobi_small_values():
    assert shifted_jacobi(JacobiParams(3, 7, 0)) == 1
    assert shifted_jacobi(JacobiParams(1, 1, 1)) == 4 * t - 2
    assert shifted_jacobi(JacobiParams(1, 0, 1)) == 3 * t - 1
    assert shifted_jacobi(JacobiParams(2, 0, 1)) == 4 * t - 1


def test_jacobi_parameter_bounds():
    with pytest.raises(ValueError):
        JacobiParams(-1, 0, 2)
    with pytest.raises(ValueError):
        JacobiParams(0, Fraction(-3, 2), 2)
    with pytest.raises(ValueError):
        JacobiParams(0, 0, -1)


def test_jacobi_h3_expression_against_catalog():
    # brute-force anchor for the normalization constant: the binomial-sum
    # definition of the degree-2 polynomial with parameters (1, -1/2),
    # scaled by 8/3 (1-t), must hit the catalog H3 row on the nose
    a, b, l = Fraction(1), Fraction(-1, 2), 2
    p = RatPoly(())
    for s in range(l + 1):
        c = binomial_general(l + a, l - s) * binomial_general(l + b, s)
        p = p + c * IntPoly.binom_expand(-1, 1, s).shift(l - s)
    assert p == RatPoly((Fraction(3, 8), Fraction(-21, 4), Fraction(63, 8)))
    assert Fraction(8, 3) * (1 - t) * p == N("H3").to_ratpoly()


def test_jacobi_identity_families():
    assert verify_jacobi_identity(CoxeterType("A", 2))
    assert verify_jacobi_identity(CoxeterType("B", 2))
    for l in range(1, 16):
        assert verify_jacobi_identity(CoxeterType("A", l))
    for l in range(2, 16):
        assert verify_jacobi_identity(CoxeterType("B", l))
    for l in range(4, 16):
        assert verify_jacobi_identity(CoxeterType("D", l))
    assert verify_jacobi_identity(CoxeterType("H", 3))


def test_jacobi_identity_dihedral():
    for p in range(3, 20):
        assert verify_jacobi_identity(CoxeterType("I2", p))
    # a non-default parameter pair: p = 5, b = 1 forces a = 5
    assert verify_jacobi_identity(CoxeterType("I2", 5), a=5, b=1)
    assert verify_jacobi_identity(CoxeterType("I2", 7), a=Fraction(4), b=Fraction(0))
    with pytest.raises(ValueError):
        verify_jacobi_identity(CoxeterType("I2", 5), a=1, b=1)
    with pytest.raises(ValueError):
        verify_jacobi_identity(CoxeterType("I2", 5), a=2)


def test_jacobi_identity_unsupported():
    with pytest.raises(ValueError):
        verify_jacobi_identity(CoxeterType("E", 6))
    with pytest.raises(ValueError):
        verify_jacobi_identity(CoxeterType("H", 4))


def test_legendre_values():
    assert shifted_legendre(0) == 1
    assert shifted_legendre(1) == 2 * t - 1
    assert shifted_legendre(2) == 6 * t**2 - 6 * t + 1


def test_legendre_equals_zero_parameter_jacobi():
    for l in range(0, 12):
        assert shifted_jacobi(JacobiParams(0, 0, l)) == shifted_legendre(l).to_ratpoly()


def test_legendre_identity_examples():
    assert verify_legendre_identity("A", 1)
    assert verify_legendre_identity("B", 2)
    assert verify_legendre_identity("A", 20)
    for l in range(1, 21):
        assert verify_legendre_identity("A", l)
    for l in range(2, 21):
        assert verify_legendre_identity("B", l)
    with pytest.raises(ValueError):
        verify_legendre_identity("D", 5)


def test_d_recurrence_coefficients_at_one():
    k = recurrence_coeffs_D(1)
    assert k.a == Fraction(47, 20)
    assert k.f == 0
    assert k.g == 0


def test_recurrence_A_example():
    lhs = 4 * N("A3")
    rhs = -5 * (2 * t - 1) * N("A2") - N("A1")
    expected = 4 - 24 * t + 40 * t**2 - 20 * t**3
    assert lhs == expected
    assert rhs == expected
    assert verify_recurrence("A", 1)


def test_recurrences_hold():
    for l in range(1, 25):
        assert verify_recurrence("A", l)
    for l in range(2, 25):
        assert verify_recurrence("B", l)
    for l in range(4, 25):
        assert verify_recurrence("D", l)
    for l in range(0, 25):
        assert verify_recurrence("P", l)
    with pytest.raises(ValueError):
        verify_recurrence("D", 3)
    with pytest.raises(ValueError):
        verify_recurrence("E", 6)


def test_H_poly_values():
    assert H_poly(3) == 1 - 5 * t + 5 * t**2
    assert H_poly(4) == 8 * t**4 - 16 * t**3 + 10 * t**2 - 2 * t
    with pytest.raises(ValueError):
        H_poly(2)


@pytest.mark.parametrize("l", range(3, 9))
def test_H_poly_reflection_symmetry(l):
    h = H_poly(l)
    assert reflect(h) == h


@pytest.mark.parametrize("l", range(4, 11))
def test_H_derivative_formula_reproduces_D(l):
    # N_D_l = (-1)^(l-3)/(l-2)! d^(l-3)[(1-t) H_l]
    got = div_scalar_exact(poly_derive((1 - t) * H_poly(l), l - 3), factorial(l - 2))
    if (l - 3) % 2:
        got = -got
    assert got == N(f"D{l}")


@pytest.mark.parametrize("l", range(4, 11))
def test_H_leibniz_split(l):
    # the same identity with the product rule unrolled once:
    # (1-t) H^(l-3) - (l-3) H^(l-4)
    h = H_poly(l)
    combo = (1 - t) * poly_derive(h, l - 3) - (l - 3) * poly_derive(h, l - 4)
    got = div_scalar_exact(combo, factorial(l - 2))
    if (l - 3) % 2:
        got = -got
    assert got == N(f"D{l}")


def test_h_deriv_at_half_values():
    assert h_deriv_at_half(2, 1) == 0
    assert h_deriv_at_half(2, 2) == -1
    assert h_deriv_at_half(4, 2) == Fraction(-1, 8)
    assert h_deriv_at_half(3, 0) == Fraction(-1, 64)
    with pytest.raises(ValueError):
        h_deriv_at_half(2, 3)
    with pytest.raises(ValueError):
        h_deriv_at_half(2, -1)


def test_h_deriv_at_half_matches_differentiation():
    for k in range(0, 13):
        base = IntPoly.binom_expand(-1, 1, k).shift(k)  # (t(t-1))^k
        for i in range(0, k + 1):
            direct = poly_eval(poly_derive(base, i), Fraction(1, 2))
            assert h_deriv_at_half(k, i) == direct, (k, i)


def test_H_deriv_at_half_examples():
    assert H_deriv_at_half(4, 2) == -4
    assert H_deriv_at_half_closed(4) == (2, -4)
    assert H_deriv_at_half_closed(5) == (2, Fraction(9, 8))
    assert H_deriv_at_half_closed(3) == (0, Fraction(-1, 4))
    assert H_deriv_at_half(3, 0) == Fraction(-1, 4)


@pytest.mark.parametrize("l", range(3, 41))
def test_H_deriv_at_half_closed_matches_direct(l):
    order, value = H_deriv_at_half_closed(l)
    assert H_deriv_at_half(l, order) == value


def test_d_from_b():
    assert d_from_b_expression(4) == N("D4")
    assert d_from_b_expression(5) == N("D5")
    for l in range(4, 31):
        assert d_from_b_expression(l) == N(f"D{l}")
    with pytest.raises(ValueError):
        d_from_b_expression(3)


def test_check_result_diagnostic():
    res = verify_jacobi_identity(CoxeterType("A", 7))
    assert res.ok and res.detail.startswith("jacobi")
