"""Exact-arithmetic checks for the coefficient routes.

Every route here is closed-form rational arithmetic, so cross-route
comparisons are == on Fractions, not approximate.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from debyekit import coeffs
from debyekit.precision import PoleError, PrecisionContext

CTX = PrecisionContext(digits=40)


# ----------------------------------------------------------------------
# printed low-order values

def test_u_low_order_printed_values():
    # the classical table: U_0 = 1, U_1 = x/8 - 5x^3/24,
    # U_2 = 9x^2/128 - 77x^4/192 + 385x^6/1152
    assert coeffs.u_poly(0).terms == {0: F(1)}
    assert coeffs.u_poly(1).terms == {1: F(1, 8), 3: F(-5, 24)}
    assert coeffs.u_poly(2).terms == {
        2: F(9, 128), 4: F(-77, 192), 6: F(385, 1152)}
    assert coeffs.u_poly(3).terms == {
        3: F(75, 1024), 5: F(-4563, 5120),
        7: F(17017, 9216), 9: F(-85085, 82944)}


def test_d_low_order_printed_values():
    # stored as rat * 6^(j/3), j = (2n+1) mod 3
    want = [
        (F(1), 1),          # d_0  = 6^(1/3)
        (F(-3, 10), 0),     # d_2  = -3/10
        (F(3, 140), 2),     # d_4  = (3/140) 6^(2/3)
        (F(-1, 100), 1),    # d_6  = -(1/100) 6^(1/3)
        (F(10449, 2156000), 0),
        (F(-3639, 9100000), 2),
    ]
    for n, (rat, j) in enumerate(want):
        d = coeffs.d_coeff(n)
        assert (d.rat, d.j) == (rat, j), "d_%d" % (2 * n)


def test_d_sign_alternates():
    for n in range(14):
        assert (-1) ** n * coeffs.d_coeff(n).rat > 0


# ----------------------------------------------------------------------
# independent routes agree exactly

@pytest.mark.parametrize("n", range(13))
def test_u_routes_agree_exactly(n):
    ref = coeffs.u_poly(n).terms
    assert coeffs.u_from_meijer(n).terms == ref
    assert coeffs.u_bell_exact(n).terms == ref
    assert coeffs.u_potential_exact(n).terms == ref


@pytest.mark.parametrize("n", range(13))
def test_d_routes_agree_exactly(n):
    ref = coeffs.d_coeff(n)
    for other in (coeffs.d_bell_exact(n), coeffs.d_bernoulli_exact(n)):
        assert (other.rat, other.j) == (ref.rat, ref.j)


def test_three_numeric_routes_match():
    with mp.workdps(60):
        x = mp.mpc("0.31", "1.7")
        a = coeffs.u_eval(7, x, CTX)
        b = coeffs.u_via_bell(7, x, CTX)
        c = coeffs.u_via_potential(7, x, CTX)
        assert abs(a - b) <= abs(a) * mp.mpf(10) ** -38
        assert abs(a - c) <= abs(a) * mp.mpf(10) ** -38


# ----------------------------------------------------------------------
# structure of U_n

@given(st.integers(min_value=0, max_value=16))
@settings(max_examples=17, deadline=None)
def test_u_poly_shape(n):
    terms = coeffs.u_poly(n).terms
    exps = sorted(terms)
    assert exps[0] == n and exps[-1] == 3 * n
    assert all(e % 2 == n % 2 for e in exps)
    assert all(c != 0 for c in terms.values())
    # strict sign alternation along the exponent ladder
    for lo, hi in zip(exps, exps[1:]):
        assert terms[lo] * terms[hi] < 0


@given(st.integers(min_value=0, max_value=8),
       st.floats(min_value=0.15, max_value=1.35))
@settings(max_examples=40, deadline=None)
def test_u_abs_eval_is_modulus_on_the_ray(n, beta):
    with mp.workdps(50):
        z = 1j * mp.cot(mp.mpf(beta))
        direct = abs(coeffs.u_eval(n, z, CTX))
        assert abs(coeffs.u_abs_eval(n, beta, CTX) - direct) <= direct * mp.mpf(10) ** -35


def test_u_on_the_imaginary_ray_is_i_pow_n_times_real():
    with mp.workdps(50):
        for n in range(9):
            v = coeffs.u_eval(n, 1j * mp.cot(mp.mpf("0.8")), CTX) / 1j ** n
            assert abs(v.imag) <= abs(v) * mp.mpf(10) ** -35


# ----------------------------------------------------------------------
# the Table-1 scale anchor

def test_u50_modulus_anchor():
    # |U_50(i cot(pi/6))|, all 23 digits of the printed scale factor
    with mp.workdps(40):
        got = coeffs.u_abs_eval(50, mp.pi / 6, CTX)
        want = mp.mpf("2.5922998993906050847874e110")
        assert abs(got - want) <= want * mp.mpf(10) ** -22


# ----------------------------------------------------------------------
# Comtet reduction and generalized Bernoulli values

def test_comtet_reduces_to_integer_table():
    tabs = coeffs._tables("b", 4)
    assert coeffs.comtet_potential(F(3), 2, "b") == tabs.potential[(3, 2)]


def test_comtet_half_values():
    # (1 + t^2/20 + t^4/840 + ...)^(1/2): t^2 gives 1/40,
    # t^4 gives 1/1680 - 1/3200 = 19/67200
    assert coeffs.comtet_potential(F(1, 2), 2, "b") == F(1, 40)
    assert coeffs.comtet_potential(F(1, 2), 4, "b") == F(19, 67200)


def test_comtet_integer_pole():
    with pytest.raises(PoleError):
        coeffs.comtet_potential(F(1), 2, "b")


def test_generalized_bernoulli_small():
    assert coeffs.generalized_bernoulli(0, 7, F(9)) == 1
    assert coeffs.generalized_bernoulli(1, 5, F(2)) == F(-1, 2)
    assert coeffs.generalized_bernoulli(6, 1, F(0)) == F(1, 42)


@given(st.integers(min_value=1, max_value=6),
       st.fractions(min_value=-3, max_value=3, max_denominator=6))
@settings(max_examples=30, deadline=None)
def test_generalized_bernoulli_quadratic(kappa, lam):
    want = lam * lam - kappa * lam + F(kappa * kappa, 4) - F(kappa, 12)
    assert coeffs.generalized_bernoulli(2, kappa, lam) == want
