import math
from fractions import Fraction

import numpy as np
import pytest

from domino2adic import cyclotomic as cy
from domino2adic import grid_count as gc
from domino2adic import series as se
from domino2adic.cyclotomic import IntPolynomial
from domino2adic.padics import TwoAdicTrunc, val2


def test_p_poly_examples():
    assert se.p_poly(0) == IntPolynomial([-2, 1])
    assert se.p_poly(1) == IntPolynomial([-2, -3, 0, 1])
    for n in range(12):
        assert se.p_poly(n)[0] == -2
        assert se.p_poly(n).degree == 2 * n + 1


@pytest.mark.parametrize("n", range(0, 9))
def test_p_poly_roots(n):
    m = 2 * n + 1
    p = se.p_poly(n)
    roots = sorted(2 * math.cos(2 * math.pi * j / m) for j in range(m))
    for r in roots:
        assert abs(p(r)) < 1e-6 * (1 + max(abs(c) for c in p.coefficients))
    found = sorted(np.roots(list(reversed(p.coefficients))).real)
    assert np.allclose(found, roots, atol=1e-4)


def test_chebyshev_identity():
    for m in range(0, 15):
        c = se.chebyshev_c(m)
        for t in (0.1, 0.7, 2.3):
            assert math.isclose(c(2 * math.cos(t)), 2 * math.cos(m * t), abs_tol=1e-9)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 13, 40])
def test_p_poly_low_matches_recurrence(n):
    full = se.p_poly(n)
    order = 2 * n + 6
    assert se.p_poly_low(n, order) == [full[i] for i in range(order)]


def test_log_derivative_examples():
    s = se.log_derivative_series(IntPolynomial([-2, 1]), 3)
    assert s.coefficients == (Fraction(-1, 2), Fraction(-1, 4), Fraction(-1, 8))
    s = se.log_derivative_series(IntPolynomial([-2, -3, 0, 1]), 1)
    assert s.coefficients == (Fraction(3, 2),)
    with pytest.raises(se.SeriesError):
        se.log_derivative_series(IntPolynomial([0, 1]), 2)


def test_log_derivative_against_float_roots():
    p = IntPolynomial([6, -5, -2, 1])  # roots 1, -2, 3
    roots = np.roots(list(reversed(p.coefficients)))
    s = se.log_derivative_series(p, 8)
    for k in range(8):
        power_sum = sum(r ** -(k + 1) for r in roots).real
        assert math.isclose(float(s[k]), -power_sum, rel_tol=1e-9, abs_tol=1e-12)


def test_u_values_examples():
    assert se.u_values(0, 2) == [Fraction(1, 2), Fraction(1, 4)]
    assert se.u_values(1, 2) == [Fraction(-3, 2), Fraction(9, 4)]
    assert se.u_values(2, 1) == [Fraction(5, 2)]


@pytest.mark.parametrize("n", range(0, 11))
def test_u_values_float_oracle(n):
    m = 2 * n + 1
    u = se.u_values(n, 8)
    for k in range(1, 9):
        direct = sum((2 * math.cos(2 * math.pi * j / m)) ** -k for j in range(m))
        assert math.isclose(float(u[k - 1]), direct, rel_tol=1e-9, abs_tol=1e-9)


def test_s_values_examples():
    assert se.s_values(1, 1, se.u_values(1, 2)) == [Fraction(-1, 2)]
    assert se.s_values(0, 1, se.u_values(0, 2)) == [0]
    assert se.s_values(2, 1, se.u_values(2, 2)) == [cy.inverse_power_sum(2, 1)]
    with pytest.raises(se.SeriesError):
        se.s_values(1, 3, se.u_values(1, 4))


@pytest.mark.parametrize("n", range(0, 6))
def test_s_values_against_cyclotomic_sum(n):
    s = se.s_values(n, 4, se.u_values(n, 8))
    assert s == [cy.inverse_power_sum(n, k) for k in range(1, 5)]


def test_newton_examples():
    s1, s2 = Fraction(3, 7), Fraction(-5, 11)
    e = se.newton_e([s1, s2])
    assert e[0] == 1 and e[1] == s1
    assert e[2] == (s1**2 - s2) / 2
    table = se.power_sum_table(1, 6)
    assert table.E == (1, Fraction(-1, 2), 0, 0, 0, 0, 0)


def test_newton_against_elementary_symmetric():
    xs = [Fraction(1, 3), Fraction(-2), Fraction(5, 4), Fraction(7)]
    s = [sum(x**k for x in xs) for k in range(1, 6)]
    e = se.newton_e(s)
    # coefficients of prod (1 + x t)
    poly = [Fraction(1)]
    for x in xs:
        poly = [a + (x * poly[i - 1] if i else 0) for i, a in enumerate(poly + [Fraction(0)])]
    assert e == poly + [Fraction(0)]


def test_sign_factor():
    assert se.sign_factor(0) == 1
    assert se.sign_factor(2) == -1
    assert se.sign_factor(-1) == 1
    for n in range(-40, 40):
        assert se.sign_factor(n) == se.sign_factor(-1 - n)
        if n >= 0:
            assert se.sign_factor(n) == (-1) ** ((n + 1) // 2)


def test_f_squared_examples():
    assert se.f_squared_mod(1, 10, se.power_sum_table(1, 10).E) == TwoAdicTrunc(1, 10)
    assert se.f_squared_mod(2, 5, se.power_sum_table(2, 5).E) == TwoAdicTrunc(9, 5)
    assert se.f_squared_mod(0, 8, se.power_sum_table(0, 8).E) == TwoAdicTrunc(1, 8)


def test_f_mod_examples():
    assert se.f_mod(2, 4) == TwoAdicTrunc(3, 4)
    assert se.f_mod(3, 4) == TwoAdicTrunc(13, 4)
    assert se.f_mod(0, 6) == TwoAdicTrunc(1, 6)
    with pytest.raises(se.SeriesError):
        se.f_mod(-2, 4)
    with pytest.raises(se.SeriesError):
        se.f_mod(3, 1)


def test_valuation_bound():
    for n in range(0, 13):
        table = se.power_sum_table(n, 12)
        for k, ek in enumerate(table.E):
            assert val2(ek) >= -k


def test_truncation_soundness():
    for n in range(0, 10):
        for k in (4, 9):
            e = se.power_sum_table(n, k + 5).E
            assert se.f_squared_mod(n, k, e) == se.f_squared_mod(n, k, e[:k])


def test_three_oracles():
    for n in range(1, 9):
        exact = cy.f_exact(n)
        assert exact == gc.factor_square_count(n).odd_root
        for k in range(2, 13):
            assert se.f_mod(n, k).residue == exact % (1 << k)


def test_f_squared_matches_exact_to_high_precision():
    for n in range(1, 12):
        k = 60
        e = se.power_sum_table(n, k).E
        assert se.f_squared_mod(n, k, e).residue == cy.f_exact(n) ** 2 % (1 << k)
