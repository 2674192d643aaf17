"""Exit criteria: one test per criterion, each at its stated tolerance and time budget.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import time
from contextlib import contextmanager

import pytest

from domino2adic import cyclotomic as cy
from domino2adic import grid_count as gc
from domino2adic import quasipoly as qp
from domino2adic import series as se
from domino2adic.padics import val2, val2_int


@contextmanager
def criterion(results, key, budget_s):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        results[key] = (False, f"{type(exc).__name__}: {exc}"[:160])
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < budget_s
    results[key] = (ok, f"{elapsed:.2f}s (budget {budget_s:.0f}s)")
    assert ok, f"criterion {key} took {elapsed:.1f}s, budget {budget_s}s"


def test_01_three_way_oracle(acceptance):
    with criterion(acceptance, "1 three-way oracle", 60):
        for n in range(1, 9):
            exact = cy.f_exact(n)
            assert gc.count_tilings((2 * n, 2 * n)) == (exact**2) << n
            assert se.f_mod(n, 12).residue == exact % (1 << 12)


def test_02_valuation(acceptance):
    with criterion(acceptance, "2 v2(count) = n", 300):
        for n in range(1, 11):
            assert val2_int(gc.count_tilings((2 * n, 2 * n))) == n


def test_03_pair_product_table(acceptance):
    with criterion(acceptance, "3 pair-product sign", 60):
        for n in range(1, 13):
            assert cy.pair_product_sign(n) == (-1 if n % 4 == 2 else 1)
        for n in range(1, 11):
            assert (cy.f_exact(n) - cy.pair_product_sign(n)) % 4 == 0


def test_04_identity_suite(acceptance):
    with criterion(acceptance, "4 identity suite", 30):
        for n in range(1, 13):
            expected = (-1) ** ((n + 1) // 2)
            assert cy.unit_product(n) == 1
            assert cy.cos_product_sign(n) == expected
            assert cy.full_product_check(n) == (n, expected)


def test_05_newton_valuation(acceptance):
    with criterion(acceptance, "5 v2(E_k) >= -k", 60):
        for n in range(0, 13):
            e = se.newton_e(se.s_values(n, 12, se.u_values(n, 24)))
            assert all(val2(ek) >= -k for k, ek in enumerate(e))


def test_06_quasi_polynomial_suite(acceptance):
    with criterion(acceptance, "6 quasi-polynomial fits", 120):
        for k in range(1, 9):
            fitted = qp.fit_u_full(k)
            assert len(fitted.held_out) == 5
            assert all(
                qp.evaluate(fitted.quasi, n) == se.u_values(n, k)[k - 1] for n in fitted.held_out
            )
            assert qp.check_reflection(fitted.quasi)


def test_07_functional_equation(acceptance):
    with criterion(acceptance, "7 functional equation", 300):
        for n in range(0, 31):
            rep = qp.functional_check(n, 10)
            assert rep.sign == (1 if n % 4 in (0, 3) else -1)
            assert rep.passed, f"n={n}: {rep}"


def test_08_continuity_scan(acceptance):
    with criterion(acceptance, "8 continuity scan", 60):
        assert qp.continuity_scan(50, 1).ell == 0
        r2 = qp.continuity_scan(50, 2)
        assert r2.ell == 2 and not r2.vacuous
        a, b = r2.witness
        assert (a - b) % 2 == 0 and r2.residues[a] != r2.residues[b]


@pytest.mark.slow
def test_09_scale(acceptance):
    n, bits = 1000003, 10
    with criterion(acceptance, "9 scale n=1000003", 60 + 600):
        t0 = time.perf_counter()
        quasi = qp.f_mod_any(n, bits, path="quasi")
        quasi_s = time.perf_counter() - t0
        assert quasi_s < 60, f"quasi path took {quasi_s:.1f}s"
        t0 = time.perf_counter()
        direct = qp.f_mod_any(n, bits, path="series")
        assert time.perf_counter() - t0 < 600
        assert quasi == direct
