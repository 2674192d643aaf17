from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from domino2adic import quasipoly as qp
from domino2adic import series as se
from domino2adic.padics import TwoAdicTrunc
from domino2adic.quasipoly import QuasiPolynomial

half = Fraction(1, 2)
fracs = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))


def test_fit_examples():
    samples = [(n, Fraction((2 * n + 1) * (-1) ** n, 2)) for n in range(4)]
    assert samples[1][1] == se.u_values(1, 1)[0]
    assert samples[2][1] == se.u_values(2, 1)[0]
    assert qp.fit(samples, 1) == QuasiPolynomial((), (half, 1))
    assert qp.fit([(n, 7) for n in range(4)], 1) == QuasiPolynomial((7,), ())
    assert qp.fit([(n, (-1) ** n) for n in range(2)], 0) == QuasiPolynomial((), (1,))


def test_fit_errors():
    with pytest.raises(qp.UnderdeterminedError):
        qp.fit([(0, 1), (1, 2), (2, 3)], 1)
    with pytest.raises(qp.InconsistentSamplesError):
        qp.fit([(n, n * n) for n in range(6)], 1)
    with pytest.raises(qp.InconsistentSamplesError):
        qp.fit([(0, 1), (0, 2), (1, 1), (2, 1), (3, 1)], 1)


@given(st.lists(fracs, max_size=5), st.lists(fracs, max_size=5))
def test_fit_recovers_random(a, b):
    q = QuasiPolynomial(tuple(a), tuple(b))
    d = max(len(a), len(b), 1) - 1
    samples = [(n, qp.evaluate(q, n)) for n in range(-3, 2 * d + 2)]
    assert qp.fit(samples, d) == q


def test_eval_examples():
    q = QuasiPolynomial((), (half, 1))
    assert qp.evaluate(q, -4) == Fraction(-7, 2)
    assert qp.evaluate(q, -4) == qp.evaluate(q, 3)
    assert qp.evaluate(QuasiPolynomial((7,), ()), 10**9) == 7


def test_check_reflection_examples():
    assert qp.check_reflection(QuasiPolynomial((), (half, 1)))
    assert not qp.check_reflection(QuasiPolynomial((0, 1), ()))
    assert qp.check_reflection(QuasiPolynomial((0, 1, 1), ()))


@given(st.lists(fracs, max_size=4), st.lists(fracs, max_size=4))
def test_check_reflection_agrees_pointwise(a, b):
    q = QuasiPolynomial(tuple(a), tuple(b))
    pointwise = all(qp.evaluate(q, -1 - n) == qp.evaluate(q, n) for n in range(-6, 7))
    assert qp.check_reflection(q) == pointwise


def test_fit_u_one():
    assert qp.fit_u(1) == QuasiPolynomial((), (half, 1))
    assert qp.evaluate(qp.fit_u(1), 5) == Fraction(-11, 2) == se.u_values(5, 1)[0]


@pytest.mark.parametrize("k", range(1, 9))
def test_fit_u_properties(k):
    fitted = qp.fit_u_full(k)
    q = fitted.quasi
    assert qp.check_reflection(q)
    n0 = fitted.window + 1
    for n in range(n0, n0 + 5):
        assert qp.evaluate(q, n) == se.u_values(n, k)[k - 1]
    for n in range(0, 21):
        assert qp.evaluate(q, -1 - n) == se.u_values(n, k)[k - 1]
    s = qp.fit_s(k)
    assert qp.check_reflection(s)
    for n in range(0, 8):
        assert qp.evaluate(s, n) == se.s_values(n, k, se.u_values(n, 2 * k))[k - 1]


def test_degree_runaway(monkeypatch):
    qp.fit_u_full.cache_clear()
    monkeypatch.setattr(qp, "_u_sample", lambda n, k: Fraction(2) ** n)
    with pytest.raises(qp.DegreeRunawayError):
        qp.fit_u_full(1)
    qp.fit_u_full.cache_clear()


def test_f_mod_negative():
    # f(-1) = f(0), f(-2) = -f(1), f(-3) = -f(2), f(-4) = f(3)
    assert qp.f_mod_any(-1, 6) == TwoAdicTrunc(1, 6)
    assert qp.f_mod_any(-2, 6) == TwoAdicTrunc(63, 6)
    assert qp.f_mod_any(-3, 6) == TwoAdicTrunc(61, 6)
    assert qp.f_mod_any(-4, 6) == TwoAdicTrunc(29, 6)
    with pytest.raises(ValueError):
        qp.f_mod_any(3, 6, path="nope")


def test_quasi_path_matches_series_on_nonnegative():
    for n in range(0, 40):
        assert qp.f_mod_any(n, 8, path="quasi") == qp.f_mod_any(n, 8, path="series")


def test_functional_examples():
    r = qp.functional_check(3, 8)
    assert r.sign == 1 and r.passed
    r = qp.functional_check(1, 8)
    assert r.sign == -1 and r.passed
    assert r.lhs == TwoAdicTrunc(255, 8) and r.rhs == TwoAdicTrunc(1, 8)
    r = qp.functional_check(0, 4)
    assert r.passed and r.lhs == r.rhs == TwoAdicTrunc(1, 4)


def test_continuity_examples():
    assert qp.continuity_scan(50, 1).ell == 0
    r = qp.continuity_scan(50, 2)
    assert r.ell == 2
    a, b = r.witness
    assert (a - b) % 2 == 0 and r.residues[a] != r.residues[b]
    r6 = qp.continuity_scan(50, 6)
    assert r6.ell >= 5


def test_continuity_monotone():
    ells = [qp.continuity_scan(50, k).ell for k in range(1, 8)]
    assert ells == sorted(ells)


def test_continuity_from_residues():
    r = qp.continuity_scan(7, 3, residues=[0, 1, 0, 1, 0, 1, 0, 1])
    assert r.ell == 1 and r.witness == (0, 1) and not r.vacuous
    r = qp.continuity_scan(3, 3, residues=[0, 1, 2, 3])
    assert r.ell == 2 and r.vacuous
