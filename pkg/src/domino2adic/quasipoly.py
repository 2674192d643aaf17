"""Quasi-polynomials n -> A(n) + (-1)^n B(n) over Q.

Fitting splits the samples by parity: on even n the function is the
polynomial A + B, on odd n it is A - B, so each half is an ordinary
interpolation problem.  Every sample is then re-checked against the fit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .padics import TwoAdicTrunc
from .series import f_mod, u_values


class FitError(ArithmeticError):
    pass


class InconsistentSamplesError(FitError):
    pass


class UnderdeterminedError(FitError):
    pass


class DegreeRunawayError(FitError):
    pass


def _trim(c: Iterable) -> tuple:
    out = [Fraction(x) for x in c]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_add(a: Sequence, b: Sequence) -> tuple:
    size = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
    )


def poly_scale(a: Sequence, c) -> tuple:
    return _trim(x * c for x in a)


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_compose_reflect(a: Sequence) -> tuple:
    """Coefficients of a(-1 - x)."""
    out: tuple = ()
    power: tuple = (Fraction(1),)
    lin = (Fraction(-1), Fraction(-1))
    for c in a:
        out = poly_add(out, poly_scale(power, c))
        power = poly_mul(power, lin)
    return out


def interpolate(points: Sequence[tuple[int, Fraction]]) -> tuple:
    """Coefficients of the unique polynomial of degree < len(points) through them."""
    xs = [Fraction(x) for x, _ in points]
    # Newton divided differences, then expand to the monomial basis
    dd = [Fraction(y) for _, y in points]
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs: tuple = ()
    for i in range(len(xs) - 1, -1, -1):
        coeffs = poly_add(poly_mul(coeffs, (-xs[i], Fraction(1))), (dd[i],))
    return coeffs


@dataclass(frozen=True)
class QuasiPolynomial:
    """A(n) + (-1)^n B(n) with exact rational coefficient tuples (lowest first)."""

    even_part: tuple = ()
    sign_part: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "even_part", _trim(self.even_part))
        object.__setattr__(self, "sign_part", _trim(self.sign_part))

    @property
    def degree(self) -> int:
        return max(len(self.even_part), len(self.sign_part)) - 1

    def __call__(self, n: int) -> Fraction:
        return evaluate(self, n)

    def to_json(self) -> dict:
        return {
            "A": [str(c) for c in self.even_part],
            "B": [str(c) for c in self.sign_part],
        }


def fit(samples: Sequence[tuple[int, Fraction]], degree_bound: int) -> QuasiPolynomial:
    """Exact quasi-polynomial of degree <= degree_bound through every sample."""
    seen: dict[int, Fraction] = {}
    for n, v in samples:
        v = Fraction(v)
        if n in seen and seen[n] != v:
            raise InconsistentSamplesError(f"two different values at n={n}")
        seen[n] = v
    even = sorted((n, v) for n, v in seen.items() if n % 2 == 0)
    odd = sorted((n, v) for n, v in seen.items() if n % 2 == 1)
    need = degree_bound + 1
    if len(even) < need or len(odd) < need:
        raise UnderdeterminedError(
            f"degree {degree_bound} needs {need} samples of each parity, "
            f"got {len(even)} even and {len(odd)} odd"
        )
    plus = interpolate(even[:need])  # A + B
    minus = interpolate(odd[:need])  # A - B
    q = QuasiPolynomial(
        poly_scale(poly_add(plus, minus), Fraction(1, 2)),
        poly_scale(poly_add(plus, poly_scale(minus, -1)), Fraction(1, 2)),
    )
    for n, v in seen.items():
        if evaluate(q, n) != v:
            raise InconsistentSamplesError(
                f"no quasi-polynomial of degree <= {degree_bound} fits the samples (n={n})"
            )
    return q


def evaluate(q: QuasiPolynomial, n: int) -> Fraction:
    a = poly_eval(q.even_part, n)
    b = poly_eval(q.sign_part, n)
    return a + b if n % 2 == 0 else a - b


def check_reflection(q: QuasiPolynomial) -> bool:
    """Whether q(-1-n) = q(n) identically.

    Since (-1)^(-1-n) = -(-1)^n this means A(-1-n) = A(n) and -B(-1-n) = B(n).
    """
    a_ref = poly_compose_reflect(q.even_part)
    b_ref = poly_scale(poly_compose_reflect(q.sign_part), -1)
    return a_ref == q.even_part and b_ref == q.sign_part


HELD_OUT = 5


@dataclass(frozen=True)
class UFit:
    k: int
    quasi: QuasiPolynomial
    window: int  # samples at n = 0..window
    held_out: tuple = field(default=())  # n values checked outside the window


@lru_cache(maxsize=None)
def _u_row(n: int, k_max: int) -> tuple:
    return tuple(u_values(n, k_max))


def _u_sample(n: int, k: int) -> Fraction:
    # rows are cached in blocks of 8 so that fitting many k reuses the series work
    block = -(-k // 8) * 8
    return _u_row(n, block)[k - 1]


@lru_cache(maxsize=None)
def fit_u_full(k: int) -> UFit:
    if k < 1:
        raise ValueError("k must be positive")
    for degree in range(k, 2 * k + 5):
        window = 2 * degree + 1
        samples = [(n, _u_sample(n, k)) for n in range(window + 1)]
        try:
            q = fit(samples, degree)
        except InconsistentSamplesError:
            continue
        held = tuple(range(window + 1, window + 1 + HELD_OUT))
        if all(evaluate(q, n) == _u_sample(n, k) for n in held):
            return UFit(k, q, window, held)
    raise DegreeRunawayError(f"no quasi-polynomial fit for U_{k} up to degree {2 * k + 4}")


def fit_u(k: int) -> QuasiPolynomial:
    """Quasi-polynomial for n -> U_k(n), certified on held-out points."""
    return fit_u_full(k).quasi


def fit_s(k: int) -> QuasiPolynomial:
    """Quasi-polynomial for S_k, assembled from the fitted U_k, U_2k."""
    uk, u2k = fit_u(k), fit_u(2 * k)
    # U_k^2 is a polynomial in n alone, since ((-1)^n)^2 = 1
    a2 = poly_add(poly_mul(uk.even_part, uk.even_part), poly_mul(uk.sign_part, uk.sign_part))
    b2 = poly_scale(poly_mul(uk.even_part, uk.sign_part), 2)
    a = poly_add(poly_add(a2, poly_scale(u2k.even_part, -2)), (Fraction(1, 4**k),))
    b = poly_add(b2, poly_scale(u2k.sign_part, -2))
    return QuasiPolynomial(poly_scale(a, Fraction(1, 4)), poly_scale(b, Fraction(1, 4)))


def u_values_quasi(n: int, k_max: int) -> list[Fraction]:
    """U_1(n)..U_kmax(n) from the fitted quasi-polynomials; valid for every integer n."""
    return [evaluate(fit_u(k), n) for k in range(1, k_max + 1)]


def f_mod_any(n: int, k: int, path: str = "auto") -> TwoAdicTrunc:
    """f(n) mod 2^k for any integer n.

    ``path`` is ``"series"`` (direct, n >= 0), ``"quasi"`` (fitted
    quasi-polynomials) or ``"auto"`` (series for n >= 0, quasi otherwise).
    """
    if path == "auto":
        path = "series" if n >= 0 else "quasi"
    if path == "series":
        return f_mod(n, k)
    if path == "quasi":
        return f_mod(n, k, u_provider=u_values_quasi)
    raise ValueError(f"unknown path {path!r}")


def theorem_sign(n: int) -> int:
    """+1 if n = 0, 3 (mod 4), else -1."""
    return 1 if n % 4 in (0, 3) else -1


@dataclass(frozen=True)
class FunctionalReport:
    n: int
    bits: int
    lhs: TwoAdicTrunc  # f(-1-n)
    rhs: TwoAdicTrunc  # f(n)
    sign: int
    passed: bool


def functional_check(n: int, k: int) -> FunctionalReport:
    """Compare f(-1-n) (quasi-polynomial path) with +-f(n) (direct series) mod 2^k."""
    if n < 0:
        raise ValueError("functional_check takes n >= 0")
    lhs = f_mod_any(-1 - n, k, path="quasi")
    rhs = f_mod_any(n, k, path="series")
    sign = theorem_sign(n)
    return FunctionalReport(n, k, lhs, rhs, sign, lhs == rhs * sign)


@dataclass(frozen=True)
class ContinuityReport:
    bits: int
    n_max: int
    ell: int
    witness: Optional[tuple[int, int]]  # pair agreeing mod 2^(ell-1) whose residues differ
    residues: tuple = ()

    @property
    def vacuous(self) -> bool:
        """True when 2^ell > n_max, so no pair in the window was actually compared."""
        return (1 << self.ell) > self.n_max


def continuity_scan(n_max: int, k: int, residues: Optional[Sequence[int]] = None) -> ContinuityReport:
    """Smallest ell with n = m (mod 2^ell) => f(n) = f(m) (mod 2^k) on 0..n_max.

    This is an empirical statement about the window only: ``witness`` shows
    that ell - 1 fails, nothing is claimed beyond n_max.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if residues is None:
        bits = max(k, 2)
        residues = [f_mod(n, bits).residue % (1 << k) for n in range(n_max + 1)]
    residues = tuple(residues)

    def first_violation(ell: int) -> Optional[tuple[int, int]]:
        step = 1 << ell
        for start in range(min(step, n_max + 1)):
            ref = residues[start]
            for m in range(start + step, n_max + 1, step):
                if residues[m] != ref:
                    return start, m
        return None

    witness = None
    ell = 0
    while (bad := first_violation(ell)) is not None:
        witness = bad
        ell += 1
    return ContinuityReport(k, n_max, ell, witness, residues)
