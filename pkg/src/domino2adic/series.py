"""Power sums of 1/(zeta + 1/zeta) and the 2-adic evaluation of f.

The chain is::

    P_n(x) = C_{2n+1}(x) - 2          (roots 2cos(2 pi j/(2n+1)))
    U_k    = -[x^(k-1)] P_n'/P_n
    S_k    = (U_k^2 - 2 U_{2k} + 4^-k) / 4
    E_k    from S_k by Newton's identities
    f(n)^2 = sign(n) * sum_k 4^k E_k

and everything stays exact until the final reduction mod 2^K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

from .cyclotomic import IntPolynomial
from .padics import TwoAdicTrunc, hensel_sqrt, reduce_mod2k, val2


class SeriesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RationalSeries:
    """Truncated power series sum c_i x^i, known for i < order."""

    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]


@dataclass(frozen=True)
class PowerSumTable:
    n: int
    U: tuple  # U[k-1] = U_k, k = 1..2*k_max
    S: tuple  # S[k-1] = S_k, k = 1..k_max
    E: tuple  # E[k] = E_k, k = 0..k_max

    @property
    def k_max(self) -> int:
        return len(self.S)


def chebyshev_c(m: int) -> IntPolynomial:
    """C_m with C_m(2cos t) = 2cos(m t): C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}."""
    prev, cur = IntPolynomial([2]), IntPolynomial([0, 1])
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, cur.shift(1) - prev
    return cur


def p_poly(n: int) -> IntPolynomial:
    """P_n(x) = prod_zeta (x - zeta - 1/zeta) = C_{2n+1}(x) - 2."""
    if n < 0:
        raise ValueError("p_poly needs n >= 0")
    return chebyshev_c(2 * n + 1) - IntPolynomial([2])


def p_poly_low(n: int, order: int) -> list[int]:
    """Coefficients of x^0 .. x^(order-1) of P_n without building the whole polynomial.

    For m = 2n+1 the coefficient of x^(m-2j) in C_m is
    (-1)^j (binom(m-j, j) + binom(m-j-1, j-1)).
    """
    if n < 0:
        raise ValueError("p_poly_low needs n >= 0")
    m = 2 * n + 1
    out = [0] * order
    for d in range(1, min(order, m + 1), 2):
        j = (m - d) // 2
        c = comb(m - j, j) + (comb(m - j - 1, j - 1) if j >= 1 else 0)
        out[d] = -c if j & 1 else c
    if order:
        out[0] = -2
    return out


def log_derivative_series(P: IntPolynomial | Sequence[int], order: int) -> RationalSeries:
    """Taylor coefficients of P'/P at 0 up to x^(order-1)."""
    coeffs = list(P.coefficients if isinstance(P, IntPolynomial) else P)
    if not coeffs or coeffs[0] == 0:
        raise SeriesError("log derivative needs P(0) != 0")

    def c(i: int) -> int:
        return coeffs[i] if i < len(coeffs) else 0

    p0 = Fraction(coeffs[0])
    out: list[Fraction] = []
    for k in range(order):
        acc = Fraction((k + 1) * c(k + 1))
        for i in range(1, k + 1):
            ci = c(i)
            if ci:
                acc -= ci * out[k - i]
        out.append(acc / p0)
    return RationalSeries(tuple(out))


def u_values(n: int, k_max: int) -> list[Fraction]:
    """[U_1(n), ..., U_kmax(n)] with U_k(n) = sum_zeta (zeta + 1/zeta)^-k, n >= 0."""
    series = log_derivative_series(p_poly_low(n, k_max + 1), k_max)
    return [-c for c in series.coefficients]


def s_values(n: int, k_max: int, u: Sequence[Fraction]) -> list[Fraction]:
    """S_k(n) = sum_{i,j=1..n} alpha_ij^-k for k = 1..k_max, from the U_k."""
    if len(u) < 2 * k_max:
        raise SeriesError(f"need U_1..U_{2 * k_max}, got {len(u)} values")
    return [
        (u[k - 1] ** 2 - 2 * u[2 * k - 1] + Fraction(1, 4**k)) / 4
        for k in range(1, k_max + 1)
    ]


def newton_e(s: Sequence[Fraction]) -> list[Fraction]:
    """Elementary symmetric E_0..E_k from power sums S_1..S_k."""
    e = [Fraction(1)]
    for k in range(1, len(s) + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = s[i - 1] * e[k - i]
            acc += term if i & 1 else -term
        e.append(acc / k)
    return e


def sign_factor(n: int) -> int:
    """(-1)^floor((n+1)/2), extended to all integers through n mod 4."""
    return 1 if n % 4 in (0, 3) else -1


def f_squared_mod(n: int, k: int, e: Sequence[Fraction]) -> TwoAdicTrunc:
    """f(n)^2 mod 2^k from E_0..E_{k-1}; terms 4^j E_j with j >= k vanish mod 2^k."""
    if len(e) < k:
        raise SeriesError(f"need E_0..E_{k - 1}, got {len(e)} values")
    total = TwoAdicTrunc(0, k)
    for j in range(k):
        total = total + reduce_mod2k(Fraction(4) ** j * e[j], k)
    return total * sign_factor(n)


def sign_mod4(n: int) -> int:
    """f(n) mod 4, which depends only on n mod 4."""
    return 3 if n % 4 == 2 else 1


def order_for_bits(k: int) -> int:
    """Number of U values to compute for f mod 2^k, with a two-term margin.

    f mod 2^k needs f^2 mod 2^(k+1), hence E_0..E_k, S_1..S_k and U_1..U_2k.
    """
    return 2 * k + 2


UProvider = Callable[[int, int], Sequence[Fraction]]


def power_sum_table(n: int, k_max: int, u_provider: Optional[UProvider] = None) -> PowerSumTable:
    provider = u_provider or u_values
    u = list(provider(n, 2 * k_max))
    s = s_values(n, k_max, u)
    e = newton_e(s)
    for k, ek in enumerate(e):
        if val2(ek) < -k:
            raise SeriesError(f"v2(E_{k}({n})) = {val2(ek)} < -{k}")
    return PowerSumTable(n, tuple(u), tuple(s), tuple(e))


def f_mod(n: int, k: int, u_provider: Optional[UProvider] = None) -> TwoAdicTrunc:
    """f(n) mod 2^k.

    ``u_provider(n, count)`` returns U_1..U_count; the default is the direct
    series, which needs n >= 0.  Negative n goes through fitted
    quasi-polynomials (see :func:`domino2adic.quasipoly.f_mod_any`).
    """
    if k < 2:
        raise SeriesError("f_mod needs at least 2 bits (the sign is fixed mod 4)")
    if u_provider is None and n < 0:
        raise SeriesError("the direct series path needs n >= 0")
    table = power_sum_table(n, order_for_bits(k) // 2, u_provider)
    square = f_squared_mod(n, k + 1, table.E)
    return hensel_sqrt(square, sign_mod4(n))
