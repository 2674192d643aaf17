"""Exact arithmetic in Z[z]/Phi_m(z) for odd m = 2n + 1.

Elements are coefficient vectors of length phi(m).  Because Phi_m is the
minimal polynomial of a primitive m-th root of unity, an element is a
rational number exactly when every coefficient but the constant one
vanishes, which is how the Galois-invariant products below are read off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .padics import odd_part, val2_int

DEFAULT_MAX_N = 16


class IdentityCheckError(ArithmeticError):
    """An identity that must hold exactly came out wrong (a bug, not bad input)."""


class BudgetExceededError(RuntimeError):
    pass


def _trim(coeffs: Iterable[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial, lowest degree first, no trailing zeros."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable[int] = ()) -> None:
        object.__setattr__(self, "coefficients", _trim(coefficients))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> IntPolynomial:
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        size = max(len(self), len(other))
        return IntPolynomial(self[i] + other[i] for i in range(size))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coefficients)
        if not self.coefficients or not other.coefficients:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by x**k."""
        if not self.coefficients:
            return self
        return IntPolynomial([0] * k + list(self.coefficients))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        if not divisor.coefficients or divisor.coefficients[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coefficients)
        d = divisor.degree
        if len(rem) <= d:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (len(rem) - d)
        for top in range(len(rem) - 1, d - 1, -1):
            q = rem[top]
            if q:
                quot[top - d] = q
                for i, c in enumerate(divisor.coefficients):
                    rem[top - d + i] -= q * c
        return IntPolynomial(quot), IntPolynomial(rem[:d])

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> IntPolynomial:
    """Phi_m, by dividing z^m - 1 by Phi_d for every proper divisor d of m."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = IntPolynomial.monomial(m) - IntPolynomial([1])
    for d in range(1, m):
        if m % d == 0:
            poly, rem = poly.divmod_monic(cyclotomic_polynomial(d))
            assert not rem.coefficients, "cyclotomic division left a remainder"
    return poly


def totient(m: int) -> int:
    return sum(1 for a in range(1, m + 1) if math.gcd(a, m) == 1)


@dataclass(frozen=True)
class CycloElement:
    """Residue class in Z[z]/Phi_m(z) (coefficients may also be Fractions)."""

    modulus_order: int
    coefficients: tuple

    def __post_init__(self) -> None:
        if len(self.coefficients) != cyclotomic_polynomial(self.modulus_order).degree:
            raise ValueError("coefficient vector length must equal phi(m)")

    @classmethod
    def from_poly(cls, m: int, coeffs: Sequence) -> CycloElement:
        return cls(m, _reduce(m, coeffs))

    @classmethod
    def constant(cls, m: int, c) -> CycloElement:
        phi = cyclotomic_polynomial(m).degree
        return cls(m, (c,) + (0,) * (phi - 1))

    @classmethod
    def zeta_power(cls, m: int, e: int) -> CycloElement:
        return _zeta_power(m, e % m)

    @property
    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coefficients[1:])

    def to_rational(self):
        if not self.is_constant:
            raise IdentityCheckError(f"element is not rational: {self.coefficients}")
        return self.coefficients[0]

    def _check(self, other: CycloElement) -> None:
        if other.modulus_order != self.modulus_order:
            raise ValueError("elements live in different cyclotomic rings")

    def __add__(self, other):
        if not isinstance(other, CycloElement):
            other = CycloElement.constant(self.modulus_order, other)
        self._check(other)
        return CycloElement(
            self.modulus_order,
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
        )

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement(self.modulus_order, tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycloElement):
            return CycloElement(
                self.modulus_order, tuple(c * other for c in self.coefficients)
            )
        self._check(other)
        a, b = self.coefficients, other.coefficients
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CycloElement(self.modulus_order, _reduce(self.modulus_order, prod))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycloElement:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElement.constant(self.modulus_order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloElement):
            return (
                self.modulus_order == other.modulus_order
                and self.coefficients == other.coefficients
            )
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.coefficients[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus_order, self.coefficients))

    def conjugate(self, a: int) -> CycloElement:
        """Image under the automorphism z -> z**a (gcd(a, m) = 1)."""
        m = self.modulus_order
        if math.gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit mod {m}")
        out = [0] * m
        for i, c in enumerate(self.coefficients):
            out[i * a % m] += c
        return CycloElement.from_poly(m, out)

    def _other_conjugates(self) -> CycloElement:
        m = self.modulus_order
        return reduce(
            lambda acc, a: acc * self.conjugate(a),
            (a for a in range(2, m) if math.gcd(a, m) == 1),
            CycloElement.constant(m, 1),
        )

    def norm(self):
        """Field norm down to Q: the product of all Galois conjugates."""
        return (self * self._other_conjugates()).to_rational()

    def inverse(self) -> CycloElement:
        rest = self._other_conjugates()
        n = (self * rest).to_rational()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return rest * (Fraction(1) / n)

    def mod2(self) -> tuple:
        return tuple(int(c) & 1 for c in self.coefficients)


def _reduce(m: int, coeffs: Sequence) -> tuple:
    phi = cyclotomic_polynomial(m)
    d = phi.degree
    rem = list(coeffs)
    if len(rem) < d:
        return tuple(rem) + (0,) * (d - len(rem))
    pc = phi.coefficients
    for top in range(len(rem) - 1, d - 1, -1):
        q = rem[top]
        if q:
            base = top - d
            for i in range(d):
                if pc[i]:
                    rem[base + i] -= q * pc[i]
            rem[top] = 0
    return tuple(rem[:d])


@lru_cache(maxsize=None)
def _zeta_power(m: int, e: int) -> CycloElement:
    return CycloElement.from_poly(m, [0] * e + [1])


def _order(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 2 * n + 1


def _check_budget(n: int, max_n: int) -> None:
    if n > max_n:
        raise BudgetExceededError(
            f"n={n} exceeds the cyclotomic product budget (max n={max_n})"
        )


def cos_term(n: int, t: int) -> CycloElement:
    """zeta^t + zeta^-t for zeta a primitive (2n+1)-st root of unity."""
    m = _order(n)
    return CycloElement.zeta_power(m, t) + CycloElement.zeta_power(m, -t)


def alpha(n: int, i: int, j: int) -> CycloElement:
    return cos_term(n, i) + cos_term(n, j)


def _product(factors: Iterable[CycloElement], m: int) -> CycloElement:
    acc = CycloElement.constant(m, 1)
    for x in factors:
        acc = acc * x
    return acc


def f_exact(n: int, *, max_n: int = DEFAULT_MAX_N) -> int:
    """Odd square-root factor of the 2n x 2n tiling count, prod_{i<j} (4 + alpha_ij)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return 1
    _check_budget(n, max_n)
    m = _order(n)
    value = _product(
        (alpha(n, i, j) + 4 for i in range(1, n + 1) for j in range(i + 1, n + 1)), m
    ).to_rational()
    if value <= 0 or value % 2 == 0:
        raise IdentityCheckError(f"f({n}) = {value} is not a positive odd integer")
    return value


def unit_product(n: int) -> int:
    """prod_{i=1..n} (2 + zeta^i + zeta^-i); always 1."""
    m = _order(n)
    value = _product((cos_term(n, i) + 2 for i in range(1, n + 1)), m).to_rational()
    if value != 1:
        raise IdentityCheckError(f"unit product for n={n} is {value}, expected 1")
    return value


def pair_product(n: int, *, max_n: int = DEFAULT_MAX_N) -> int:
    """prod_{1<=i<j<=n} alpha_ij as an integer (no contract check)."""
    if n <= 1:
        return 1
    _check_budget(n, max_n)
    m = _order(n)
    return _product(
        (alpha(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)), m
    ).to_rational()


def expected_pair_sign(n: int) -> int:
    return -1 if n % 4 == 2 else 1


def pair_product_sign(n: int, *, max_n: int = DEFAULT_MAX_N) -> int:
    value = pair_product(n, max_n=max_n)
    if value != expected_pair_sign(n):
        raise IdentityCheckError(
            f"prod_(i<j) alpha_ij for n={n} is {value}, expected {expected_pair_sign(n)}"
        )
    return value


def floor_sign(n: int) -> int:
    """(-1)^floor((n+1)/2)."""
    return -1 if ((n + 1) // 2) % 2 else 1


def cos_product_sign(n: int) -> int:
    """prod_{t=1..n} (zeta^t + zeta^-t), which is +-1."""
    m = _order(n)
    value = _product((cos_term(n, t) for t in range(1, n + 1)), m).to_rational()
    if value != floor_sign(n):
        raise IdentityCheckError(
            f"prod (zeta^t + zeta^-t) for n={n} is {value}, expected {floor_sign(n)}"
        )
    return value


def full_product_check(n: int, *, max_n: int = DEFAULT_MAX_N) -> tuple[int, int]:
    """Return (v2, odd part) of prod_{i,j=1..n} alpha_ij; expected (n, (-1)^floor((n+1)/2))."""
    _check_budget(n, max_n)
    m = _order(n)
    value = _product(
        (alpha(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)), m
    ).to_rational()
    if value == 0:
        raise IdentityCheckError("full alpha product vanished")
    v = val2_int(value)
    odd = odd_part(value)
    if (v, odd) != (n, floor_sign(n)):
        raise IdentityCheckError(
            f"prod alpha_ij for n={n} is 2^{v} * {odd}, expected 2^{n} * {floor_sign(n)}"
        )
    return v, odd


def root_product(n: int) -> int:
    """prod_{i=1..2n} (1 + zeta^i), equal to 1 (substitute z = -1 in z^m - 1).

    Including the i = 0 factor gives 2 instead.
    """
    m = _order(n)
    return _product(
        (CycloElement.zeta_power(m, i) + 1 for i in range(1, m)), m
    ).to_rational()


def factor_is_unit_mod2(n: int, i: int, j: int) -> bool:
    """True when 4 + alpha_ij does not vanish in Z[z]/(Phi_m, 2)."""
    return any((alpha(n, i, j) + 4).mod2())


def factor_norm_valuation(n: int, i: int, j: int) -> int:
    """v2 of the field norm of 4 + alpha_ij (0 iff it is a 2-adic unit at every prime over 2)."""
    return val2_int((alpha(n, i, j) + 4).norm())


def inverse_power_sum(n: int, k: int) -> Fraction:
    """sum_{i,j=1..n} alpha_ij^-k, summed directly in Q(zeta)."""
    if n == 0:
        return Fraction(0)
    m = _order(n)
    total = CycloElement.constant(m, Fraction(0))
    inverses: dict[tuple[int, int], CycloElement] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            key = (min(i, j), max(i, j))
            if key not in inverses:
                inverses[key] = alpha(n, i, j).inverse() ** k
            total = total + inverses[key]
    return Fraction(total.to_rational())
