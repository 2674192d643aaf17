"""Truncated 2-adic arithmetic on exact rationals.

A :class:`TwoAdicTrunc` is a 2-adic integer known modulo ``2**precision``;
residues are always kept in the canonical range ``[0, 2**precision)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Union[int, Fraction]

INFINITY = math.inf


class NegativeValuationError(ValueError):
    """Raised when a rational with a power of two in its denominator is reduced."""


class NotASquareError(ValueError):
    pass


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class TwoAdicTrunc:
    residue: int
    precision: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise PrecisionError(f"precision must be positive, got {self.precision}")
        if not 0 <= self.residue < (1 << self.precision):
            raise ValueError(
                f"residue {self.residue} outside [0, 2^{self.precision})"
            )

    @classmethod
    def of(cls, value: int, precision: int) -> TwoAdicTrunc:
        return cls(value % (1 << precision), precision)

    @property
    def modulus(self) -> int:
        return 1 << self.precision

    def truncate(self, precision: int) -> TwoAdicTrunc:
        if precision > self.precision:
            raise PrecisionError(
                f"cannot raise precision from {self.precision} to {precision}"
            )
        return TwoAdicTrunc(self.residue % (1 << precision), precision)

    def __neg__(self) -> TwoAdicTrunc:
        return TwoAdicTrunc.of(-self.residue, self.precision)

    def _common(self, other: TwoAdicTrunc | int) -> tuple[int, int]:
        if isinstance(other, TwoAdicTrunc):
            return other.residue, min(self.precision, other.precision)
        return other, self.precision

    def __add__(self, other: TwoAdicTrunc | int) -> TwoAdicTrunc:
        value, prec = self._common(other)
        return TwoAdicTrunc.of(self.residue + value, prec)

    __radd__ = __add__

    def __sub__(self, other: TwoAdicTrunc | int) -> TwoAdicTrunc:
        value, prec = self._common(other)
        return TwoAdicTrunc.of(self.residue - value, prec)

    def __mul__(self, other: TwoAdicTrunc | int) -> TwoAdicTrunc:
        value, prec = self._common(other)
        return TwoAdicTrunc.of(self.residue * value, prec)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.residue} mod 2^{self.precision}"


def val2_int(x: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("val2_int(0) is infinite")
    return (x & -x).bit_length() - 1


def val2(x: Rational) -> Union[int, float]:
    """2-adic valuation of a rational; ``math.inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return val2_int(x.numerator) - val2_int(x.denominator)


def odd_part(x: int) -> int:
    return x >> val2_int(x)


def reduce_mod2k(x: Rational, k: int) -> TwoAdicTrunc:
    """Image of a 2-integral rational in Z/2^k."""
    if k < 1:
        raise PrecisionError(f"precision must be positive, got {k}")
    x = Fraction(x)
    if x.denominator & 1 == 0:
        raise NegativeValuationError(
            f"{x} has 2-adic valuation {val2(x)} < 0; cannot reduce mod 2^{k}"
        )
    modulus = 1 << k
    return TwoAdicTrunc(x.numerator * pow(x.denominator, -1, modulus) % modulus, k)


def isqrt_exact(x: int) -> Optional[int]:
    """Return ``r`` with ``r*r == x``, or ``None`` when ``x`` is not a square."""
    if x < 0:
        raise ValueError("isqrt_exact of a negative number")
    r = math.isqrt(x)
    return r if r * r == x else None


def hensel_sqrt(a: TwoAdicTrunc, sign_mod4: int) -> TwoAdicTrunc:
    """Square root of an odd 2-adic square, normalised by its class mod 4.

    The odd roots of ``x**2 = a (mod 2**K)`` are ``{±x, ±x + 2**(K-1)}``, so
    only ``K - 1`` bits of the root are determined; the result carries
    precision ``a.precision - 1``.
    """
    if sign_mod4 not in (1, 3):
        raise ValueError(f"sign_mod4 must be 1 or 3, got {sign_mod4}")
    k = a.precision
    if k < 3:
        raise PrecisionError(f"need precision >= 3 for a 2-adic square root, got {k}")
    if a.residue % 8 != 1:
        raise NotASquareError(f"{a} is not an odd 2-adic square (needs 1 mod 8)")
    # invariant: x*x == a (mod 2**j), x == 1 (mod 4)
    x = 1
    for j in range(3, k):
        if (x * x - a.residue) >> j & 1:
            x += 1 << (j - 1)
    if sign_mod4 == 3:
        x = -x
    return TwoAdicTrunc.of(x, k - 1)
