"""Exact scalars: rationals, prime fields and p-adic valuations.

Rationals are plain :class:`fractions.Fraction` objects.  Elements of a prime
field are :class:`ModP` instances, which support the usual operators so that
series and polynomial code can be written once for both characteristics.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational

from sympy import isprime
from sympy.ntheory import sqrt_mod

__all__ = [
    "ModP", "Rationals", "PrimeField", "QQ", "GF", "p_valuation", "as_fraction",
    "parse_rational", "format_rational", "CoefficientField",
]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rationals must be written as 'num/den', got {text!r}")
    return Fraction(text)


def format_rational(q) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _check_prime(p) -> int:
    if not isinstance(p, Integral) or not isprime(int(p)):
        raise ValueError(f"{p!r} is not a prime")
    return int(p)


def p_valuation(q, p: int):
    """The p-adic valuation of a rational number; ``math.inf`` for zero."""
    p = _check_prime(p)
    q = as_fraction(q)
    if q == 0:
        return math.inf
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


class ModP:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("cannot mix elements of different prime fields")
            return other.value
        if isinstance(other, Integral):
            return int(other) % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} is not p-integral for p={self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0:
            if self.value == 0:
                raise ZeroDivisionError("division by zero in F_p")
            return ModP(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return ModP(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ZeroDivisionError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class CoefficientField:
    """Common interface of the two supported coefficient fields."""

    characteristic: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def contains(self, x) -> bool:
        raise NotImplementedError

    def sqrt(self, x):
        """A canonical square root of ``x``, or ValueError if there is none."""
        raise NotImplementedError


class Rationals(CoefficientField):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, ModP):
            raise TypeError("cannot lift an F_p element to Q")
        return as_fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, Integral))

    def sqrt(self, x):
        x = self(x)
        if x < 0:
            raise ValueError(f"{x} has no square root in Q")
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn != x.numerator or rd * rd != x.denominator:
            raise ValueError(f"{x} is not a square in Q")
        return Fraction(rn, rd)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "Q"


class PrimeField(CoefficientField):
    def __init__(self, p: int):
        self.p = _check_prime(p)
        self.characteristic = self.p

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError("element belongs to a different prime field")
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not p-integral for p={self.p}")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModP(int(x), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, ModP) and x.p == self.p

    def sqrt(self, x):
        x = self(x)
        if x.value == 0:
            return x
        roots = sqrt_mod(x.value, self.p, all_roots=True)
        if not roots:
            raise ValueError(f"{x.value} is not a square mod {self.p}")
        return ModP(min(roots), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
