"""Truncated power series over Q or F_p, Hasse derivatives and Wronskians.

A :class:`TruncatedSeries` of precision ``N`` stores ``c_0, ..., c_{N-1}`` and
never claims anything about higher coefficients.  Binary operations truncate
to the smaller precision of their operands, and every operation that loses
precision (Hasse derivatives, division by ``t``) reports it in the result's
``precision`` attribute.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .errors import PrecisionError
from .fields import CoefficientField

__all__ = [
    "TruncatedSeries", "hasse_derivative", "wronskian", "series_invert",
    "series_sqrt", "evaluate_polynomial",
]


class TruncatedSeries:
    __slots__ = ("field", "precision", "coeffs")

    def __init__(self, field: CoefficientField, coeffs, precision: int | None = None):
        coeffs = [field(c) for c in coeffs]
        if precision is None:
            precision = len(coeffs)
        if precision < 0:
            raise ValueError("precision must be non-negative")
        coeffs = coeffs[:precision] + [field.zero] * (precision - len(coeffs))
        self.field = field
        self.precision = precision
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, field, c, precision):
        return cls(field, [c], precision)

    @classmethod
    def variable(cls, field, precision):
        """The local parameter ``t`` itself."""
        return cls(field, [0, 1], precision)

    @classmethod
    def monomial(cls, field, n, precision, c=1):
        return cls(field, [0] * n + [c], precision)

    def __repr__(self):
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(terms) if terms else "0"
        return f"<{body} + O(t^{self.precision}) over {self.field!r}>"

    def __getitem__(self, i):
        if not 0 <= i < self.precision:
            raise PrecisionError(f"coefficient {i} is beyond precision {self.precision}")
        return self.coeffs[i]

    def __len__(self):
        return self.precision

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            if other.field != self.field:
                raise ValueError("series over different coefficient fields")
            return other
        return TruncatedSeries(self.field, [other], self.precision)

    def __add__(self, other):
        other = self._lift(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.field, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.field(other)
            return TruncatedSeries(self.field, [c * a for a in self.coeffs], self.precision)
        other = self._lift(other)
        n = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        zero = self.field.zero
        out = [zero] * n
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                out[i + j] = out[i + j] + ai * b[j]
        return TruncatedSeries(self.field, out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return series_invert(self) ** (-k)
        result = TruncatedSeries.constant(self.field, 1, self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * series_invert(other)
        return self * (self.field.one / self.field(other))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.field == other.field and self.precision == other.precision
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.precision, self.coeffs))

    def truncate(self, n: int) -> "TruncatedSeries":
        if n > self.precision:
            raise PrecisionError(f"cannot raise precision from {self.precision} to {n}")
        return TruncatedSeries(self.field, self.coeffs[:n], n)

    def valuation(self):
        """Index of the first nonzero coefficient, or None if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def divide_by_t(self, k: int = 1) -> "TruncatedSeries":
        """Exact division by ``t^k``; the first ``k`` coefficients must vanish."""
        if k > self.precision:
            raise PrecisionError("not enough precision to divide by t^k")
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError(f"series is not divisible by t^{k}")
        return TruncatedSeries(self.field, self.coeffs[k:], self.precision - k)

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative d/dt (equal to the first Hasse derivative)."""
        return hasse_derivative(self, 1)


def evaluate_polynomial(coeffs, s: TruncatedSeries) -> TruncatedSeries:
    """Horner evaluation of ``sum coeffs[i] * X^i`` at the series ``s``."""
    result = TruncatedSeries(s.field, [], s.precision)
    for c in reversed(list(coeffs)):
        result = result * s + s.field(c)
    return result


def hasse_derivative(f: TruncatedSeries, i: int) -> TruncatedSeries:
    """``D_i`` sends ``t^n`` to ``C(n, i) t^(n-i)``; binomials are reduced into the field."""
    if i < 0:
        raise ValueError("order of a Hasse derivative must be non-negative")
    field = f.field
    n_out = f.precision - min(i, f.precision)
    out = [field(math.comb(n, i)) * f.coeffs[n] for n in range(i, i + n_out)]
    return TruncatedSeries(field, out, n_out)


def _det(matrix, zero):
    """Division-free Laplace expansion, memoised over the set of free columns."""
    n = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return None  # empty product
        total = zero
        free = [c for c in range(n) if cols >> c & 1]
        for pos, c in enumerate(free):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            rest = minor(row + 1, cols & ~(1 << c))
            term = entry if rest is None else entry * rest
            total = total + term if pos % 2 == 0 else total - term
        return total

    return minor(0, (1 << n) - 1)


def wronskian(*fs: TruncatedSeries) -> TruncatedSeries:
    """``det(D_{i-1} f_j)`` for ``1 <= i, j <= g``; precision drops by ``g - 1``."""
    if not fs:
        raise ValueError("the Wronskian needs at least one series")
    field, prec = fs[0].field, fs[0].precision
    for f in fs[1:]:
        if f.field != field or f.precision != prec:
            raise ValueError("all series must share field and precision")
    g = len(fs)
    if prec < g:
        raise PrecisionError(f"precision {prec} too low for a {g}x{g} Wronskian")
    rows = [[hasse_derivative(f, i) for f in fs] for i in range(g)]
    out_prec = prec - (g - 1)
    rows = [[entry.truncate(out_prec) for entry in row] for row in rows]
    return _det(rows, TruncatedSeries(field, [], out_prec))


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    """The inverse of a unit series (nonzero constant term)."""
    if f.precision == 0:
        return f
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ValueError("series with zero constant term is not invertible")
    field = f.field
    inv0 = field.one / c0
    out = [inv0]
    for n in range(1, f.precision):
        acc = field.zero
        for k in range(1, n + 1):
            acc = acc + f.coeffs[k] * out[n - k]
        out.append(-acc * inv0)
    return TruncatedSeries(field, out, f.precision)


def series_sqrt(f: TruncatedSeries, root0=None) -> TruncatedSeries:
    """Square root by Newton iteration ``s <- (s + f/s)/2``.

    ``root0`` fixes the branch by giving the square root of the constant term;
    by default the field's canonical root is used.
    """
    field = f.field
    if field.characteristic == 2:
        raise ValueError("square roots of series are not supported in characteristic 2")
    if f.precision == 0:
        return f
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ValueError("constant term must be a nonzero square")
    if root0 is None:
        root0 = field.sqrt(c0)
    else:
        root0 = field(root0)
        if root0 * root0 != c0:
            raise ValueError(f"{root0!r} is not a square root of {c0!r}")
    half = field.one / field(2)
    s = TruncatedSeries(field, [root0], 1)
    n = 1
    while n < f.precision:
        n = min(2 * n, f.precision)
        s = TruncatedSeries(field, s.coeffs, n)
        s = (s + f.truncate(n) * series_invert(s)) * half
    return s

