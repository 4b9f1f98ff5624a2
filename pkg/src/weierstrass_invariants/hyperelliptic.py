"""Hyperelliptic equations ``y^2 + a(x) y = b(x)``: discriminants and local Wronskians.

Polynomials are coefficient lists from the constant term up.  Everything is
carried out over a :class:`~weierstrass_invariants.fields.CoefficientField`
of characteristic different from 2, with ``F = a^2 + 4b`` playing the role of
the branch polynomial: ``(2y + a)^2 = F(x)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cluster import ClusterTree, RootConfig, build_tree, compute_e
from .errors import PrecisionError
from .fields import QQ, CoefficientField, p_valuation
from .series import (TruncatedSeries, evaluate_polynomial, series_invert,
                     series_sqrt, wronskian)

__all__ = [
    "HyperellipticEquation", "discriminant", "resultant", "ord_lambda",
    "hyperelliptic_wronskian_check", "weierstrass_gap_order", "local_wronskian",
    "INFINITY",
]

INFINITY = "inf"


# -- polynomial helpers ------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p):
    return len(_trim(p)) - 1


def _add(p, q, field):
    n = max(len(p), len(q))
    p = list(p) + [field.zero] * (n - len(p))
    q = list(q) + [field.zero] * (n - len(q))
    return _trim(x + y for x, y in zip(p, q))


def _mul(p, q, field):
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _scale(p, c):
    return _trim(c * x for x in p)


def _deriv(p, field):
    return _trim(field(i) * c for i, c in enumerate(p) if i > 0)


def _eval(p, x, field):
    acc = field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _rem(f, g):
    f = _trim(f)
    g = _trim(g)
    inv = 1 / g[-1]
    while len(f) >= len(g):
        c = f[-1] * inv
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = f[shift + i] - c * gc
        f.pop()
        f = _trim(f)
    return f


def resultant(f, g, field: CoefficientField = QQ):
    """``Res(f, g)`` for the actual degrees of ``f`` and ``g``, by the Euclidean algorithm."""
    f = _trim(field(c) for c in f)
    g = _trim(field(c) for c in g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    sign = 1
    acc = field.one
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return sign * acc * g[0] ** m
        r = _rem(f, g)
        if not r:
            return field.zero
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
        if (m * n) % 2:
            sign = -sign
        acc = acc * g[-1] ** (m - (len(r) - 1))
        f, g = g, r


def discriminant(f, field: CoefficientField = QQ):
    """``(-1)^{d(d-1)/2} Res(f, f') / lc(f)`` with ``f'`` taken of formal degree ``d - 1``."""
    f = _trim(field(c) for c in f)
    if not f:
        raise ValueError("discriminant of the zero polynomial")
    d = len(f) - 1
    if d == 0:
        raise ValueError("discriminant needs degree at least 1")
    if d == 1:
        return field.one
    df = _deriv(f, field)
    lc = f[-1]
    if not df:
        return field.zero
    # formal degree d-1 versus actual degree of f' (they differ when char | d)
    res = resultant(f, df, field) * lc ** ((d - 1) - (len(df) - 1))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * res / lc


def _from_roots(roots, field):
    out = [field.one]
    for r in roots:
        out = _mul(out, [-field(r), field.one], field)
    return out


# -- equations ---------------------------------------------------------------

@dataclass(frozen=True)
class HyperellipticEquation:
    """``y^2 + a(x) y = b(x)`` of genus ``g`` over ``field``."""

    g: int
    a: tuple
    b: tuple
    field: CoefficientField = QQ

    def __post_init__(self):
        field = self.field
        if field.characteristic == 2:
            raise ValueError("characteristic 2 models are not supported")
        object.__setattr__(self, "a", tuple(_trim(field(c) for c in self.a)))
        object.__setattr__(self, "b", tuple(_trim(field(c) for c in self.b)))
        F = self.branch_polynomial
        if not F:
            raise ValueError("2y + a vanishes identically")
        if len(F) - 1 not in (2 * self.g + 1, 2 * self.g + 2):
            raise ValueError(f"a^2 + 4b has degree {len(F) - 1}, expected {2 * self.g + 1} or {2 * self.g + 2}")
        if len(self.a) > self.g + 2:
            raise ValueError("deg a exceeds g + 1")

    @classmethod
    def from_roots(cls, roots, A=1, field: CoefficientField = QQ):
        """``y^2 = A * prod(x - a_i)``."""
        n = len(roots)
        if n % 2 or n < 4:
            raise ValueError("need an even number (at least 4) of roots")
        b = _scale(_from_roots(roots, field), field(A))
        return cls(n // 2 - 1, (), tuple(b), field)

    @classmethod
    def from_ab(cls, a, b, g=None, field: CoefficientField = QQ):
        if g is None:
            deg = max(2 * _deg([field(c) for c in a]), _deg([field(c) for c in b]))
            g = (deg - 1) // 2
        return cls(g, tuple(a), tuple(b), field)

    @property
    def branch_polynomial(self):
        """``F = a^2 + 4b``, so that ``(2y + a)^2 = F``."""
        field = self.field
        return tuple(_add(_mul(self.a, self.a, field), _scale(self.b, field(4)), field))

    def discriminant(self):
        return discriminant(self.branch_polynomial, self.field)

    def is_smooth(self) -> bool:
        return self.discriminant() != 0

    def reversed(self) -> "HyperellipticEquation":
        """The chart at infinity: ``xi = 1/x``, ``eta = y / x^(g+1)``."""
        field, g = self.field, self.g
        a = list(self.a) + [field.zero] * (g + 2 - len(self.a))
        b = list(self.b) + [field.zero] * (2 * g + 3 - len(self.b))
        return HyperellipticEquation(g, tuple(reversed(a)), tuple(reversed(b)), field)

    def is_branch_point(self, x0) -> bool:
        if x0 == INFINITY:
            return len(self.branch_polynomial) - 1 == 2 * self.g + 1
        return _eval(self.branch_polynomial, self.field(x0), self.field) == 0


def ord_lambda(config: RootConfig, tree: ClusterTree | None = None):
    """``g v(D) - (8g+4) e`` for ``y^2 = A prod(x - a_i)``, ``D`` the discriminant of the monic product.

    This closed form is derived from the discriminant section and the integral
    basis of differentials; :func:`~weierstrass_invariants.fiber.verify_local_identity`
    remains the authority when fiber data is available.
    """
    if config.p == 2:
        raise ValueError("residue characteristic 2 is not supported")
    if p_valuation(config.A, config.p) != 0:
        raise ValueError("A must be a unit")
    tree = build_tree(config) if tree is None else tree
    D = discriminant(_from_roots(config.roots, QQ), QQ)
    v_d = p_valuation(D, config.p)
    e = compute_e(tree)
    value = config.g * v_d - (8 * config.g + 4) * e
    return int(value) if value.denominator == 1 else value


# -- local expansions --------------------------------------------------------

def _min_precision(g):
    return g * (g + 1) // 2 + g


def _generic_differentials(eq, x0, precision, y0=None):
    """Series ``f_i`` with ``omega_i = f_i dt`` at a non-branch point, ``t = x - x0``.

    Also returns the series for ``2y + a``.  When ``F(x0)`` is not a square in
    the field and no ``y0`` is given, ``2y + a`` is replaced by
    ``(2y + a)/sqrt(F(x0))``, which has constant term 1; both sides of the
    Wronskian identity then change by the same constant ``F(x0)^(-g/2)``.
    """
    field = eq.field
    x = TruncatedSeries(field, [x0, 1], precision)
    F = evaluate_polynomial(eq.branch_polynomial, x)
    c0 = F[0]
    if c0 == 0:
        raise ValueError(f"x = {x0} is a branch point")
    if y0 is not None:
        root0 = 2 * field(y0) + _eval(eq.a, field(x0), field)
        s = series_sqrt(F, root0)
    else:
        try:
            s = series_sqrt(F, field.sqrt(c0))
        except ValueError:
            s = series_sqrt(F * (field.one / c0), field.one)
    inv = series_invert(s)
    fs = [inv]
    for _ in range(1, eq.g):
        fs.append(fs[-1] * x)
    return fs, s


def _branch_differentials(eq, x0, precision):
    """Series ``f_i`` at a finite branch point, with local parameter ``s = 2y + a``."""
    field = eq.field
    F = list(eq.branch_polynomial)
    # shift so the branch point sits at u = 0: G(u) = F(x0 + u)
    G = evaluate_polynomial(F, TruncatedSeries(field, [x0, 1], len(F))).coeffs
    c1 = G[1]
    if c1 == 0:
        raise ValueError(f"x = {x0} is a multiple root of a^2 + 4b")
    n = precision + 2
    s = TruncatedSeries.variable(field, n)
    s2 = s * s
    # u = (s^2 - (G(u) - c1 u)) / c1; each pass fixes two more coefficients
    higher = [field.zero, field.zero] + list(G[2:])
    u = TruncatedSeries(field, [], n)
    for _ in range(n // 2 + 2):
        u = (s2 - evaluate_polynomial(higher, u)) * (field.one / c1)
    x = u + field(x0)
    dx_over_s = u.derivative().divide_by_t(1)
    fs = [dx_over_s.truncate(precision)]
    xs = x.truncate(precision)
    for _ in range(1, eq.g):
        fs.append(fs[-1] * xs)
    return fs


def local_wronskian(eq: HyperellipticEquation, point, precision: int) -> TruncatedSeries:
    """Wronskian of the basis ``x^(i-1) dx / (2y + a)`` in a local parameter at ``point``.

    ``point`` is an x-coordinate in the field or :data:`INFINITY`.
    """
    if point == INFINITY:
        return local_wronskian(eq.reversed(), eq.field.zero, precision)
    x0 = eq.field(point)
    if eq.is_branch_point(x0):
        fs = _branch_differentials(eq, x0, precision)
    else:
        fs, _ = _generic_differentials(eq, x0, precision)
    return wronskian(*fs)


def hyperelliptic_wronskian_check(eq: HyperellipticEquation, x0, precision: int, y0=None) -> bool:
    """Coefficientwise check of ``[f_1, ..., f_g] = (2y + a)^(-g)`` at a non-branch point.

    This is the local form of
    ``[dx/(2y+a), ..., x^(g-1) dx/(2y+a)] = (2y+a)^(g(g-1)/2) (dx/(2y+a))^(g(g+1)/2)``
    in the parameter ``t = x - x0``.
    """
    if precision < _min_precision(eq.g):
        raise PrecisionError(f"precision {precision} below the minimum {_min_precision(eq.g)} for g={eq.g}")
    x0 = eq.field(x0)
    if eq.is_branch_point(x0):
        raise ValueError(f"x = {x0} is a Weierstrass point")
    fs, s = _generic_differentials(eq, x0, precision, y0)
    lhs = wronskian(*fs)
    rhs = (series_invert(s) ** eq.g).truncate(lhs.precision)
    return lhs == rhs


def weierstrass_gap_order(eq: HyperellipticEquation, point, precision: int) -> int:
    """Order of vanishing of the Wronskian at ``point`` (an x-coordinate or ``"inf"``)."""
    if precision < _min_precision(eq.g):
        raise PrecisionError(f"precision {precision} below the minimum {_min_precision(eq.g)} for g={eq.g}")
    w = local_wronskian(eq, point, precision)
    order = w.valuation()
    if order is None:
        raise PrecisionError(f"Wronskian vanishes to precision {w.precision}; raise the precision")
    return order

