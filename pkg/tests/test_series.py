import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstrass_invariants.errors import PrecisionError
from weierstrass_invariants.fields import GF, QQ, ModP, p_valuation
from weierstrass_invariants.series import (TruncatedSeries, hasse_derivative, series_invert,
                                           series_sqrt, wronskian)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def lucas_binomial(n, k, p):
    """C(n, k) mod p digit by digit, independent of math.comb reduction."""
    out = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        out = out * math.factorial(nd) // (math.factorial(kd) * math.factorial(nd - kd)) % p
        n //= p
        k //= p
    return out


def series_over(field, coeffs, precision=None):
    return TruncatedSeries(field, coeffs, precision)


# -- valuations ----------------------------------------------------------------

def test_p_valuation_examples():
    assert p_valuation(12, 2) == 2
    assert p_valuation(1, 7) == 0
    assert p_valuation(0, 5) == math.inf
    assert p_valuation(Fraction(3, 50), 5) == -2


def test_p_valuation_rejects_composite():
    with pytest.raises(ValueError):
        p_valuation(3, 6)


@given(rationals, rationals, st.sampled_from([2, 3, 5, 7]))
def test_valuation_axioms(a, b, p):
    assert p_valuation(a * b, p) == p_valuation(a, p) + p_valuation(b, p)
    assert p_valuation(a + b, p) >= min(p_valuation(a, p), p_valuation(b, p))


# -- Hasse derivatives ---------------------------------------------------------

def test_hasse_examples():
    t2 = TruncatedSeries.monomial(QQ, 2, 6)
    t5 = TruncatedSeries.monomial(QQ, 5, 8)
    assert hasse_derivative(t2, 1).coeffs[:2] == (0, 2)
    d = hasse_derivative(t5, 2)
    assert d.coeffs[3] == 10 and sum(1 for c in d.coeffs if c != 0) == 1
    F2 = GF(2)
    t2 = TruncatedSeries.monomial(F2, 2, 6)
    assert hasse_derivative(t2, 1).is_zero()
    assert hasse_derivative(t2, 2).coeffs[0] == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_hasse_binomials_match_lucas(p):
    F = GF(p)
    for n in range(0, 30):
        tn = TruncatedSeries.monomial(F, n, 31)
        for i in range(0, n + 1):
            assert hasse_derivative(tn, i)[n - i] == lucas_binomial(n, i, p)


def test_hasse_precision_loss():
    f = TruncatedSeries(QQ, range(10))
    assert hasse_derivative(f, 3).precision == 7
    assert hasse_derivative(f, 12).precision == 0


@given(st.lists(rationals, min_size=12, max_size=12), st.integers(0, 4), st.integers(0, 4))
def test_hasse_composition_law_over_q(coeffs, i, j):
    f = TruncatedSeries(QQ, coeffs)
    lhs = hasse_derivative(hasse_derivative(f, j), i)
    rhs = hasse_derivative(f, i + j) * math.comb(i + j, i)
    assert lhs == rhs


@given(st.lists(st.integers(0, 10), min_size=12, max_size=12), st.integers(0, 4), st.integers(0, 4),
       st.sampled_from([2, 3, 5, 11]))
def test_hasse_composition_law_over_fp(coeffs, i, j, p):
    f = TruncatedSeries(GF(p), coeffs)
    assert hasse_derivative(hasse_derivative(f, j), i) == hasse_derivative(f, i + j) * math.comb(i + j, i)


@given(st.lists(rationals, min_size=10, max_size=10), st.integers(0, 5))
def test_hasse_is_scaled_ordinary_derivative(coeffs, i):
    f = TruncatedSeries(QQ, coeffs)
    g = f
    for _ in range(i):
        g = g.derivative() * 1  # first Hasse derivative is d/dt
    # repeated d/dt loses one coefficient per step, like D_i
    assert hasse_derivative(f, i) == g * Fraction(1, math.factorial(i))


def test_derivative_by_sympy():
    t = sympy.symbols("t")
    poly = 3 + 2 * t - 5 * t**3 + t**7
    f = TruncatedSeries(QQ, [int(poly.coeff(t, k)) for k in range(9)])
    for i in range(4):
        expected = sympy.Poly(sympy.diff(poly, t, i) / math.factorial(i), t)
        got = hasse_derivative(f, i)
        for k in range(got.precision):
            assert got[k] == expected.coeff_monomial(t**k)


# -- inversion and square roots -------------------------------------------------

def test_invert_and_sqrt_examples():
    one_plus_t = TruncatedSeries(QQ, [1, 1], 6)
    assert series_invert(one_plus_t).coeffs == (1, -1, 1, -1, 1, -1)
    s = series_sqrt(one_plus_t)
    assert s.coeffs[:3] == (1, Fraction(1, 2), Fraction(-1, 8))
    assert series_sqrt(TruncatedSeries(QQ, [4], 1)).coeffs == (2,)


def test_invert_and_sqrt_errors():
    with pytest.raises(ValueError):
        series_invert(TruncatedSeries(QQ, [0, 1], 4))
    with pytest.raises(ValueError):
        series_sqrt(TruncatedSeries(QQ, [2, 1], 4))
    with pytest.raises(ValueError):
        series_sqrt(TruncatedSeries(GF(3), [2, 1], 4))  # 2 is not a square mod 3
    with pytest.raises(ValueError):
        series_sqrt(TruncatedSeries(QQ, [4, 1], 4), root0=3)


@given(st.lists(rationals, min_size=8, max_size=8).filter(lambda c: c[0] != 0))
def test_invert_roundtrip(coeffs):
    f = TruncatedSeries(QQ, coeffs)
    assert f * series_invert(f) == TruncatedSeries.constant(QQ, 1, 8)


@given(st.lists(st.integers(0, 12), min_size=8, max_size=8), st.sampled_from([3, 5, 13]))
def test_sqrt_roundtrip_fp(coeffs, p):
    F = GF(p)
    coeffs[0] = 1 + coeffs[0] % (p - 1)
    f = TruncatedSeries(F, coeffs)
    c0 = F(coeffs[0])
    try:
        F.sqrt(c0)
    except ValueError:
        return
    s = series_sqrt(f)
    assert s * s == f


def test_precision_is_min_of_operands():
    a = TruncatedSeries(QQ, [1, 2, 3], 5)
    b = TruncatedSeries(QQ, [1], 3)
    assert (a + b).precision == 3 and (a * b).precision == 3
    with pytest.raises(PrecisionError):
        a[5]


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        TruncatedSeries(QQ, [1]) + TruncatedSeries(GF(5), [1])
    with pytest.raises(ValueError):
        ModP(1, 5) + ModP(1, 7)


# -- Wronskians -----------------------------------------------------------------

def monomial_wronskian_oracle(exponents):
    """Brute-force det(D_{i-1} t^{a_j - 1}) with sympy."""
    t = sympy.symbols("t")
    g = len(exponents)
    M = sympy.Matrix(g, g, lambda i, j: sympy.diff(t ** (exponents[j] - 1), t, i) / sympy.factorial(i))
    return sympy.Poly(sympy.expand(M.det()), t)


def test_wronskian_identity_matrix():
    N = 8
    fs = [TruncatedSeries.monomial(QQ, k, N) for k in range(3)]
    w = wronskian(*fs)
    assert w.precision == N - 2
    assert w.coeffs == (1,) + (0,) * (N - 3)


@pytest.mark.parametrize("a", [(1, 2, 5), (1, 3, 4), (2, 3, 7), (1, 2, 3, 6), (1, 4)])
def test_monomial_wronskian_order_and_leading_coefficient(a):
    g = len(a)
    N = 14
    w = wronskian(*[TruncatedSeries.monomial(QQ, ai - 1, N) for ai in a])
    order = sum(ai - i for i, ai in enumerate(a, start=1))
    assert w.valuation() == order
    oracle = monomial_wronskian_oracle(a)
    assert oracle.degree() == order and w[order] == oracle.LC()
    # leading coefficient is prod (a_j - a_i) up to the factorials carried by the Hasse operators
    vandermonde = math.prod(a[j] - a[i] for i in range(g) for j in range(i + 1, g))
    assert w[order] == Fraction(vandermonde, math.prod(math.factorial(i) for i in range(g)))


def test_monomial_wronskian_125_has_order_two():
    w = wronskian(*[TruncatedSeries.monomial(QQ, k, 10) for k in (0, 1, 4)])
    assert w.valuation() == 2 and w[2] == 6


def _random_series(draw_list, field, n):
    return TruncatedSeries(field, draw_list[:n], n)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(rationals, min_size=12, max_size=12), min_size=3, max_size=3),
       st.lists(rationals, min_size=12, max_size=12).filter(lambda c: c[0] != 0),
       rationals)
def test_wronskian_alternating_multilinear_and_scaling(rows, unit, lam):
    f1, f2, f3 = (TruncatedSeries(QQ, r) for r in rows)
    w = wronskian(f1, f2, f3)
    assert wronskian(f2, f1, f3) == -w
    assert wronskian(f1, f2 + f1 * lam, f3) == w
    u = TruncatedSeries(QQ, unit)
    assert wronskian(u * f1, u * f2, u * f3) == (u ** 3).truncate(w.precision) * w


@settings(max_examples=20, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=12, max_size=12), min_size=2, max_size=2),
       st.lists(st.integers(1, 6), min_size=12, max_size=12))
def test_wronskian_scaling_over_f7(rows, unit):
    F = GF(7)
    f1, f2 = (TruncatedSeries(F, r) for r in rows)
    u = TruncatedSeries(F, unit)
    w = wronskian(f1, f2)
    assert wronskian(u * f1, u * f2) == (u * u).truncate(w.precision) * w
    assert wronskian(f2, f1) == -w


def test_wronskian_rejects_mismatch():
    with pytest.raises(ValueError):
        wronskian(TruncatedSeries(QQ, [1], 4), TruncatedSeries(QQ, [1], 5))
    with pytest.raises(ValueError):
        wronskian(TruncatedSeries(QQ, [1], 4), TruncatedSeries(GF(3), [1], 4))
    with pytest.raises(PrecisionError):
        wronskian(*[TruncatedSeries(QQ, [1], 2)] * 3)
