import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstrass_invariants.heights import (ArchLedgerEntry, GlobalHeightInput, LocalLedgerEntry, bost_bound,
                                            compare_bounds, deg_lambda, faltings_lower_bound,
                                            noether_coefficients, slope_constant)

LOG2PI = math.log(2 * math.pi)


def test_constants_at_genus_two():
    c = noether_coefficients(2)
    assert c == {"lhs": 100, "delta": 9, "two_pi": 72, "log_t": 32, "xi_delta": 18}


def test_slope_constant_values():
    assert slope_constant(2) == Fraction(100, 9)
    assert slope_constant(3) == Fraction(56, 5)
    with pytest.raises(ValueError):
        slope_constant(1)


def test_slope_constant_exceeds_eleven_and_increases_to_twelve():
    values = [slope_constant(g) for g in range(2, 101)]
    assert all(v > 11 and v < 12 for v in values)
    assert all(a < b for a, b in zip(values, values[1:]))
    assert 12 - slope_constant(10_000) < Fraction(1, 1000)


def test_empty_ledger_genus_two():
    data = GlobalHeightInput(2, 1, (), (), (ArchLedgerEntry("s", -4.0),))
    out = deg_lambda(data)
    assert out.deg_lambda == pytest.approx((-72 * LOG2PI + 32 * -4.0) / 100, abs=1e-15)
    assert out.combination == pytest.approx(-72 * LOG2PI - 128, abs=1e-13)


def test_synthetic_ledger_by_hand():
    log_q = math.log(5)
    data = GlobalHeightInput(2, 1, (0.0,) * 6,
                             (LocalLedgerEntry("5", log_q, 3, Fraction(-10), Fraction(2)),),
                             (ArchLedgerEntry("s", -4.0),))
    out = deg_lambda(data)
    # -(1/2)(-10) + 9*3 + 4*2 = 40 multiplies log 5
    hand = (40 * log_q - 72 * LOG2PI - 128) / 100
    assert abs(out.deg_lambda - hand) < 1e-14
    assert out.exact_local["5"] == {"phi": Fraction(5), "delta": Fraction(27), "E": Fraction(8)}
    assert out.faltings_height == out.deg_lambda
    assert out.non_archimedean_part == pytest.approx(40 * log_q / 100)


def test_heights_term():
    data = GlobalHeightInput(2, 2, (0.5,) + (0.0,) * 5, (), (ArchLedgerEntry("a", 0.0), ArchLedgerEntry("b", 0.0)))
    out = deg_lambda(data)
    assert out.heights_term == pytest.approx(2 * 2 / 2 * 0.5)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_equality_case_on_zeroed_ledger(g):
    log_t = [-3.1, -2.7]
    data = GlobalHeightInput(g, 2, (0.0,) * (g ** 3 - g), (), tuple(ArchLedgerEntry(str(i), t) for i, t in enumerate(log_t)))
    out = deg_lambda(data)
    bound = faltings_lower_bound(g, 2, log_t)
    assert abs(out.faltings_height - bound) <= 4 * math.ulp(abs(bound))


ledgers = st.builds(
    lambda g, K, h, q, od, phi, e, lt: (g, K, h, q, od, phi, e, lt),
    st.integers(2, 4), st.integers(1, 3), st.floats(0, 5), st.floats(0.5, 5), st.integers(0, 20),
    st.fractions(-40, 0, max_denominator=6), st.fractions(0, 10, max_denominator=4), st.floats(-10, 2))


@settings(max_examples=100, deadline=None)
@given(ledgers)
def test_nonnegative_ledgers_dominate_the_bound(params):
    g, K, h, log_q, od, phi, e, lt = params
    data = GlobalHeightInput(g, K, (h,) * (g ** 3 - g), (LocalLedgerEntry("p", log_q, od, phi, e),),
                             tuple(ArchLedgerEntry(str(i), lt) for i in range(K)))
    out = deg_lambda(data)
    assert out.faltings_height >= faltings_lower_bound(g, K, [lt] * K) - out.rounding_bound


@pytest.mark.parametrize("g", [1, 2, 5])
def test_lower_bound_is_affine_in_log_t(g):
    c = noether_coefficients(g)
    slope = c["log_t"] / c["lhs"]
    b0 = faltings_lower_bound(g, 1, [0.0])
    for t in (-3.0, 1.5):
        assert faltings_lower_bound(g, 1, [t]) == pytest.approx(b0 + slope * t, abs=1e-14)
    assert b0 == pytest.approx(-c["two_pi"] * LOG2PI / c["lhs"])


def test_bost_bound():
    assert bost_bound(2, 1, [0.0]) == (-2 * LOG2PI, 0.0)
    value, err = bost_bound(1, 2, [0.1, -0.3], [0.01, 0.02])
    assert value == pytest.approx(-LOG2PI - (0.1 - 0.3))
    assert err == pytest.approx(math.sqrt(0.01 ** 2 + 0.02 ** 2))
    with pytest.raises(ValueError):
        bost_bound(1, 2, [0.0])


def test_compare_bounds_report():
    rep = compare_bounds(1, 1, [-1.0], [-0.2], [0.001])
    assert set(rep) == {"g", "degree_K", "faltings_lower_bound", "bost_bound", "bost_stderr", "difference"}
    assert rep["difference"] == pytest.approx(rep["faltings_lower_bound"] - rep["bost_bound"])


def test_ledger_validation():
    with pytest.raises(ValueError):
        LocalLedgerEntry("p", math.log(3), 1, Fraction(1), 0)
    with pytest.raises(ValueError):
        LocalLedgerEntry("p", math.log(3), -1)
    with pytest.raises(ValueError):
        ArchLedgerEntry("s", math.inf)
    with pytest.raises(ValueError):
        GlobalHeightInput(2, 2, (), (), (ArchLedgerEntry("s", 0.0),))
    with pytest.raises(ValueError):
        GlobalHeightInput(2, 1, (0.0,) * 5, (), (ArchLedgerEntry("s", 0.0),))
    with pytest.raises(ValueError):
        GlobalHeightInput(1, 1, (), (), (ArchLedgerEntry("s", 0.0),))
