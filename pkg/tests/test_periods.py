import math

import numpy as np
import pytest

from weierstrass_invariants.periods import (EllipticTorus, HyperellipticCurve, degree_g_minus_1_image,
                                            period_matrix_hyperelliptic, t_invariant, t_invariant_samples)
from weierstrass_invariants.theta import petersson_delta_norm_g1, reduce_tau_g1, theta_norm

CURVES = {
    "lemniscate": [0, 1, -1],
    "cubic_complex": [0.3, 1 + 1j, -1.2 + 0.4j],
    "quartic_g1": [0, 1, 3, -2 + 1j],
    "quintic": [0, 1, -1, 1j, -1j],
    "sextic_g2": [-2, -0.5 + 0.3j, 0.7, 1.5 - 1j, 2.4, 3 + 0.8j],
    "septic_g3": [0.1, 1.3, -1, 2j, -1j + 0.5, 3, 4.2],
}


def j_from_tau(tau, terms=80):
    """Klein's j from the Eisenstein series E4 and the eta product."""
    q = np.exp(2j * math.pi * tau)
    e4 = 1 + 240 * sum(sum(d ** 3 for d in range(1, n + 1) if n % d == 0) * q ** n for n in range(1, terms))
    delta = q * np.prod([(1 - q ** n) ** 24 for n in range(1, terms)])
    return e4 ** 3 / delta


def j_from_branch_points(e1, e2, e3):
    lam = (e3 - e1) / (e2 - e1)
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


@pytest.mark.parametrize("name", list(CURVES))
def test_period_matrix_is_symmetric_with_positive_imaginary_part(name):
    tau = period_matrix_hyperelliptic(CURVES[name]).tau
    g = (len(CURVES[name]) - 1) // 2
    assert tau.shape == (g, g)
    assert np.max(np.abs(tau - tau.T)) < 1e-8
    assert np.linalg.eigvalsh(tau.imag)[0] > 0


def test_lemniscate_recovers_i():
    tau = period_matrix_hyperelliptic([0, 1, -1]).tau[0, 0]
    assert abs(tau - 1j) < 1e-6


@pytest.mark.parametrize("pts", [[0.3, 1 + 1j, -1.2 + 0.4j], [0, 1, 5], [2, -1 + 2j, -1 - 2j]])
def test_genus_one_j_invariant_oracle(pts):
    tau = period_matrix_hyperelliptic(pts).tau[0, 0]
    t, _ = reduce_tau_g1(tau)
    assert abs(j_from_tau(t) / j_from_branch_points(*pts) - 1) < 1e-7


def test_four_point_genus_one_matches_three_point_model():
    """Moving one branch point to infinity by a Moebius map leaves the curve unchanged."""
    e = [0, 1, 3, -2 + 1j]
    # x -> 1/(x - e[3]) sends e[3] to infinity
    moved = [1 / (x - e[3]) for x in e[:3]]
    t1, _ = reduce_tau_g1(period_matrix_hyperelliptic(e).tau[0, 0])
    t2, _ = reduce_tau_g1(period_matrix_hyperelliptic(moved).tau[0, 0])
    assert abs(t1 - t2) < 1e-8


def test_quintic_period_matrix_is_known():
    tau = period_matrix_hyperelliptic([0, 1, -1, 1j, -1j]).tau
    r = math.sqrt(2)
    expected = np.array([[1j * r, 1j * r / 2], [1j * r / 2, 0.5 + 1j * r / 2]])
    assert np.max(np.abs(tau - expected)) < 1e-8


@pytest.mark.parametrize("name", ["quintic", "sextic_g2", "septic_g3", "lemniscate"])
def test_theta_vanishes_at_branch_point_images(name):
    curve = HyperellipticCurve(CURVES[name])
    kappa = curve.riemann_constant
    g = curve.g
    for w in curve.branch_point_images():
        assert theta_norm((g - 1) * w + kappa, curve.period_matrix) < 1e-6


@pytest.mark.parametrize("name", ["quintic", "sextic_g2", "septic_g3"])
def test_abel_jacobi_paths_land_on_theta_divisor(name):
    """theta(AJ(P_1) + ... + AJ(P_{g-1}) + kappa) = 0 for arbitrary points."""
    curve = HyperellipticCurve(CURVES[name])
    rng = np.random.default_rng(11)
    for _ in range(3):
        pts = curve.random_points(rng, curve.g - 1)
        z = degree_g_minus_1_image(curve, [(1, p) for p in pts])
        assert theta_norm(z, curve.period_matrix) < 1e-8


def test_abel_jacobi_of_input_points():
    curve = HyperellipticCurve([0, 1, -1, 1j, -1j])
    x = 0.4 + 0.9j
    y = complex(np.sqrt(x ** 5 - x))
    plus, minus = curve.abel_jacobi(x, y), curve.abel_jacobi(x, -y)
    assert np.allclose(plus, -minus, atol=1e-10)
    assert theta_norm(plus + curve.riemann_constant, curve.period_matrix) < 1e-8
    # infinity is a branch point of the quintic, so its image is a half period
    w = curve.abel_jacobi("inf")
    pm = curve.period_matrix
    m = np.linalg.solve(pm.Y, (2 * w).imag)
    n = (2 * w - pm.tau @ m).real
    assert np.allclose(m, np.rint(m), atol=1e-8) and np.allclose(n, np.rint(n), atol=1e-8)


def test_weierstrass_images_by_genus():
    assert HyperellipticCurve([0, 1, -1]).weierstrass_images() == []
    assert len(HyperellipticCurve(CURVES["quintic"]).weierstrass_images()) == 6
    with pytest.raises(NotImplementedError):
        HyperellipticCurve(CURVES["septic_g3"]).weierstrass_images()


def test_input_validation():
    with pytest.raises(ValueError):
        HyperellipticCurve([0, 1])
    with pytest.raises(ValueError):
        HyperellipticCurve([0, 1, 1])


# -- the T-invariant ----------------------------------------------------------------

@pytest.mark.parametrize("tau", [1j, (1 + 1j * math.sqrt(3)) / 2, 2j])
def test_t_invariant_genus_one(tau):
    values = t_invariant_samples(EllipticTorus(tau), range(5))
    assert (max(values) - min(values)) / np.mean(values) < 1e-6
    predicted = (2 * math.pi) ** -2 * petersson_delta_norm_g1(tau) ** -0.25
    assert abs(values[0] / predicted - 1) < 1e-6


def test_t_invariant_genus_one_curve_and_torus_agree():
    curve = HyperellipticCurve([0, 1, -1])
    a = t_invariant(curve, seed=3).value
    b = t_invariant(EllipticTorus(1j), seed=4).value
    assert abs(a / b - 1) < 1e-8


def test_t_invariant_genus_two_point_independence():
    curve = HyperellipticCurve([0, 1, -1, 1j, -1j])
    values = t_invariant_samples(curve, range(4))
    assert (max(values) - min(values)) / np.mean(values) < 1e-4


def test_t_invariant_explicit_sample_and_resampling():
    torus = EllipticTorus(1j)
    # P on the theta divisor forces a redraw
    res = t_invariant(torus, seed=0, sample=[np.array([0.0]), np.array([0.0])])
    assert res.resamples >= 1
    res2 = t_invariant(torus, sample=[np.array([0.21 + 0.13j]), np.array([0.7 + 0.4j])])
    assert res2.resamples == 0 and abs(res2.value / res.value - 1) < 1e-8


def test_t_invariant_rejects_genus_three():
    with pytest.raises(NotImplementedError):
        t_invariant(HyperellipticCurve(CURVES["septic_g3"]))
