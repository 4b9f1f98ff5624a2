"""Riemann theta functions with rigorous truncation, and the norms built from them.

Every lattice sum is evaluated at a point reduced into the fundamental cell,
where the summand ``exp(pi i n.tau.n + 2 pi i n.z)`` times the normalization
``exp(-pi y.Y^-1.y)`` has modulus ``exp(-pi (n+c).Y.(n+c))`` with ``c = Y^-1 y``.
Truncating to a box that contains the ellipsoid ``(n+c).Y.(n+c) < R^2`` leaves a
tail bounded by::

    sum_{Q >= R^2} exp(-pi Q) <= exp(-pi R^2 / 2) * (1 + sqrt(2 / lambda_min))^g

(split ``exp(-pi Q)`` in two halves and bound the lattice sum of one half by a
product of one-dimensional Gaussian sums).  ``tol`` therefore controls the error
of the *normalized* quantities ``(det Y)^(1/4) exp(-pi y.Y^-1.y) theta(z)``,
which is what the norms use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "PeriodMatrix", "theta", "theta_gradient", "theta_norm", "j_norm",
    "theta_tail_bound", "odd_half_periods", "petersson_delta_norm_g1",
    "bost_integral", "BostEstimate", "norm_constant", "log_norm_constant",
    "reduce_tau_g1",
]

MAX_LATTICE_POINTS = 2_000_000
MAX_RADIUS = 40.0


@dataclass(frozen=True)
class PeriodMatrix:
    """A point of the Siegel upper half space with cached real-linear data."""

    tau: np.ndarray
    eps: float = 1e-8
    Y: np.ndarray = field(init=False, repr=False)
    Yinv: np.ndarray = field(init=False, repr=False)
    lam_min: float = field(init=False, repr=False)

    def __post_init__(self):
        tau = np.atleast_2d(np.asarray(self.tau, dtype=complex))
        if tau.shape[0] != tau.shape[1]:
            raise ValueError("period matrix must be square")
        if np.max(np.abs(tau - tau.T)) > self.eps:
            raise ValueError("period matrix is not symmetric")
        tau = (tau + tau.T) / 2
        Y = tau.imag.copy()
        try:
            np.linalg.cholesky(Y)
        except np.linalg.LinAlgError:
            raise ValueError("imaginary part is not positive definite") from None
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Yinv", np.linalg.inv(Y))
        object.__setattr__(self, "lam_min", float(np.linalg.eigvalsh(Y)[0]))

    @property
    def g(self) -> int:
        return self.tau.shape[0]

    @property
    def det_Y(self) -> float:
        return float(np.linalg.det(self.Y))


def _as_period_matrix(tau) -> PeriodMatrix:
    return tau if isinstance(tau, PeriodMatrix) else PeriodMatrix(np.asarray(tau, dtype=complex))


def _as_points(z, g):
    Z = np.asarray(z, dtype=complex)
    if Z.ndim == 0:
        Z = Z.reshape(1, 1)
    elif Z.ndim == 1:
        Z = Z.reshape(1, g) if Z.shape[0] == g else Z.reshape(-1, 1)
    if Z.shape[1] != g:
        raise ValueError(f"points must have {g} coordinates")
    return Z


def _is_single(z, g) -> bool:
    nd = np.ndim(z)
    return nd == 0 or (nd == 1 and np.shape(z)[0] == g)


def theta_tail_bound(pm: PeriodMatrix, R: float, c_norm: float, gradient: bool = False) -> float:
    """Bound on the truncation error of the normalized sum (and of its gradient)."""
    base = pm.det_Y ** 0.25 * math.exp(-math.pi * R * R / 2) * (1 + math.sqrt(2 / pm.lam_min)) ** pm.g
    if not gradient:
        return base
    # sqrt(Q) exp(-pi Q / 2) decreases for Q >= 1/pi, and |n_k| <= sqrt(Q / lambda) + |c|
    return max(base, 2 * math.pi * (max(R, 1 / math.sqrt(math.pi)) / math.sqrt(pm.lam_min) + c_norm) * base)


def _radius(pm: PeriodMatrix, tol: float, c_norm: float, gradient: bool) -> float:
    if tol <= 0:
        raise ValueError("tol must be positive")
    R = 1.0
    while theta_tail_bound(pm, R, c_norm, gradient) > tol:
        R += 0.25
        if R > MAX_RADIUS:
            raise ConvergenceError(f"tolerance {tol} unreachable for this period matrix")
    return R


def _reduce(pm: PeriodMatrix, Z):
    """Write ``z = z_r + m' + tau m`` with ``c = Y^-1 Im z_r`` in ``[-1/2, 1/2]^g``."""
    m = np.rint(Z.imag @ pm.Yinv.T)
    Zr = Z - m @ pm.tau.T
    Zr = Zr - np.rint(Zr.real)
    return Zr, m


def _lattice_box(pm: PeriodMatrix, R: float):
    half = R * np.sqrt(np.diag(pm.Yinv))
    ranges = [np.arange(-math.ceil(h + 0.5), math.ceil(h + 0.5) + 1) for h in half]
    size = math.prod(len(r) for r in ranges)
    if size > MAX_LATTICE_POINTS:
        raise ConvergenceError(f"lattice box of {size} points exceeds the configured maximum")
    grid = np.array(list(product(*ranges)), dtype=float)
    return grid.reshape(-1, pm.g)


def _normalized_sums(pm: PeriodMatrix, Z, tol: float, gradient: bool = False, chunk: int = 4096):
    """``exp(-pi y_r.Y^-1.y_r) theta(z_r)`` (and gradient) at reduced points ``z_r``.

    Returns ``(values, gradients or None, m)`` where ``m`` is the tau-shift used.
    """
    Zr, m = _reduce(pm, Z)
    R = _radius(pm, tol, math.sqrt(pm.g) / 2, gradient)
    N = _lattice_box(pm, R)
    quad = np.einsum("li,ij,lj->l", N, pm.tau, N)
    vals = np.empty(len(Zr), dtype=complex)
    grads = np.empty((len(Zr), pm.g), dtype=complex) if gradient else None
    for start in range(0, len(Zr), chunk):
        zc = Zr[start:start + chunk]
        yc = zc.imag
        norm = np.einsum("pi,ij,pj->p", yc, pm.Yinv, yc)
        expo = 1j * math.pi * quad[None, :] + 2j * math.pi * (zc @ N.T) - math.pi * norm[:, None]
        terms = np.exp(expo)
        vals[start:start + chunk] = terms.sum(axis=1)
        if gradient:
            grads[start:start + chunk] = 2j * math.pi * (terms @ N)
    return vals, grads, m


def theta(z, tau, tol: float = 1e-12):
    """``theta(z; tau) = sum_n exp(pi i n.tau.n + 2 pi i n.z)``.

    Accepts a single point (length-g vector, or scalar when g = 1) or an array
    of points, one per row.  The absolute error is at most
    ``tol * exp(pi y.Y^-1.y) / (det Y)^(1/4)``.
    """
    pm = _as_period_matrix(tau)
    Z = _as_points(z, pm.g)
    vals, _, m = _normalized_sums(pm, Z, tol)
    Zr, _ = _reduce(pm, Z)
    # theta(z_r + tau m) = exp(-pi i m.tau.m - 2 pi i m.z_r) theta(z_r)
    shift = -1j * math.pi * np.einsum("pi,ij,pj->p", m, pm.tau, m) - 2j * math.pi * np.sum(m * Zr, axis=1)
    norm = np.einsum("pi,ij,pj->p", Zr.imag, pm.Yinv, Zr.imag)
    out = vals * np.exp(shift + math.pi * norm)
    return out[0] if _is_single(z, pm.g) else out


def theta_gradient(z, tau, tol: float = 1e-12):
    """The vector of partial derivatives ``d theta / d z_k`` at a single point."""
    pm = _as_period_matrix(tau)
    Z = _as_points(z, pm.g)
    if len(Z) != 1:
        raise ValueError("theta_gradient takes a single point")
    vals, grads, m = _normalized_sums(pm, Z, tol, gradient=True)
    Zr, _ = _reduce(pm, Z)
    shift = -1j * math.pi * (m[0] @ pm.tau @ m[0]) - 2j * math.pi * (m[0] @ Zr[0])
    scale = np.exp(shift + math.pi * (Zr[0].imag @ pm.Yinv @ Zr[0].imag))
    return scale * (grads[0] - 2j * math.pi * m[0] * vals[0])


def theta_norm(z, tau, tol: float = 1e-12):
    """``(det Y)^(1/4) exp(-pi y.Y^-1.y) |theta(z; tau)|``; lattice invariant."""
    pm = _as_period_matrix(tau)
    Z = _as_points(z, pm.g)
    vals, _, _ = _normalized_sums(pm, Z, tol)
    out = pm.det_Y ** 0.25 * np.abs(vals)
    return float(out[0]) if _is_single(z, pm.g) else out


def j_norm(ws, tau, tol: float = 1e-12) -> float:
    """``(det Y)^((g+2)/4) exp(-pi sum_k y_k.Y^-1.y_k) |det(d theta / d z_k (w_l))|``.

    Invariant under lattice translation of each ``w_l`` when ``w_l`` lies on the
    theta divisor, which is where it is used.
    """
    pm = _as_period_matrix(tau)
    W = np.array([np.atleast_1d(np.asarray(w, dtype=complex)) for w in ws])
    if W.shape != (pm.g, pm.g):
        raise ValueError(f"j_norm needs {pm.g} points of dimension {pm.g}")
    vals, grads, m = _normalized_sums(pm, W, tol, gradient=True)
    # normalized gradient at w = z_r + tau m, up to a unimodular factor per point
    cols = grads - 2j * math.pi * m * vals[:, None]
    return float(pm.det_Y ** ((pm.g + 2) / 4) * abs(np.linalg.det(cols.T)))


def odd_half_periods(tau):
    """The points ``tau a + b`` with ``a, b`` in ``{0, 1/2}^g`` and ``4 a.b`` odd, where theta vanishes."""
    pm = _as_period_matrix(tau)
    out = []
    for bits in product((0, 1), repeat=2 * pm.g):
        a = np.array(bits[:pm.g]) / 2
        b = np.array(bits[pm.g:]) / 2
        if round(4 * a @ b) % 2 == 1:
            out.append(pm.tau @ a + b)
    return out


# -- genus one ---------------------------------------------------------------

def reduce_tau_g1(tau: complex):
    """Move ``tau`` into the standard fundamental domain; returns ``(tau', (a, b, c, d))``."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10_000):
        n = round(tau.real)
        tau -= n
        a, b = a - n * c, b - n * d
        if abs(tau) < 1 - 1e-15:
            tau = -1 / tau
            a, b, c, d = -c, -d, a, b
        else:
            return tau, (a, b, c, d)
    raise ConvergenceError("fundamental domain reduction did not terminate")


def _eta_product(tau: complex, tol: float):
    q = np.exp(2j * math.pi * tau)
    out = np.exp(2j * math.pi * tau / 24)
    n = 1
    qn = q
    while True:
        out *= 1 - qn
        # the remaining factors change log|prod| by at most 2|q|^(n+1)/(1-|q|)
        if 2 * abs(qn * q) / (1 - abs(q)) < tol * 1e-3:
            return out
        n += 1
        qn *= q
        if n > 100_000:
            raise ConvergenceError("eta product did not converge")


def petersson_delta_norm_g1(tau: complex, tol: float = 1e-14, convention: str = "eta24") -> float:
    """``(Im tau)^6 |Delta(tau)|`` for the modular discriminant.

    ``convention="eta24"`` takes ``Delta = eta^24``, the normalization under
    which the genus-one T-invariant equals ``(2 pi)^-2 ||Delta||^(-1/4)``;
    ``"analytic"`` takes ``Delta = (2 pi)^12 eta^24``.
    """
    if convention not in ("eta24", "analytic"):
        raise ValueError(f"unknown convention {convention!r}")
    t, _ = reduce_tau_g1(complex(tau))
    eta = _eta_product(t, tol)
    value = t.imag ** 6 * abs(eta) ** 24
    if convention == "analytic":
        value *= (2 * math.pi) ** 12
    return float(value)


# -- averages and constants --------------------------------------------------

@dataclass(frozen=True)
class BostEstimate:
    mean: float
    stderr: float
    n_samples: int
    seed: int


def bost_integral(tau, seed: int, n_samples: int = 20_000, tol: float = 1e-12) -> BostEstimate:
    """Monte Carlo average of ``log ||theta||`` over the torus ``C^g / (Z^g + tau Z^g)``.

    Points ``u + tau v`` with ``u, v`` uniform in ``[0, 1)^g`` are Haar distributed.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    pm = _as_period_matrix(tau)
    rng = np.random.default_rng(seed)
    u = rng.random((n_samples, pm.g))
    v = rng.random((n_samples, pm.g))
    Z = u + v @ pm.tau.T
    vals, _, _ = _normalized_sums(pm, Z, tol)
    logs = math.log(pm.det_Y) / 4 + np.log(np.abs(vals))
    stderr = float(np.std(logs, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else math.inf
    return BostEstimate(float(np.mean(logs)), stderr, n_samples, seed)


def log_norm_constant(g: int, T: float) -> float:
    """``log((2 pi)^(-4g(2g-1)(g+1)) T^(8g^2))``."""
    if T <= 0:
        raise ValueError("T must be positive")
    return -4 * g * (2 * g - 1) * (g + 1) * math.log(2 * math.pi) + 8 * g * g * math.log(T)


def norm_constant(g: int, T: float) -> float:
    """``(2 pi)^(-4g(2g-1)(g+1)) T^(8g^2)``; may underflow, see :func:`log_norm_constant`."""
    return math.exp(log_norm_constant(g, T))
