"""Period matrices, Abel-Jacobi maps and the T-invariant of hyperelliptic Riemann surfaces.

Curves are handled in an even-degree model ``y^2 = prod_j (x - e_j)`` with
``2g + 2`` finite branch points.  An odd-degree input (infinity is a branch
point) is moved there by ``x = c + 1/u``, which changes the holomorphic
differentials by an invertible linear map and so changes neither the period
matrix nor the normalized Abel-Jacobi map.

Homology basis.  The branch points are sorted by real then imaginary part and
joined into a chain.  The cycle ``c_j`` runs around the segment
``[e_j, e_{j+1}]``; with the parametrization ``x = m + h cos(theta)`` the period
of ``x^k dx / y`` becomes the smooth periodic integral
``int_0^{2 pi} i x^k / s(x) d theta`` with ``s = sqrt(prod_{l != j, j+1}(x - e_l))``
continued along the segment, which Gauss-Chebyshev quadrature integrates
spectrally.  After orienting the chain so that ``c_j . c_{j+1} = 1``,
``a_k = c_{2k}`` and ``b_k = c_{2k+1} + c_{2k+3} + ... + c_{2g-1}`` is symplectic.
The orientations are not computed from local intersection signs: each of the
``2^(2g-1)`` choices is tried and the one giving a symmetric period matrix with
positive definite imaginary part is kept.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import ConvergenceError
from .theta import PeriodMatrix, _as_period_matrix, j_norm, theta_norm

__all__ = [
    "HyperellipticCurve", "EllipticTorus", "period_matrix_hyperelliptic",
    "TInvariantResult", "t_invariant", "t_invariant_samples", "degree_g_minus_1_image",
]

NEAR_THETA = 1e-8
MAX_RESAMPLES = 50


def _continue_sqrt(values):
    """Square roots of ``values`` chosen to vary continuously along the sequence."""
    roots = np.sqrt(values.astype(complex))
    for i in range(1, len(roots)):
        if abs(roots[i] - roots[i - 1]) > abs(roots[i] + roots[i - 1]):
            roots[i] = -roots[i]
    return roots


def _segment_distance(p, a, b):
    d = b - a
    t = ((p - a) * np.conj(d)).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d)), t


class HyperellipticCurve:
    """The compact Riemann surface of ``y^2 = prod (x - e_j)`` (odd count: infinity also branches)."""

    def __init__(self, branch_points, tol: float = 1e-11):
        pts = [complex(e) for e in branch_points]
        n = len(pts)
        if n < 3:
            raise ValueError("need at least three branch points")
        if min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:]) < 1e-12:
            raise ValueError("branch points must be distinct")
        self.input_branch_points = tuple(pts)
        self.g = (n - 1) // 2
        self.tol = tol
        if n % 2:
            # move infinity to a finite place: u = 1/(x - c)
            self._c = math.floor(min(e.real for e in pts)) - 1.0
            d = np.array([e - self._c for e in pts])
            self._scale = np.sqrt(np.prod(-d))
            internal = [0j] + [1 / x for x in d]
        else:
            self._c = None
            self._scale = 1.0
            internal = pts
        self.branch_points = tuple(sorted(internal, key=lambda z: (round(z.real, 12), z.imag)))
        self._e = np.array(self.branch_points)
        self._spread = max(abs(a - b) for a in self._e for b in self._e)
        self._check_chain()
        self._periods = self._cycle_periods()
        self._Omega_A, self._Omega_B, self.signs = self._symplectic_periods()
        self.period_matrix = PeriodMatrix(np.linalg.solve(self._Omega_A, self._Omega_B), eps=1e-6)
        self._nu = np.linalg.inv(self._Omega_A)
        self._riemann = None

    # -- coordinates -------------------------------------------------------

    def to_internal(self, x, y):
        """Map a point of the input model to the even model used internally."""
        if self._c is None:
            return complex(x), complex(y)
        if x == "inf":
            return 0j, 0j
        u = 1 / (complex(x) - self._c)
        return u, complex(y) * u ** (self.g + 1) / self._scale

    def y_squared(self, x):
        return np.prod(np.subtract.outer(np.atleast_1d(x), self._e), axis=-1)

    # -- periods -------------------------------------------------------------

    def _check_chain(self):
        e = self._e
        for j in range(len(e) - 1):
            for l, p in enumerate(e):
                if l in (j, j + 1):
                    continue
                dist, _ = _segment_distance(p, e[j], e[j + 1])
                if dist < 1e-3 * self._spread:
                    raise ValueError("branch point too close to the chain of cycles; perturb the input")

    def _cycle_integrals(self, j, N):
        e = self._e
        m, h = (e[j] + e[j + 1]) / 2, (e[j + 1] - e[j]) / 2
        theta = (np.arange(N) + 0.5) * math.pi / N
        x = m + h * np.cos(theta)
        others = np.delete(e, [j, j + 1])
        s = _continue_sqrt(np.prod(np.subtract.outer(x, others), axis=1))
        powers = np.vstack([x ** k for k in range(self.g)])
        return 2 * (math.pi / N) * (1j * powers / s).sum(axis=1)

    def _cycle_periods(self):
        """``C[k, j]`` is the period of ``x^k dx / y`` over ``c_j``, for every chain segment."""
        N = 64
        prev = None
        while N <= 1 << 17:
            cur = np.column_stack([self._cycle_integrals(j, N) for j in range(len(self._e) - 1)])
            if prev is not None and np.max(np.abs(cur - prev)) <= self.tol * max(1.0, np.max(np.abs(cur))):
                return cur
            prev, N = cur, 2 * N
        raise ConvergenceError("cycle quadrature did not converge")

    def _symplectic_periods(self):
        g = self.g
        C = self._periods[:, :2 * g]
        best = None
        for tail in product((1, -1), repeat=2 * g - 1):
            signs = np.array((1,) + tail)
            Cs = C * signs
            A = Cs[:, 0::2]
            B = np.column_stack([Cs[:, 2 * k + 1::2].sum(axis=1) for k in range(g)])
            tau = np.linalg.solve(A, B)
            asym = np.max(np.abs(tau - tau.T)) / max(1.0, np.max(np.abs(tau)))
            if asym > 1e-6:
                continue
            if np.linalg.eigvalsh((tau.imag + tau.imag.T) / 2)[0] <= 0:
                continue
            if best is None or asym < best[0]:
                best = (asym, A, B, signs)
        if best is None:
            raise ConvergenceError("no orientation of the chain gives a valid period matrix")
        return best[1], best[2], tuple(int(s) for s in best[3])

    # -- Abel-Jacobi ---------------------------------------------------------

    def _path(self, target):
        """Polyline from ``e_0`` to ``target`` keeping away from the other branch points."""
        e = self._e
        delta = 0.05 * self._spread
        path = [e[0], complex(target)]
        for _ in range(64):
            changed = False
            for i in range(len(path) - 1):
                a, b = path[i], path[i + 1]
                for p in e[1:]:
                    if abs(p - b) < 1e-14 or abs(p - a) < 1e-14:
                        continue
                    dist, t = _segment_distance(p, a, b)
                    if dist < delta and 0 < t < 1:
                        d = (b - a) / abs(b - a)
                        side = np.sign(((p - a) * np.conj(d)).imag) or 1.0
                        path.insert(i + 1, p - side * 1j * d * 2 * delta)
                        changed = True
                        break
                if changed:
                    break
            if not changed:
                return path
        raise ConvergenceError("could not route an integration path around the branch points")

    def _path_integral(self, path, panels):
        nodes, weights = np.polynomial.legendre.leggauss(16)
        v_nodes, v_weights = [], []
        for p in range(panels):
            v_nodes.append((nodes + 1) / 2 / panels + p / panels)
            v_weights.append(weights / 2 / panels)
        v = np.concatenate(v_nodes)
        w = np.concatenate(v_weights)
        # s = (1 - cos(pi v)) / 2 clusters nodes at both ends and cancels square-root singularities
        s = (1 - np.cos(math.pi * v)) / 2
        ds = math.pi / 2 * np.sin(math.pi * v)
        xs, dxs, ws = [], [], []
        for a, b in zip(path[:-1], path[1:]):
            xs.append(a + (b - a) * s)
            dxs.append((b - a) * ds)
            ws.append(w)
        x = np.concatenate(xs)
        dx = np.concatenate(dxs)
        wt = np.concatenate(ws)
        y = _continue_sqrt(self.y_squared(x))
        powers = np.vstack([x ** k for k in range(self.g)])
        return (powers * (wt * dx / y)).sum(axis=1), y[-1]

    def abel_jacobi_internal(self, x, y):
        """Normalized Abel-Jacobi image of ``(x, y)`` in the internal model, based at ``e_0``."""
        x, y = complex(x), complex(y)
        for k, e in enumerate(self._e):
            if abs(x - e) < 1e-14:
                return self.branch_point_images()[k]
        path = self._path(x)
        panels = 4
        prev = None
        while panels <= 4096:
            val, y_end = self._path_integral(path, panels)
            if prev is not None and np.max(np.abs(val - prev)) <= self.tol * max(1.0, np.max(np.abs(val))):
                break
            prev, panels = val, panels * 2
        else:
            raise ConvergenceError("Abel-Jacobi quadrature did not converge")
        if abs(y_end + y) < abs(y_end - y):
            val = -val
        return self._nu @ val

    def abel_jacobi(self, x, y=None):
        """Abel-Jacobi image of a point ``(x, y)`` of the input model (``x = "inf"`` allowed)."""
        if y is None:
            y = 0j if x == "inf" else complex(np.sqrt(complex(np.prod([complex(x) - e for e in self.input_branch_points]))))
        return self.abel_jacobi_internal(*self.to_internal(x, y))

    def branch_point_images(self):
        """Images of the sorted internal branch points: half sums of chain periods."""
        out = []
        acc = np.zeros(self.g, dtype=complex)
        for k in range(len(self._e)):
            out.append(self._nu @ acc / 2)
            if k < len(self._e) - 1:
                acc = acc + self._periods[:, k]
        return out

    # -- theta divisor ---------------------------------------------------------

    @property
    def riemann_constant(self):
        """The half-period ``kappa`` with ``Theta = AJ(effective degree g-1) + kappa``.

        Chosen among the ``2^(2g)`` half-periods by making theta vanish at the
        images of ``(g-1) e_k`` for every branch point and of a fixed generic point.
        """
        if self._riemann is None:
            pm = self.period_matrix
            g = self.g
            tests = [(g - 1) * w for w in self.branch_point_images()]
            if g >= 2:
                x0 = complex(np.mean(self._e)) + 0.37 * self._spread * (1 + 0.5j)
                y0 = complex(np.sqrt(self.y_squared(x0)[0]))
                tests.append(self.abel_jacobi_internal(x0, y0) + (g - 2) * self.branch_point_images()[0])
            best = None
            for bits in product((0, 1), repeat=2 * g):
                kappa = pm.tau @ (np.array(bits[:g]) / 2) + np.array(bits[g:]) / 2
                worst = max(theta_norm(t + kappa, pm) for t in tests)
                if best is None or worst < best[0]:
                    best = (worst, kappa)
            if best[0] > 1e-6:
                raise ConvergenceError(f"no half-period puts the branch-point images on Theta (residual {best[0]:.2e})")
            self._riemann = best[1]
            self.riemann_residual = best[0]
        return self._riemann

    def weierstrass_images(self):
        """Abel-Jacobi images of the Weierstrass divisor, repeated by multiplicity."""
        if self.g == 1:
            return []
        if self.g == 2:
            return list(self.branch_point_images())
        raise NotImplementedError("Weierstrass multiplicities in the T-invariant are only settled for g <= 2")

    def random_points(self, rng, n):
        """Abel-Jacobi images of ``n`` random points kept away from the branch points."""
        e = self._e
        centre = e.mean()
        out = []
        while len(out) < n:
            x = centre + self._spread * complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
            if np.min(np.abs(e - x)) < 0.1 * self._spread:
                continue
            y = complex(np.sqrt(self.y_squared(x)[0])) * (1 if rng.random() < 0.5 else -1)
            out.append(self.abel_jacobi_internal(x, y))
        return out


class EllipticTorus:
    """``C / (Z + tau Z)`` with the identity as Abel-Jacobi map."""

    g = 1

    def __init__(self, tau: complex):
        self.period_matrix = _as_period_matrix(np.array([[complex(tau)]]))
        self.riemann_constant = np.array([(1 + complex(tau)) / 2])

    def weierstrass_images(self):
        return []

    def random_points(self, rng, n):
        t = self.period_matrix.tau[0, 0]
        return [np.array([rng.random() + t * rng.random()]) for _ in range(n)]


def period_matrix_hyperelliptic(branch_points, tol: float = 1e-11) -> PeriodMatrix:
    return HyperellipticCurve(branch_points, tol).period_matrix


def degree_g_minus_1_image(curve, coefficients_and_images):
    """``sum n_i AJ(P_i) + kappa`` for a degree ``g - 1`` divisor ``sum n_i P_i``."""
    total = sum(n for n, _ in coefficients_and_images)
    if total != curve.g - 1:
        raise ValueError(f"divisor has degree {total}, expected {curve.g - 1}")
    acc = np.array(curve.riemann_constant, dtype=complex)
    for n, w in coefficients_and_images:
        acc = acc + n * np.asarray(w)
    return acc


@dataclass(frozen=True)
class TInvariantResult:
    value: float
    log_value: float
    resamples: int


def _log_t(curve, P, Q, tol):
    g = curve.g
    pm = curve.period_matrix
    img = lambda pairs: degree_g_minus_1_image(curve, pairs)  # noqa: E731
    logs = []

    def log_theta(pairs):
        val = theta_norm(img(pairs), pm, tol)
        logs.append(val)
        return math.log(val) if val > 0 else -math.inf

    total = 0.0
    first = log_theta([(1, p) for p in P] + [(-1, Q)])
    denom = sum(log_theta([(g, p), (-1, Q)]) for p in P) / g
    total += (2 * g - 2) * (first - denom)
    for k, l in product(range(g), repeat=2):
        if k != l:
            total += log_theta([(g, P[k]), (-1, P[l])]) / g
    ws = [img([(1, P[l]) for l in range(g) if l != k]) for k in range(g)]
    jn = j_norm(ws, pm, tol)
    logs.append(jn)
    total -= 2 * math.log(jn) if jn > 0 else -math.inf
    for R in curve.weierstrass_images():
        for k in range(g):
            total += (g - 1) / g ** 4 * log_theta([(g, P[k]), (-1, R)])
    return total, min(logs)


def t_invariant(curve, seed: int = 0, tol: float = 1e-12, sample=None) -> TInvariantResult:
    """Evaluate the T-invariant from ``g + 1`` points ``P_1, ..., P_g, Q``.

    ``sample`` may give the Abel-Jacobi images ``[P_1, ..., P_g, Q]`` directly;
    otherwise they are drawn from ``numpy.random.default_rng(seed)``.  Samples
    where some norm falls below ``1e-8`` are redrawn, at most 50 times.
    """
    rng = np.random.default_rng(seed)
    g = curve.g
    for attempt in range(MAX_RESAMPLES + 1):
        pts = sample if (sample is not None and attempt == 0) else curve.random_points(rng, g + 1)
        pts = [np.atleast_1d(np.asarray(p, dtype=complex)) for p in pts]
        log_t, smallest = _log_t(curve, pts[:g], pts[g], tol)
        if smallest >= NEAR_THETA and math.isfinite(log_t):
            return TInvariantResult(math.exp(log_t), log_t, attempt)
    raise ConvergenceError("every sample came too close to the theta divisor")


def t_invariant_samples(curve, seeds, tol: float = 1e-12):
    return [t_invariant(curve, seed=s, tol=tol).value for s in seeds]
