"""
Period matrices and the T-invariant
===================================

Period matrices of hyperelliptic curves from their branch points, and the
T-invariant evaluated at several random point choices.
"""
import math

import numpy as np

from weierstrass_invariants.periods import EllipticTorus, HyperellipticCurve, t_invariant_samples
from weierstrass_invariants.theta import petersson_delta_norm_g1, theta_norm

lemniscate = HyperellipticCurve([0, 1, -1])
print("y^2 = x^3 - x:  tau =", lemniscate.period_matrix.tau[0, 0])

curve = HyperellipticCurve([0, 1, -1, 1j, -1j])
print("y^2 = x^5 - x:\n", np.round(curve.period_matrix.tau, 10))

kappa = curve.riemann_constant
for w in curve.branch_point_images():
    print("  ||theta|| at a branch point image:", f"{theta_norm(w + kappa, curve.period_matrix):.1e}")

values = t_invariant_samples(curve, range(5))
print("T over five samples:", values)

for tau in (1j, (1 + 1j * math.sqrt(3)) / 2, 2j):
    T = t_invariant_samples(EllipticTorus(tau), [0])[0]
    print(f"g=1 tau={tau:.3f}: T={T:.12f}  (2 pi)^-2 ||Delta||^(-1/4)="
          f"{(2 * math.pi) ** -2 * petersson_delta_norm_g1(tau) ** -0.25:.12f}")
