"""
Riemann theta and its norms
===========================

theta is evaluated with an explicit truncation bound.  The normalized norm
is invariant under the period lattice, and theta(0; i) has a closed form.
"""
import math

import numpy as np
from scipy.special import gamma

from weierstrass_invariants.theta import (bost_integral, j_norm, odd_half_periods, petersson_delta_norm_g1, theta,
                                          theta_norm)

print("theta(0; i) =", theta(0, [[1j]]).real, " closed form:", math.pi ** 0.25 / gamma(0.75))

tau = np.array([[1.1j, 0.3 + 0.2j], [0.3 + 0.2j, 0.9j + 0.1]])
z = np.array([0.21 + 0.1j, -0.4 + 0.3j])
shifted = z + np.array([2, -1]) + tau @ np.array([1, 3])
print("||theta|| at z and at a lattice translate:", theta_norm(z, tau), theta_norm(shifted, tau))

ws = odd_half_periods(tau)[:2]
print("||J|| at two odd half periods:", j_norm(ws, tau))

for t in (1j, (1 + 1j * math.sqrt(3)) / 2, 2j):
    print("||Delta||", t, petersson_delta_norm_g1(t))

est = bost_integral([[1j]], seed=0, n_samples=20000)
print(f"average of log||theta|| over the torus at tau = i: {est.mean:.4f} +- {est.stderr:.4f}")
