"""
The Faltings height ledger
==========================

A genus 2 curve over Q with one place of bad reduction.  Local terms are
exact rationals times log #kappa; the archimedean term comes from log T.
"""
import math
from fractions import Fraction

from weierstrass_invariants.heights import (ArchLedgerEntry, GlobalHeightInput, LocalLedgerEntry, compare_bounds,
                                            deg_lambda, faltings_lower_bound, slope_constant)
from weierstrass_invariants.periods import HyperellipticCurve, t_invariant
from weierstrass_invariants.theta import bost_integral

curve = HyperellipticCurve([0, 1, -1, 1j, -1j])
log_T = t_invariant(curve).log_value

ledger = GlobalHeightInput(
    g=2, degree_K=1,
    nt_heights=(0.0,) * 6,
    local=(LocalLedgerEntry("5", math.log(5), ord_delta=3, sum_phi_sq=Fraction(-10), e_omega_degree=Fraction(2)),),
    arch=(ArchLedgerEntry("real", log_T),),
)
out = deg_lambda(ledger)
print("deg lambda =", out.deg_lambda, " exact local coefficients:", out.exact_local)
print("lower bound:", faltings_lower_bound(2, 1, [log_T]))
print("slope constant:", slope_constant(2), float(slope_constant(2)))

est = bost_integral(curve.period_matrix, seed=1, n_samples=5000)
print(compare_bounds(2, 1, [log_T], [est.mean], [est.stderr]))
