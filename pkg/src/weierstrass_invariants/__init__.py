"""Local and archimedean invariants of Weierstrass points on hyperelliptic fibrations.

Exact side: cluster trees of branch points over a discrete valuation ring,
residual divisors, correction divisors on special fibers, discriminant
valuations and Hasse-derivative Wronskians.  Numerical side: theta functions,
hyperelliptic period matrices, the T-invariant and the closed height formula.
"""
from .cluster import (AssumptionReport, ClusterTree, RootConfig, build_tree, compute_e,
                      path_phi_sum, residual_divisor, validate)
from .errors import (AssumptionError, ConvergenceError, InconsistentDataError, PrecisionError,
                     WeierstrassError)
from .fiber import (Component, ComponentGraph, SectionIncidence, VerticalQDivisor, node_count,
                    omega_degree, ord_xi, pair, phi_divisor, phi_self_intersection,
                    verify_local_identity)
from .fields import GF, QQ, ModP, p_valuation
from .heights import (ArchLedgerEntry, GlobalHeightInput, LocalLedgerEntry, bost_bound,
                      deg_lambda, faltings_lower_bound, slope_constant)
from .hyperelliptic import (HyperellipticEquation, discriminant, hyperelliptic_wronskian_check,
                            ord_lambda, weierstrass_gap_order)
from .periods import EllipticTorus, HyperellipticCurve, period_matrix_hyperelliptic, t_invariant
from .series import TruncatedSeries, hasse_derivative, series_invert, series_sqrt, wronskian
from .theta import (PeriodMatrix, bost_integral, j_norm, norm_constant, petersson_delta_norm_g1,
                    theta, theta_norm)

__all__ = [
    "AssumptionReport", "ClusterTree", "RootConfig", "build_tree", "compute_e", "path_phi_sum",
    "residual_divisor", "validate", "AssumptionError", "ConvergenceError", "InconsistentDataError",
    "PrecisionError", "WeierstrassError", "Component", "ComponentGraph", "SectionIncidence",
    "VerticalQDivisor", "node_count", "omega_degree", "ord_xi", "pair", "phi_divisor",
    "phi_self_intersection", "verify_local_identity", "GF", "QQ", "ModP", "p_valuation",
    "ArchLedgerEntry", "GlobalHeightInput", "LocalLedgerEntry", "bost_bound", "deg_lambda",
    "faltings_lower_bound", "slope_constant", "HyperellipticEquation", "discriminant",
    "hyperelliptic_wronskian_check", "ord_lambda", "weierstrass_gap_order", "EllipticTorus",
    "HyperellipticCurve", "period_matrix_hyperelliptic", "t_invariant", "TruncatedSeries",
    "hasse_derivative", "series_invert", "series_sqrt", "wronskian", "PeriodMatrix",
    "bost_integral", "j_norm", "norm_constant", "petersson_delta_norm_g1", "theta", "theta_norm",
]

__version__ = "0.1.0"
