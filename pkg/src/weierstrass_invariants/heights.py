"""Bookkeeping for the closed formula for deg(lambda) and the bounds derived from it.

Local contributions are exact rationals multiplying ``log #kappa(s)``; the
archimedean ones are floats.  Everything is summed in floating point only at
the end, together with a rounding estimate.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import as_fraction

__all__ = [
    "LocalLedgerEntry", "ArchLedgerEntry", "GlobalHeightInput", "DegLambda",
    "deg_lambda", "faltings_lower_bound", "bost_bound", "slope_constant",
    "noether_coefficients", "compare_bounds",
]


def noether_coefficients(g: int) -> dict:
    """The integer constants of the formula, computed from ``g``."""
    return {
        "lhs": (3 * g - 1) * (8 * g + 4),
        "delta": (2 * g - 1) * (g + 1),
        "two_pi": 4 * g * (2 * g - 1) * (g + 1),
        "log_t": 8 * g * g,
        "xi_delta": (4 * g - 2) * (g + 1),
    }


def slope_constant(g: int) -> Fraction:
    """``(3g-1)(8g+4) / ((2g-1)(g+1))``."""
    if g < 2:
        raise ValueError("the slope constant is defined for g >= 2")
    c = noether_coefficients(g)
    return Fraction(c["lhs"], c["delta"])


@dataclass(frozen=True)
class LocalLedgerEntry:
    """Data at one closed point ``s``; ``sum_phi_sq`` runs over the Weierstrass divisor with multiplicity."""

    place: str
    log_residue_size: float
    ord_delta: int = 0
    sum_phi_sq: Fraction = Fraction(0)
    e_omega_degree: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "sum_phi_sq", as_fraction(self.sum_phi_sq))
        object.__setattr__(self, "e_omega_degree", as_fraction(self.e_omega_degree))
        if self.log_residue_size <= 0:
            raise ValueError("log #kappa(s) must be positive")
        if self.ord_delta < 0:
            raise ValueError("ord Delta must be non-negative")
        if self.sum_phi_sq > 0:
            raise ValueError("sum of Phi_P^2 must be non-positive")
        if self.e_omega_degree < 0:
            raise ValueError("deg omega|_E must be non-negative")


@dataclass(frozen=True)
class ArchLedgerEntry:
    embedding: str
    log_T: float

    def __post_init__(self):
        if not math.isfinite(self.log_T):
            raise ValueError("log T must be finite")


@dataclass(frozen=True)
class GlobalHeightInput:
    g: int
    degree_K: int
    nt_heights: tuple = ()
    local: tuple = ()
    arch: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nt_heights", tuple(float(h) for h in self.nt_heights))
        object.__setattr__(self, "local", tuple(self.local))
        object.__setattr__(self, "arch", tuple(self.arch))
        if self.g < 2:
            raise ValueError("the closed formula needs g >= 2")
        if self.degree_K < 1:
            raise ValueError("[K:Q] must be positive")
        if len(self.arch) != self.degree_K:
            raise ValueError(f"expected {self.degree_K} archimedean entries, got {len(self.arch)}")
        if any(h < 0 for h in self.nt_heights):
            raise ValueError("Neron-Tate heights are non-negative")
        n_w = self.g ** 3 - self.g
        if self.nt_heights and len(self.nt_heights) != n_w:
            raise ValueError(f"expected {n_w} heights (the Weierstrass divisor with multiplicity)")


@dataclass(frozen=True)
class DegLambda:
    """The right-hand side of the formula, term by term."""

    g: int
    degree_K: int
    heights_term: float
    phi_term: float
    delta_term: float
    e_term: float
    two_pi_term: float
    log_t_term: float
    combination: float
    deg_lambda: float
    rounding_bound: float
    exact_local: dict = field(default_factory=dict)

    @property
    def faltings_height(self) -> float:
        return self.deg_lambda / self.degree_K

    @property
    def non_archimedean_part(self) -> float:
        return (self.heights_term + self.phi_term + self.delta_term + self.e_term) / noether_coefficients(self.g)["lhs"]


def deg_lambda(data: GlobalHeightInput) -> DegLambda:
    g, K = data.g, data.degree_K
    c = noether_coefficients(g)
    gg = g * (g - 1)
    heights_term = 2 * K / gg * math.fsum(data.nt_heights)
    # exact coefficients of each log #kappa(s)
    exact = {}
    phi_term = delta_term = e_term = 0.0
    for entry in data.local:
        phi = -entry.sum_phi_sq / gg
        delta = Fraction(c["delta"] * entry.ord_delta)
        e = 4 * entry.e_omega_degree
        exact[entry.place] = {"phi": phi, "delta": delta, "E": e}
        phi_term += float(phi) * entry.log_residue_size
        delta_term += float(delta) * entry.log_residue_size
        e_term += float(e) * entry.log_residue_size
    two_pi_term = -c["two_pi"] * K * math.log(2 * math.pi)
    log_t_term = c["log_t"] * math.fsum(a.log_T for a in data.arch)
    terms = [heights_term, phi_term, delta_term, e_term, two_pi_term, log_t_term]
    combination = math.fsum(terms)
    rounding = 8 * sys.float_info.epsilon * math.fsum(abs(t) for t in terms)
    return DegLambda(g, K, heights_term, phi_term, delta_term, e_term, two_pi_term, log_t_term,
                     combination, combination / c["lhs"], rounding / c["lhs"], exact)


def faltings_lower_bound(g: int, degree_K: int, log_T) -> float:
    """``[-4g(2g-1)(g+1) log(2 pi) + 8g^2 (1/[K:Q]) sum log T] / ((3g-1)(8g+4))``; valid for g >= 1."""
    if g < 1:
        raise ValueError("g must be at least 1")
    log_T = [float(t) for t in log_T]
    if len(log_T) != degree_K:
        raise ValueError(f"expected {degree_K} values of log T")
    c = noether_coefficients(g)
    return (-c["two_pi"] * math.log(2 * math.pi) + c["log_t"] * math.fsum(log_T) / degree_K) / c["lhs"]


def bost_bound(g: int, degree_K: int, integrals, stderrs=None):
    """``-g log(2 pi) - (2/[K:Q]) sum_sigma int log ||theta||``, with the propagated standard error."""
    integrals = [float(x) for x in integrals]
    if len(integrals) != degree_K:
        raise ValueError(f"expected {degree_K} integrals")
    value = -g * math.log(2 * math.pi) - 2 / degree_K * math.fsum(integrals)
    if stderrs is None:
        return value, 0.0
    return value, 2 / degree_K * math.sqrt(math.fsum(s * s for s in stderrs))


def compare_bounds(g: int, degree_K: int, log_T, integrals, stderrs=None) -> dict:
    """Both lower bounds for the Faltings height, side by side."""
    faltings = faltings_lower_bound(g, degree_K, log_T)
    bost, bost_err = bost_bound(g, degree_K, integrals, stderrs)
    return {
        "g": g,
        "degree_K": degree_K,
        "faltings_lower_bound": faltings,
        "bost_bound": bost,
        "bost_stderr": bost_err,
        "difference": faltings - bost,
    }
