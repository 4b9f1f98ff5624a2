"""Special fibers as component graphs, and the local divisor bookkeeping on them.

A fiber is described by its components (multiplicity, genus of the
normalization, number of nodes lying on the component itself) and its
intersection matrix.  Degrees of the dualizing sheaf on components are derived
by adjunction::

    (omega, C) = 2*pa(C) - 2 - (C, C) + 2*internal_nodes(C)

where ``pa`` is the genus of the normalization of ``C``, so that
``pa + internal_nodes`` is the arithmetic genus of ``C``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentDataError
from .fields import as_fraction
from .linalg import nullspace, solve

__all__ = [
    "Component", "ComponentGraph", "SectionIncidence", "VerticalQDivisor",
    "LocalIdentity", "pair", "omega_degree", "phi_divisor",
    "phi_self_intersection", "node_count", "ord_xi", "verify_local_identity",
]


@dataclass(frozen=True)
class Component:
    name: str
    m: int = 1
    pa: int = 0
    internal_nodes: int = 0


@dataclass(frozen=True)
class SectionIncidence:
    name: str
    meets: str


@dataclass(frozen=True)
class VerticalQDivisor:
    """A Q-linear combination of fiber components, stored without zero terms."""

    coeffs: tuple = ()

    def __init__(self, coeffs=None, **kw):
        items = dict(coeffs or {})
        items.update(kw)
        clean = tuple(sorted((k, as_fraction(v)) for k, v in items.items() if as_fraction(v) != 0))
        object.__setattr__(self, "coeffs", clean)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __getitem__(self, name) -> Fraction:
        return self.as_dict().get(name, Fraction(0))

    @property
    def support(self):
        return [k for k, _ in self.coeffs]

    def __add__(self, other):
        out = self.as_dict()
        for k, v in other.coeffs:
            out[k] = out.get(k, Fraction(0)) + v
        return VerticalQDivisor(out)

    def __neg__(self):
        return VerticalQDivisor({k: -v for k, v in self.coeffs})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = as_fraction(c)
        return VerticalQDivisor({k: c * v for k, v in self.coeffs})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in self.coeffs:
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            term = k if mag == 1 else f"{mag}{k}" if mag.denominator == 1 else f"({mag}){k}"
            parts.append((sign, term))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


@dataclass(frozen=True)
class ComponentGraph:
    g: int
    components: tuple
    intersection: tuple
    omega_override: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Component) else Component(**c) for c in self.components)
        mat = tuple(tuple(int(x) for x in row) for row in self.intersection)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "intersection", mat)
        self._check()

    @property
    def names(self):
        return [c.name for c in self.components]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown component {name!r}") from None

    def component(self, name: str) -> Component:
        return self.components[self.index(name)]

    def omega(self, name: str) -> int:
        """Degree of the dualizing sheaf on a component, by adjunction."""
        i = self.index(name)
        c = self.components[i]
        return 2 * c.pa - 2 - self.intersection[i][i] + 2 * c.internal_nodes

    def fiber(self) -> VerticalQDivisor:
        return VerticalQDivisor({c.name: c.m for c in self.components})

    def divisor(self, **coeffs) -> VerticalQDivisor:
        for name in coeffs:
            self.index(name)
        return VerticalQDivisor(coeffs)

    def _check(self):
        n = len(self.components)
        M = self.intersection
        if len(set(self.names)) != n:
            raise InconsistentDataError("component names must be unique")
        if len(M) != n or any(len(row) != n for row in M):
            raise InconsistentDataError("intersection matrix has the wrong shape")
        for i in range(n):
            for j in range(n):
                if M[i][j] != M[j][i]:
                    raise InconsistentDataError("intersection matrix is not symmetric")
                if i != j and M[i][j] < 0:
                    raise InconsistentDataError("distinct components meet negatively")
        for c in self.components:
            if c.m < 1 or c.pa < 0 or c.internal_nodes < 0:
                raise InconsistentDataError(f"invalid data for component {c.name}")
        mult = [c.m for c in self.components]
        for i in range(n):
            if sum(M[i][j] * mult[j] for j in range(n)) != 0:
                raise InconsistentDataError(f"component {self.names[i]} meets the fiber nontrivially")
        omegas = [self.omega(name) for name in self.names]
        if any(w < -2 for w in omegas):
            raise InconsistentDataError("adjunction gives (omega, C) < -2")
        if sum(m * w for m, w in zip(mult, omegas)) != 2 * self.g - 2:
            raise InconsistentDataError("sum of m_C (omega, C) differs from 2g - 2")
        if self.omega_override:
            for name, w in self.omega_override.items():
                if self.omega(name) != w:
                    raise InconsistentDataError(
                        f"(omega, {name}) = {w} given, adjunction gives {self.omega(name)}")
        # connectedness of the dual graph
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j not in seen and M[i][j] > 0:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != n:
            raise InconsistentDataError("dual graph is not connected")

    def _vector(self, D: VerticalQDivisor):
        vec = [Fraction(0)] * len(self.components)
        for name, c in D.coeffs:
            vec[self.index(name)] = c
        return vec


def pair(graph: ComponentGraph, D1: VerticalQDivisor, D2: VerticalQDivisor) -> Fraction:
    x, y = graph._vector(D1), graph._vector(D2)
    M = graph.intersection
    n = len(x)
    return sum((x[i] * M[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))


def omega_degree(graph: ComponentGraph, D: VerticalQDivisor) -> Fraction:
    return sum((c * graph.omega(name) for name, c in D.coeffs), Fraction(0))


def phi_divisor(graph: ComponentGraph, P: SectionIncidence) -> VerticalQDivisor:
    """The vertical correction making ``(2g-2)P - omega + Phi`` orthogonal to every component.

    Normalized by ``(Phi, P) = 0``, i.e. a zero coefficient on the component met by ``P``.
    """
    k = graph.index(P.meets)
    if graph.components[k].m != 1:
        raise InconsistentDataError(f"section {P.name} meets a non-reduced component")
    n = len(graph.components)
    names = graph.names
    b = [Fraction(graph.omega(c)) - (2 * graph.g - 2) * (i == k) for i, c in enumerate(names)]
    mult = [c.m for c in graph.components]
    if sum(m * bi for m, bi in zip(mult, b)) != 0:
        raise InconsistentDataError("right-hand side is not orthogonal to the fiber")
    M = [list(row) for row in graph.intersection]
    if len(nullspace(M)) != 1:
        raise InconsistentDataError("intersection matrix kernel is not spanned by the fiber")
    x = solve(M, b)
    shift = x[k] / mult[k]
    x = [xi - shift * m for xi, m in zip(x, mult)]
    for i in range(n):
        if sum(M[i][j] * x[j] for j in range(n)) != b[i]:
            raise InconsistentDataError("solution failed re-substitution")
    return VerticalQDivisor(dict(zip(names, x)))


def phi_self_intersection(graph: ComponentGraph, P: SectionIncidence) -> Fraction:
    phi = phi_divisor(graph, P)
    sq = pair(graph, phi, phi)
    if sq > 0:
        raise InconsistentDataError(f"Phi^2 = {sq} > 0 violates negative semidefiniteness")
    return sq


def node_count(graph: ComponentGraph) -> int:
    """Number of nodes of the geometric fiber, i.e. the order of the discriminant."""
    M = graph.intersection
    n = len(M)
    return (sum(M[i][j] for i in range(n) for j in range(i + 1, n))
            + sum(c.internal_nodes for c in graph.components))


def _check_sections(graph, sections):
    if len(sections) != 2 * graph.g + 2:
        raise ValueError(f"expected {2 * graph.g + 2} Weierstrass sections, got {len(sections)}")


def ord_xi(graph: ComponentGraph, sections, E: VerticalQDivisor) -> Fraction:
    _check_sections(graph, sections)
    g = graph.g
    sum_sq = sum((phi_self_intersection(graph, P) for P in sections), Fraction(0))
    return -sum_sq + (4 * g - 2) * (g + 1) * node_count(graph) + 8 * omega_degree(graph, E)


@dataclass(frozen=True)
class LocalIdentity:
    lhs: Fraction
    rhs: Fraction
    sum_phi_sq: Fraction
    ord_delta: int
    omega_degree_E: Fraction
    ord_lambda: int

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.residual == 0


def verify_local_identity(graph: ComponentGraph, sections, E: VerticalQDivisor, ord_lambda: int) -> LocalIdentity:
    """Both sides of ``(3g-1) ord Lambda = -1/2 sum Phi_P^2 + (2g-1)(g+1) ord Delta + 4 deg omega|_E``."""
    _check_sections(graph, sections)
    g = graph.g
    sum_sq = sum((phi_self_intersection(graph, P) for P in sections), Fraction(0))
    n_nodes = node_count(graph)
    deg_e = omega_degree(graph, E)
    lhs = Fraction((3 * g - 1) * ord_lambda)
    rhs = -sum_sq / 2 + (2 * g - 1) * (g + 1) * n_nodes + 4 * deg_e
    return LocalIdentity(lhs, rhs, sum_sq, n_nodes, deg_e, ord_lambda)
