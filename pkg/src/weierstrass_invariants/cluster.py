"""Trees of residue classes of branch points over a discrete valuation ring.

Given roots ``a_1, ..., a_{2g+2}`` of ``f`` (with ``y^2 = A f(x)``) the tree has
one vertex at level ``n`` for every residue class modulo ``p^n`` that contains
at least two roots.  Classes are represented by their member index sets:
roots ``i`` and ``j`` share a class at level ``n`` iff ``v(a_i - a_j) >= n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .errors import AssumptionError, InconsistentDataError
from .fields import as_fraction, p_valuation

__all__ = [
    "RootConfig", "AssumptionReport", "Vertex", "ClusterTree", "validate",
    "build_tree", "path_phi_sum", "counting_sum", "compute_e", "residual_divisor",
]


@dataclass(frozen=True)
class RootConfig:
    """Roots of ``f`` over Z localized at ``p``, with the unit ``A``.

    ``valuation`` is the extension point for other discrete valuations; it
    defaults to the p-adic valuation.
    """

    g: int
    p: int
    A: Fraction
    roots: tuple
    valuation: Callable = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "A", as_fraction(self.A))
        object.__setattr__(self, "roots", tuple(as_fraction(a) for a in self.roots))
        if self.valuation is None:
            p = self.p
            object.__setattr__(self, "valuation", lambda q: p_valuation(q, p))
        if self.g < 1:
            raise ValueError("genus must be at least 1")
        if len(self.roots) != 2 * self.g + 2:
            raise ValueError(f"expected {2 * self.g + 2} roots for genus {self.g}, got {len(self.roots)}")
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("roots must be pairwise distinct")
        if self.valuation(self.A) != 0:
            raise ValueError("A must be a unit")
        for a in self.roots:
            if self.valuation(a) < 0:
                raise ValueError(f"root {a} is not integral at p={self.p}")

    @property
    def residue_char_two(self) -> bool:
        return self.p == 2

    def v(self, i: int, j: int):
        """Valuation of ``a_i - a_j`` (0-based indices)."""
        return self.valuation(self.roots[i] - self.roots[j])

    def valuation_matrix(self):
        n = len(self.roots)
        return [[math.inf if i == j else self.v(i, j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class AssumptionReport:
    evenness_ok: bool
    residues_ok: bool
    messages: tuple = ()

    @property
    def ok(self) -> bool:
        return self.evenness_ok and self.residues_ok


def validate(config: RootConfig) -> AssumptionReport:
    """Check the two standing hypotheses separately; never raises."""
    messages = []
    odd = [(i + 1, j + 1, config.v(i, j)) for i, j in combinations(range(len(config.roots)), 2)
           if config.v(i, j) % 2]
    for i, j, v in odd:
        messages.append(f"v(a_{i} - a_{j}) = {v} is odd")
    # distinct residues = number of classes at level 1
    n_residues = len(_classes(config, 1, min_size=1))
    if n_residues < 3:
        messages.append(f"only {n_residues} distinct residues mod p (need at least 3)")
    if config.residue_char_two:
        messages.append("residue characteristic 2 is outside the supported range")
    return AssumptionReport(not odd, n_residues >= 3, tuple(messages))


def _classes(config: RootConfig, n: int, min_size: int = 2):
    """Partition of root indices by congruence modulo p^n."""
    remaining = list(range(len(config.roots)))
    out = []
    while remaining:
        i = remaining.pop(0)
        cls = [i] + [j for j in remaining if config.v(i, j) >= n]
        remaining = [j for j in remaining if j not in cls]
        if len(cls) >= min_size:
            out.append(frozenset(cls))
    return out


@dataclass(frozen=True)
class Vertex:
    id: str
    level: int
    members: frozenset
    parent: str | None

    @property
    def phi(self) -> int:
        return len(self.members)

    @property
    def parity(self) -> int:
        """1 when both the level and the class size are odd, else 0."""
        return int(self.level % 2 == 1 and self.phi % 2 == 1)


@dataclass(frozen=True)
class ClusterTree:
    g: int
    vertices: tuple
    report: AssumptionReport | None = None

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {v.id: v for v in self.vertices})

    @property
    def root(self) -> Vertex:
        return self.vertices[0]

    def __getitem__(self, vid: str) -> Vertex:
        return self._by_id[vid]

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def children(self, vid: str):
        return [v for v in self.vertices if v.parent == vid]

    def path(self, vid: str):
        """Vertices ``V_0, V_1, ..., V_n = V`` from the root down to ``vid``."""
        out = []
        v = self[vid]
        while v is not None:
            out.append(v)
            v = self[v.parent] if v.parent is not None else None
        return out[::-1]

    def to_dot(self) -> str:
        lines = ["digraph cluster_tree {"]
        for v in self.vertices:
            lines.append(f'  {v.id} [label="{v.id}: n={v.level}, φ={v.phi}, C={v.parity}"];')
        for v in self.vertices:
            if v.parent is not None:
                lines.append(f"  {v.parent} -> {v.id};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_tree(config: RootConfig) -> ClusterTree:
    n_roots = len(config.roots)
    top = max(config.v(i, j) for i, j in combinations(range(n_roots), 2))
    if top == math.inf:
        raise ValueError("coincident roots")
    root = Vertex("V0", 0, frozenset(range(n_roots)), None)
    vertices = [root]
    frontier = [root]
    level = 0
    while frontier:
        level += 1
        classes = _classes(config, level)
        nxt = [(parent, cls) for parent in frontier for cls in classes if cls <= parent.members]
        frontier = []
        for parent, cls in sorted(nxt, key=lambda pc: (min(pc[1]), pc[0].id)):
            v = Vertex(f"V{len(vertices)}", level, cls, parent.id)
            vertices.append(v)
            frontier.append(v)
    if level - 1 > top:
        raise InconsistentDataError("tree deeper than the largest pairwise valuation")
    return ClusterTree(config.g, tuple(vertices), validate(config))


def path_phi_sum(tree: ClusterTree, vid: str, config: RootConfig | None = None) -> int:
    """Sum of ``phi(V_i)`` for ``i = 1..n(V)`` along the path from the root.

    When ``config`` is given the valuation-side count is computed as well and
    the two are required to agree.
    """
    total = sum(v.phi for v in tree.path(vid)[1:])
    if config is not None and counting_sum(config, tree, vid) != total:
        raise InconsistentDataError(f"counting identity fails at {vid}")
    return total


def counting_sum(config: RootConfig, tree: ClusterTree, vid: str) -> int:
    """``sum_i min(n(V), v(a - a_i))`` for a representative ``a`` of ``V``."""
    v = tree[vid]
    m = min(v.members)
    return sum(v.level if i == m else min(v.level, config.v(m, i)) for i in range(len(config.roots)))


def _e_term(phi: int) -> Fraction:
    if phi % 2 == 0:
        return Fraction(phi, 2) * (Fraction(phi, 2) - 1)
    return Fraction((phi - 1) // 2) ** 2


def compute_e(tree: ClusterTree) -> Fraction:
    e = sum((_e_term(v.phi) for v in tree.vertices[1:]), Fraction(0)) / 2
    if tree.report is not None and tree.report.evenness_ok and e.denominator != 1:
        raise InconsistentDataError(f"e = {e} is not integral although all valuations are even")
    return e


def residual_divisor(tree: ClusterTree, g: int | None = None, *, override: bool = False):
    """Multiplicities of the residual divisor on the components over ``C(V) = 0`` vertices.

    Returns ``{vertex id: Fraction}``.  Refuses to run when the assumption report
    attached to the tree fails, unless ``override`` is set.
    """
    g = tree.g if g is None else g
    if tree.report is not None and not tree.report.ok and not override:
        raise AssumptionError("; ".join(tree.report.messages), tree.report)
    e = compute_e(tree)
    out = {}
    for v in tree.vertices:
        if v.parity:
            continue
        out[v.id] = e - Fraction(g, 2) * path_phi_sum(tree, v.id) + Fraction(g * (g + 1), 2) * v.level
    if all(v.phi <= 2 * g for v in tree.vertices[1:]):
        negative = {k: m for k, m in out.items() if m < 0}
        if negative:
            raise InconsistentDataError(f"negative residual multiplicities {negative}")
    return out
