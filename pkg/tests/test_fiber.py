import json
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstrass_invariants.errors import InconsistentDataError
from weierstrass_invariants.fiber import (Component, ComponentGraph, SectionIncidence, VerticalQDivisor,
                                          node_count, omega_degree, ord_xi, pair, phi_divisor,
                                          phi_self_intersection, verify_local_identity)
from weierstrass_invariants.io import parse_fiber

from conftest import FIXTURES


def example():
    return parse_fiber(json.loads((FIXTURES / "chain_fiber.json").read_text()))


def test_pairing_examples():
    graph, *_ = example()
    A, B, D = (graph.divisor(**{n: 1}) for n in "ABD")
    assert pair(graph, A, A) == -1
    assert pair(graph, B, D) == 2
    F = graph.fiber()
    for X in (A, B, D, A + 3 * D):
        assert pair(graph, F, X) == 0


def test_omega_degrees():
    graph, _, E, _ = example()
    assert [graph.omega(n) for n in "ABD"] == [1, 1, 0]
    assert omega_degree(graph, graph.divisor(A=1)) == 1
    assert omega_degree(graph, E) == 2
    assert omega_degree(graph, VerticalQDivisor()) == 0


def test_phi_table():
    graph, sections, _, _ = example()
    table = {P.name: (str(phi_divisor(graph, P)), phi_self_intersection(graph, P)) for P in sections}
    assert table == {
        "P1": ("-B - D", -1), "P2": ("-B - D", -1), "P3": ("-B - D", -1),
        "P4": ("-A", -1), "P5": ("-2A - B", -3), "P6": ("-2A - B", -3),
    }
    assert -sum(sq for _, sq in table.values()) == 10


def test_ord_xi_and_local_identity():
    graph, sections, E, ord_lambda = example()
    assert node_count(graph) == 3
    assert ord_xi(graph, sections, E) == 80
    ident = verify_local_identity(graph, sections, E, ord_lambda)
    assert (ident.lhs, ident.rhs, ident.residual, ident.holds) == (40, 40, 0, True)
    off = verify_local_identity(graph, sections, E, 7)
    assert off.residual == -5 and not off.holds


def test_wrong_section_count():
    graph, sections, E, _ = example()
    with pytest.raises(ValueError):
        ord_xi(graph, sections[:5], E)


def test_single_component_fiber():
    for internal in (0, 1):
        graph = ComponentGraph(2, (Component("C", 1, 2 - internal, internal),), ((0,),))
        P = SectionIncidence("P", "C")
        assert phi_divisor(graph, P) == VerticalQDivisor()
        assert phi_self_intersection(graph, P) == 0
        assert node_count(graph) == internal
        sections = [SectionIncidence(f"P{i}", "C") for i in range(6)]
        ident = verify_local_identity(graph, sections, VerticalQDivisor(), 0)
        assert ident.rhs == 9 * internal
        assert ident.holds == (internal == 0)


def test_graph_validation_errors():
    comps = (Component("A", 1, 1), Component("B", 1, 1))
    with pytest.raises(InconsistentDataError):
        ComponentGraph(2, comps, ((-1, 1), (0, -1)))  # asymmetric
    with pytest.raises(InconsistentDataError):
        ComponentGraph(2, comps, ((-1, 2), (2, -1)))  # does not kill the fiber
    with pytest.raises(InconsistentDataError):
        ComponentGraph(3, comps, ((-1, 1), (1, -1)))  # omega total is 2, not 4
    with pytest.raises(InconsistentDataError):
        ComponentGraph(2, (Component("A", 1, 1), Component("B", 1, 1)), ((0, 0), (0, 0)))  # disconnected
    with pytest.raises(InconsistentDataError):
        ComponentGraph(2, comps, ((-1, 1), (1, -1)), {"A": 0})  # override disagrees with adjunction


def test_nonreduced_component_rejected():
    # a chain E0 - 2E1 - E2 where E1 has multiplicity 2
    graph = ComponentGraph(2, (Component("X", 1, 1), Component("Y", 2, 0), Component("Z", 1, 1)),
                           ((-2, 1, 0), (1, -1, 1), (0, 1, -2)))
    with pytest.raises(InconsistentDataError):
        phi_divisor(graph, SectionIncidence("P", "Y"))
    phi_divisor(graph, SectionIncidence("P", "X"))


def test_divisor_arithmetic():
    D = VerticalQDivisor({"A": 2, "B": Fraction(1, 2)})
    assert (D - D) == VerticalQDivisor()
    assert str(-D) == "-2A - (1/2)B"
    assert (3 * D)["A"] == 6 and D["Z"] == 0


# -- random fibers ---------------------------------------------------------------

@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 5))
    edges = np.zeros((n, n), dtype=int)
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        edges[i, j] += draw(st.integers(1, 2))
    for i in range(n):
        for j in range(i):
            edges[i, j] += draw(st.integers(0, 1))
    edges = edges + edges.T
    pa = [draw(st.integers(0, 1)) for _ in range(n)]
    internal = [draw(st.integers(0, 1)) for _ in range(n)]
    betti = int(edges.sum()) // 2 - n + 1
    g = sum(pa) + sum(internal) + betti
    if g == 0:
        pa[0], g = 1, 1
    M = edges.copy()
    for i in range(n):
        M[i, i] = -edges[i].sum()
    comps = tuple(Component(f"C{i}", 1, pa[i], internal[i]) for i in range(n))
    return ComponentGraph(g, comps, tuple(tuple(int(x) for x in row) for row in M))


@settings(max_examples=60, deadline=None)
@given(random_graphs(), st.data())
def test_phi_against_sympy_oracle(graph, data):
    name = data.draw(st.sampled_from(graph.names))
    P = SectionIncidence("P", name)
    phi = phi_divisor(graph, P)
    n = len(graph.names)
    M = sympy.Matrix(graph.intersection)
    k = graph.index(name)
    b = sympy.Matrix([graph.omega(c) - (2 * graph.g - 2) * (i == k) for i, c in enumerate(graph.names)])
    # oracle: pin the coefficient on P's component to zero and solve the remaining system
    keep = [i for i in range(n) if i != k]
    sol, params = M[:, keep].gauss_jordan_solve(b)
    assert params.shape[0] == 0
    expected = {graph.names[i]: Fraction(int(sympy.fraction(sol[r])[0]), int(sympy.fraction(sol[r])[1]))
                for r, i in enumerate(keep)}
    for c in graph.names:
        assert phi[c] == expected.get(c, 0)
    # normalization: adding the fiber changes nothing but the coefficient on P's component
    shifted = phi + 3 * graph.fiber()
    for c in graph.names:
        assert pair(graph, shifted, graph.divisor(**{c: 1})) == pair(graph, phi, graph.divisor(**{c: 1}))


@settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_intersection_form_negative_semidefinite(graph):
    eig = np.linalg.eigvalsh(np.array(graph.intersection, dtype=float))
    assert eig.max() < 1e-9 and np.sum(np.abs(eig) < 1e-9) == 1
    for c in graph.names:
        assert phi_self_intersection(graph, SectionIncidence("P", c)) <= 0


@settings(max_examples=40, deadline=None)
@given(random_graphs())
def test_ord_xi_is_twice_local_rhs(graph):
    sections = [SectionIncidence(f"P{i}", graph.names[i % len(graph.names)]) for i in range(2 * graph.g + 2)]
    ident = verify_local_identity(graph, sections, VerticalQDivisor(), 0)
    assert ord_xi(graph, sections, VerticalQDivisor()) == 2 * ident.rhs
    assert ident.rhs >= 0
