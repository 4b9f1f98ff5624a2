"""
Special fibers and the local identity
=====================================

Three components A, B, D of a genus 2 fiber with the six Weierstrass
sections distributed over them.  We solve for the vertical corrections
Phi_P and check the local formula for ord Lambda.
"""
from weierstrass_invariants.fiber import (Component, ComponentGraph, SectionIncidence, node_count, omega_degree,
                                          phi_divisor, phi_self_intersection, verify_local_identity)

graph = ComponentGraph(
    g=2,
    components=(Component("A", pa=1), Component("B"), Component("D")),
    intersection=((-1, 1, 0), (1, -3, 2), (0, 2, -2)),
)
sections = [SectionIncidence(f"P{i}", c) for i, c in enumerate("AAABDD", start=1)]

for P in sections:
    print(P.name, "on", P.meets, " Phi =", phi_divisor(graph, P), " Phi^2 =", phi_self_intersection(graph, P))

E = graph.divisor(A=1, B=1, D=2)
print("nodes:", node_count(graph), " deg omega|E:", omega_degree(graph, E))

ident = verify_local_identity(graph, sections, E, ord_lambda=8)
print("lhs", ident.lhs, "rhs", ident.rhs, "holds", ident.holds)

# a wrong ord Lambda shows up as a nonzero residual
print("residual with ord Lambda = 7:", verify_local_identity(graph, sections, E, 7).residual)
