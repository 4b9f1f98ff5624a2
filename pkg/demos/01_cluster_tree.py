"""
Cluster trees of branch points
==============================

Six roots over Z localized at 5.  Three of them are congruent modulo 5,
two of those modulo 125, which gives a chain of clusters.
"""
from weierstrass_invariants import RootConfig, build_tree, compute_e, residual_divisor
from weierstrass_invariants.hyperelliptic import ord_lambda

config = RootConfig(g=2, p=5, A=1, roots=(1, 2, 3, 0, 25, 150))
tree = build_tree(config)
for v in tree:
    print(v.id, "level", v.level, "phi", v.phi, "C", v.parity, "members", sorted(i + 1 for i in v.members))

# v(25 - 150) = 3 is odd, so the evenness hypothesis fails and is reported
print(tree.report)

# the residual divisor refuses to run on a failed report unless asked
print("e =", compute_e(tree))
print("multiplicities:", residual_divisor(tree, override=True))
print("ord Lambda =", ord_lambda(config, tree))

# DOT output for graphviz
print(tree.to_dot())
