"""
Hasse-derivative Wronskians
===========================

Wronskians in the Hasse sense work in every characteristic.  At an ordinary
point of a hyperelliptic curve the Wronskian of the standard differentials
is a power of 2y + a; at a branch point it vanishes to order g(g-1)/2.
"""
from weierstrass_invariants.fields import GF, QQ
from weierstrass_invariants.hyperelliptic import (INFINITY, HyperellipticEquation, hyperelliptic_wronskian_check,
                                                  weierstrass_gap_order)
from weierstrass_invariants.series import TruncatedSeries, hasse_derivative, wronskian

# in characteristic 2 the ordinary second derivative of t^2 is 0, the Hasse one is 1
t2 = TruncatedSeries.monomial(GF(2), 2, 6)
print("D_1 t^2 =", hasse_derivative(t2, 1), "  D_2 t^2 =", hasse_derivative(t2, 2))

# monomials 1, t, t^4: the Wronskian starts at t^2
print(wronskian(*[TruncatedSeries.monomial(QQ, k, 10) for k in (0, 1, 4)]))

# y^2 + x y = x^5 - x + 3 over Q and over F_7
for field in (QQ, GF(7)):
    eq = HyperellipticEquation.from_ab([0, 1], [3, -1, 0, 0, 0, 1], field=field)
    print(field, "identity at x = 2:", hyperelliptic_wronskian_check(eq, 2, precision=20))

# Weierstrass points of y^2 = x^5 - x over F_13, where -1 = 5^2
eq = HyperellipticEquation.from_ab([], [0, -1, 0, 0, 0, 1], field=GF(13))
orders = {P: weierstrass_gap_order(eq, P, 20) for P in (0, 1, 12, 5, 8, INFINITY, 3)}
print(orders, "total over branch points:", sum(orders.values()))
