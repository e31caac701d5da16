"""
Ideals, norms and primitive elements
====================================

Work in the order A[y] with y^2 = T^3 - T + 1 over F_3.
"""

from drinfeld_selfisog.algebra_core import FieldCtx, PolyRing
from drinfeld_selfisog.cm_orders import (a_str, coset_count, fitting_norm, gamma_count,
                                         ideal_from_generators, ideal_product, norm_element,
                                         order_from_minpoly, smith_normal_form)

F3 = FieldCtx.of_order(3)
R = PolyRing(F3, ("T", "y"))
O = order_from_minpoly(R.parse("y^2 - (T^3 - T + 1)"), imaginary=True)

###############################################################################
# Elements are coordinate vectors over A = F_3[T]; A-elements are coefficient
# lists, low degree first. The norm of y is -(T^3 - T + 1).
print("Nm(y) =", a_str(F3, norm_element(O, [[], [1]])))

###############################################################################
# The primes above T and T + 1 through y = 1.
P = ideal_from_generators(O, [[[0, 1], []], [[2], [1]]])
Q = ideal_from_generators(O, [[[1, 1], []], [[2], [1]]])
PQ = ideal_product(P, Q)
for name, I in (("P", P), ("Q", Q), ("PQ", PQ)):
    print(f"N({name}) = {a_str(F3, fitting_norm(I))}, |O/{name}| = {coset_count(I)}")

###############################################################################
# The Smith form exposes the module structure of O / PQ.
print("invariant factors:", [a_str(F3, d) for d in smith_normal_form(PQ.matrix, F3).invariants])

###############################################################################
# P is not principal (the class group has order 7), so no primitive element
# of norm c*T turns up. The count is tagged as a lower bound.
res = gamma_count(O, "T", bound=2)
print(f"gamma = {res.count} ({res.tag})")
