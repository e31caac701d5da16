"""
Self-isogeny polynomial for q = 2, rank 3
=========================================

Walk through the pipeline for the smallest interesting case: F_2[T],
rank 3, the basic J-invariant with exponents (1, 2 | 1).
"""

from drinfeld_selfisog.algebra_core import FieldCtx, QuotientRing
from drinfeld_selfisog.selfisog_modpoly import (coefficients_from_root, enumerate_basic_j,
                                                modular_poly_g, phi_self_T, trial_factors)
from drinfeld_selfisog.serialize import format_grouped
from drinfeld_selfisog.skew_drinfeld import DrinfeldModule, SkewPoly, skew_mul

F2 = FieldCtx.of_order(2)

###############################################################################
# Basic J-invariants of rank 3 over F_2. Each tuple lists the exponents of
# g_1, g_2 and the power of Delta in the denominator.
for j in enumerate_basic_j(2, 3):
    print(j)

###############################################################################
# Eliminating g_1, g_2 from the commutation relations for a degree-one
# isogeny u = x^q + a_0 x leaves a single polynomial g(Delta, X) in X = a_0.
data = modular_poly_g(2, 3, 1, F2)
print("g(1, X) =", format_grouped(data.g_poly))
print("no constant roots:", data.constant_roots_ok)

###############################################################################
# Over F_2 it splits into four cubics in X with coefficients in F_2[T].
for f in trial_factors(data.g_poly, "X", max_deg=3, max_coeff_deg=1):
    print("  factor:", f)

###############################################################################
# Pick the root y of X^3 + X + T. The coefficients g_1, g_2 are rational
# functions of y, and u = x^q + y x commutes with phi_T.
g1, g2 = coefficients_from_root(data)
Q = QuotientRing(data.ring.parse("y^3 + y + T"))
phi = DrinfeldModule([Q(g1), Q(g2), Q.one], parent=Q)
u = SkewPoly([Q.y, Q.one], Q)
print("u phi_T == phi_T u:", skew_mul(u, phi.phi_T) == skew_mul(phi.phi_T, u))

###############################################################################
# Finally, Phi_{J,T}(X, X): the monic polynomial in X whose roots are the
# J-values of these self-isogenous modules.
res = phi_self_T(2, 3, enumerate_basic_j(2, 3)[0])
print("deg Phi =", res.degree)
print("Phi =", format_grouped(res.phi))
