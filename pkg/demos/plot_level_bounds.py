"""
Counting bounds at level T^2 + T + 1
====================================

Compare the closed-form bound with the sum of its three cases.
"""

from drinfeld_selfisog.level_reduction import (bound_Nq, bound_Nq_cases, bound_pairs,
                                               a0_field_guards, lift_constraints)

###############################################################################
# The lift system for a = T^2 + T + 1 in rank 2, with q kept symbolic.
for rel in lift_constraints().relations:
    print(" ", rel)

###############################################################################
# Which extensions of F_q can contain a_0, case by case.
for guard in a0_field_guards(5):
    print(guard)

###############################################################################
# The case sum exceeds the closed form by (q^3+1)(q^2-1)(q^13-q^11).
for q in (5, 7, 11):
    cases = bound_Nq_cases(q)
    gap = cases["total"] - bound_Nq(q)
    print(f"q={q}: pairs={bound_pairs(q)} Nq={bound_Nq(q)} cases={cases['total']} gap={gap}")
    assert gap == (q ** 3 + 1) * (q ** 2 - 1) * (q ** 13 - q ** 11)
