"""The k-factoring behind the case analysis, step by step.

Run:  python demos/04_reduction_steps.py

Any solution other than (2,2,2) of (kU)^x + (kV)^y = (kW)^z must order
its exponents one of four strict ways.  In each ordering the smallest
k-power divides out, the primes shared between k and the isolated base
force linear relations between exponents and valuations, and the
cofactor of k collapses to 1, leaving a coprime reduced equation.
"""

from jesma.reduction import OrderingClass, classify_ordering, factor_k, factor_k_symbolic
from jesma.triples import Triple

t = Triple(20, 99, 101)

# Classify a few exponent triples first: the non-strict classes are
# closed off by classical lemmas before any factoring happens.
for sol in ((2, 2, 2), (3, 1, 3), (3, 3, 1), (1, 13, 2), (5, 2, 3)):
    print(f"(x,y,z) = {sol}: {classify_ordering(sol).value}")
print()

# Concrete k: with k = 8 in the ordering x < z < y, matching the 2-adic
# valuation on both sides forces 3(z - x) = 2x and kills the cofactor.
form = factor_k(t, 8, OrderingClass.CASE_1_2)
print("k = 8, ordering x < z < y:")
for r in form.relations:
    print("  relation:", r)
print("  cofactor:", form.cofactor)
lhs = " + ".join(map(str, form.reduced_lhs))
rhs = " + ".join(map(str, form.reduced_rhs))
print(f"  reduced: {lhs} = {rhs}")
print()

# Some k cannot appear in this ordering at all: if k is coprime to 20,
# dividing out k^x forces k = 1.
print("k = 7:", factor_k(t, 7, OrderingClass.CASE_1_2).contradiction)
print("k = 14:", factor_k(t, 14, OrderingClass.CASE_1_2).contradiction)
print()

# Symbolic k covers every scale at once: the pattern says which primes of
# the isolated base divide k, with valuation symbols standing in.
form = factor_k_symbolic(t, {3, 11}, OrderingClass.CASE_2_2)
print("symbolic k = 3^r * 11^q * n1, ordering y < z < x:")
for r in form.relations:
    print("  relation:", r)
print("  cross relation (== 0):", ", ".join(map(str, form.cross_relations)))
lhs = " + ".join(map(str, form.reduced_lhs))
rhs = " + ".join(map(str, form.reduced_rhs))
print(f"  reduced: {lhs} = {rhs}")
