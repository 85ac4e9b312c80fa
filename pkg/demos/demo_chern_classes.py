"""Walk through the characteristic-class layer on a small formal ring.

Run with:  python3 demos/demo_chern_classes.py
"""

from chowcalc import (
    BundleClass,
    GradedRing,
    chern_character,
    mukai_vector,
    segre_classes,
    sqrt_one_series,
    todd_class,
    whitney_sum,
)

# A base ring with two formal degree-1 classes and everything above degree 6
# truncated away.
S = GradedRing([("a", 1), ("b", 1)], dim_bound=6)
a, b = S.gen("a"), S.gen("b")

# A split rank-2 bundle E = O(a) + O(b), described by its Chern classes.
E = BundleClass(S, 2, [a + b, a * b])

print("total Chern class of E:", E.total_chern())
print("Segre classes of E:", [str(s) for s in segre_classes(E, 3)])

ch = chern_character(E, 4)
print("ch_0..ch_3 of E:")
for d in range(4):
    print(f"  ch_{d} =", ch.component(d))

td = todd_class(E, 4)
print("td_1 =", td.component(1), " td_2 =", td.component(2))

# The Todd class is multiplicative on direct sums.
F = BundleClass(S, 1, [a - b])
lhs = todd_class(whitney_sum(E, F), 4)
rhs = todd_class(E, 4) * todd_class(F, 4)
print("td(E + F) == td(E) td(F):", lhs == rhs)

# Square roots of unit series, and the Mukai vector ch(F) sqrt(td(T)).
root = sqrt_one_series(td)
print("sqrt(td)^2 == td:", root * root == td)
v = mukai_vector(F, E, 4)
print("Mukai vector components:", [str(v.component(d)) for d in range(3)])
