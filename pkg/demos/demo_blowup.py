"""Blow up P^4 along a line and poke at the resulting intersection ring.

Run with:  python3 demos/demo_blowup.py
"""

import random

from chowcalc import BlowupRing, key_formula_check, linear_blowup

# CH(P^4) = Q[t]/(t^5), CH(P^1) = Q[u]/(u^2); the line has normal bundle
# O(1)^3, so the exceptional divisor is a P^2-bundle over P^1.
data = linear_blowup(4, 1)
bl = BlowupRing(data)

t = data.ambient.gen("t")
u = data.center.gen("u")

# Classes on the blow-up are stored as (ambient part, exceptional part).
H = bl.pull(t)  # pullback of the hyperplane
e = bl.exc_push(bl.E.one)  # the class of the exceptional divisor
print("hyperplane:", H)
print("exceptional divisor:", e)

print("H^4 =", H ** 4)
print("e^4 =", e ** 4)
print("H . e =", H * e)

# The pushforward collapses the exceptional directions.
print("push(e) =", bl.push(e))
print("push(H^2 e) =", bl.push(H * H * e))

# Pullback then pushforward is the identity on CH(P^4).
rng = random.Random(0)
alpha = data.ambient.random_element(rng, 4)
print("push(pull(alpha)) == alpha:", bl.push(bl.pull(alpha)) == alpha)

# The key formula relating the center and the exceptional divisor.
key_formula_check(bl, u)  # raises if violated
print("key formula holds for gamma = u")
