"""
Cyclotomic quotients
====================

Killing g on the leftmost strand truncates every dot packet to at most
ell - 1 parts.
"""

# In[1]:

import webcat as wc
from webcat.normalizer import g_element

L = wc.LevelParams.of((0, 1))

# x^2 = x at parameters (0, 1).
print(wc.cyclotomic_normalize(wc.parse("dot(1);dot(1)"), L))


# In[2]:

# Thicker strands: g_(2,u) is killed, and long packets reduce.
print(g_element(2, 3))
print(wc.cyclotomic_normalize(g_element(2, 3), wc.LevelParams.of((3,))))
print(wc.cyclotomic_normalize(wc.packet(2, (1, 1)), wc.LevelParams.of((2, -1))))


# In[3]:

# Soundness: reduce, expand back, evaluate at matching parameters.
m = wc.parse("split(1,1) ; dot(1) @ id(1) ; cross(1,1) ; dot(1) @ dot(1) ; merge(1,1)")
u = (2, -3)
red = wc.cyclotomic_normalize(m, wc.LevelParams.of(u))
params = wc.RepParams.for_u(2, u)
print(red)
print(wc.evaluate(m, params) == wc.evaluate(red.to_morphism(), params))


# In[4]:

# Dimension of End(1^m) in the quotient is m! ell^m.
for m, ell in [(1, 1), (1, 2), (2, 2), (3, 2)]:
    print(m, ell, sum(wc.graded_dimension((1,) * m, (1,) * m, None, level=ell)))
