"""
Affine Hecke generators as webs
===============================

Thin strands with dots and crossings carry the degenerate affine Hecke
algebra.  We check a few relations and look at idempotents.
"""

# In[1]:

from webcat import hecke
from webcat.diagram import identity, stack
from webcat.normalizer import normalize
from webcat.rep_oracle import RepParams

g = hecke.embed_affine_hecke(3)
print(sorted(g))


# In[2]:

# Products are read left to right as bottom to top.
one = normalize(identity((1, 1, 1)))
print("s1 s1 == 1:", normalize(stack(g["s1"], g["s1"])) == one)
lhs = normalize(stack(g["x2"], g["s1"]))
rhs = normalize(stack(g["s1"], g["x1"])) - one
print("x2 s1 == s1 x1 - 1:", lhs == rhs)


# In[3]:

# The shape (1,2,2) has a length-two last column; tableaux with entries only
# at the right end of rows index weight-space idempotents.
params = RepParams((1, 2, 2), (0, 0))
A = hecke.IdempotentTableau((1, 2, 2), (0, 1, 1))
print("index word", A.index_word())
print(sorted(hecke.idempotent_support(A, params)))


# In[4]:

# Rank of the action of all w x^r on the faithful subspace equals m! ell^m.
P = RepParams.rectangle(2, 2, c=(3, 10))
print(hecke.hecke_rank(2, P), hecke.end_dimension(2, 2))


# In[5]:

# Hom spaces between permutation modules against the level-ell basis count.
from webcat.normalizer import LevelParams

for lam, mu in [((2,), (1, 1)), ((1, 1), (1, 1)), ((2, 1), (1, 2))]:
    print(hecke.wschur_dim_check(lam, mu, LevelParams.of((0, 1))).line())
