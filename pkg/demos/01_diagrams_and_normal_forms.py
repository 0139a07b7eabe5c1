"""
Diagrams and normal forms
=========================

Build a few dotted web diagrams, print them, and rewrite them into
chicken foot normal form.
"""

# In[1]:

import webcat as wc

# Diagrams are written bottom to top with ``;`` and side by side with ``@``.
bigon = wc.parse("split(1,1) ; merge(1,1)")
print(bigon)
print(bigon.source, "->", bigon.target)


# In[2]:

# The bigon on two thin strands is twice the identity of a thickness-2 strand.
nf = wc.normalize(bigon)
print(nf)
print(nf.to_json())


# In[3]:

# The same thing built from constructors.  compose(upper, lower) puts lower first.
also = wc.compose(wc.merge(1, 1), wc.split(1, 1))
assert also == bigon


# In[4]:

# Merging two thin strands and splitting them again gives identity plus crossing.
square = wc.stack(wc.merge(1, 1), wc.split(1, 1))
for E, c in wc.normalize(square).items():
    print(c, "A =", E.A, "P =", E.P)


# In[5]:

# Dots do not slide freely through a crossing; a correction term appears.
x = wc.stack(wc.cross(1, 1), wc.tensor(wc.dot(1), wc.id_(1)))
for E, c in wc.normalize(x).items():
    print(c, E.A, E.P, "degree", E.degree)


# In[6]:

# Packets on one thick strand multiply like elementary symmetric polynomials:
# the result is a single basis element whose partition lists the packets.
p = wc.stack(wc.wdot(3, 1), wc.wdot(3, 2), wc.wdot(3, 1))
print(wc.normalize(p))


# In[7]:

# Basis of Hom((2,1), (1,2)) up to degree 2, counted by degree.
print(wc.graded_dimension((2, 1), (1, 2), 2))
for E in wc.enumerate_cfds((2, 1), (1, 2), max_degree=1):
    print(E.A, E.P)
