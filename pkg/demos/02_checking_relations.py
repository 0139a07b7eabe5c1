"""
Checking relations against the representation
=============================================

Every relation in the catalog is a pair of morphisms.  Here we look at a
couple of them and evaluate both sides as exact rational matrices.
"""

# In[1]:

from webcat import rules
from webcat.diagram import render
from webcat.rep_oracle import RepParams, evaluate

for r in rules.catalog()[:6]:
    print(f"{r.name:10s} {r.citation}")


# In[2]:

# The merge-split square for a=b=c=d=1.
r2 = rules.get_rule("R2")
lhs, rhs = r2.instantiate(a=1, b=1, c=1, d=1)
print(render(lhs), "=", render(rhs))


# In[3]:

# Evaluate on a 3x2 rectangle.  Matrices are sparse dicts of Fractions.
params = RepParams.rectangle(3, 2, c=(1, 5))
L, R = evaluate(lhs, params), evaluate(rhs, params)
print("matrix size", L.shape, "equal:", L == R)


# In[4]:

# check_rule runs every admissible label set up to a bound, and the
# upside-down version of each relation too.
report = rules.check_rule("R10.top", 2)
print("\n".join(report.lines()))


# In[5]:

# Over the rationals a thick dot can be traded for thin dots.
r14 = rules.get_rule("R14")
print(rules.check_rule(r14, 3, ring="Q").passed)
try:
    rules.check_rule(r14, 3, ring="Z")
except rules.RingRequirementError as exc:
    print("refused:", exc)
