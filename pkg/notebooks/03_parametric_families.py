# coding: utf-8

# # Parametric families of solutions
#
# Each family is a generator plus the equation it solves; every emitted record is re-checked with exact integers.

# In[1]:

import numpy as np

from tritet import generate, generate_range, list_families, verify


# In[2]:

for d in list_families():
    mark = " (corrected)" if d.corrections else ""
    print(f"{d.id:14} {d.target}{mark}")


# Recurrence families. Consecutive indices (x, x+1) with T_x^2 + T_{x+1}^2 a square:

# In[3]:

for rec in generate_range("F-TET-CONSEC", range(1, 5)):
    print(rec.values(), verify(rec))


# The Lucas-type family grows geometrically; the ratio of consecutive x settles quickly.

# In[4]:

xs = np.array([float(r.solution["x"]) for r in generate_range("F-TET-LUCAS", range(1, 9))])
print(xs[1:] / xs[:-1])


# Families indexed by a parameter rather than a step count.

# In[5]:

print(generate("F-SQ-AP", u=4).values())
print(generate("F-TWOPAIR", b=4).values())
print(generate("F-EQ1-POLY", n=1, u=3).values())


# Products of tetrahedral numbers that are squares, from the derived recurrence.

# In[6]:

print([generate("F-SQPROD-B", n=n).solution["x"] for n in range(5)])


# Palindromic triangular numbers in several bases.

# In[7]:

for fid in ("F-PAL-2", "F-PAL-3", "F-APAL-MINUS"):
    rec = generate(fid, k=3)
    print(fid, rec.solution, verify(rec))
