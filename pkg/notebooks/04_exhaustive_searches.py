# coding: utf-8

# # Exhaustive searches
#
# Bounded searches use a numpy float pre-filter, confirm candidates modulo 2^64, and re-verify every hit with exact integers.

# In[1]:

import time

import numpy as np

from tritet import SearchProblem, run_partitioned
from tritet.search import (
    search_palindromic_tri,
    search_pow_sum_tet,
    search_sq_sum_tet,
    search_tz_quartic,
)


# Sums of two squared tetrahedral numbers that are squares. Only one pair has coprime T_x, T_y.

# In[2]:

start = time.perf_counter()
rep = search_sq_sum_tet(5000)
print(rep.count, f"{time.perf_counter() - start:.2f} s")
print([s for s, f in zip(rep.tuples(), rep.flags) if f["coprime"]])


# The ratio y/x clusters: many solutions come from a handful of families.

# In[3]:

arr = np.array([(x, y) for x, y, _ in rep.tuples()], dtype=float)
print(np.round(arr[:, 1] / arr[:, 0], 3))


# Palindromic triangular numbers below index 10^6.

# In[4]:

pal = search_palindromic_tri(10 ** 6)
print(pal.count, [n for (n,) in pal.tuples()][-5:])


# x^4 + y^4 = t_z and T_x + T_y = z^4.

# In[5]:

print(search_tz_quartic(10 ** 4).tuples())
print(search_pow_sum_tet(4, 10 ** 4).tuples())


# Partitioning changes the work split, not the answer.

# In[6]:

a = run_partitioned(SearchProblem("SQ-SUM-TET", 2000, partitions=1))
b = run_partitioned(SearchProblem("SQ-SUM-TET", 2000, partitions=8))
print(a.content() == b.content())
