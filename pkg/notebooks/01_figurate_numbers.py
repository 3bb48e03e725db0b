# coding: utf-8

# # Triangular and tetrahedral numbers
#
# The two sequences t_n = n(n+1)/2 and T_n = n(n+1)(n+2)/6, their inverses, and digit tools.

# In[1]:

import numpy as np

from tritet import digits, is_palindrome, tet, tet_index, tri, tri_index


# Both formulas make sense for negative n. Triangular numbers are symmetric about -1/2 and tetrahedral numbers are antisymmetric about -1.

# In[2]:

ns = np.arange(-6, 7)
table = np.array([[n, tri(n), tet(n)] for n in ns.tolist()])
print(table.T)
assert all(tri(-n - 1) == tri(n) for n in range(50))
assert all(tet(-n - 2) == -tet(n) for n in range(50))


# Index recovery returns None for non-members, so it doubles as a membership test.

# In[3]:

print(tri_index(5050), tri_index(5051), tet_index(2300), tet_index(2301))


# The classical relation 8 t_n + 1 = (2n+1)^2 ties triangular numbers to odd squares.

# In[4]:

assert all(8 * tri(n) + 1 == (2 * n + 1) ** 2 for n in range(-1000, 1000))


# Digits in an arbitrary radix. A palindrome check on t_n is what the base-10 search is built on.

# In[5]:

d = digits(tri(1111), 10)
print(d, len(d), is_palindrome(tri(1111), 10))
print([n for n in range(1, 200) if is_palindrome(tri(n), 10)])


# Huge arguments are fine: digit expansion is divide-and-conquer, so a number with thousands of bits expands quickly.

# In[6]:

big = tri(2 ** 4000 + 1)
print(len(digits(big, 2).digits), is_palindrome(big, 2))
