# coding: utf-8

# # Exact polynomial identities
#
# Sparse polynomials over Q, the identity catalogue, and a resultant computed from a Sylvester matrix.

# In[1]:

from fractions import Fraction

from tritet import MultiPoly, parse_poly, resultant, uni_gcd
from tritet.families import check_all_identities, check_identity, eq1_polynomials
from tritet.polyring import tri_poly


# Polynomials are built by parsing or by arithmetic, and evaluate exactly on Fractions.

# In[2]:

x, y = MultiPoly.var("x"), MultiPoly.var("y")
p = (x + y) ** 3 - parse_poly("x^3 + 3*x^2*y + 3*x*y^2 + y^3", ("x", "y"))
print(p.is_zero(), tri_poly(x).eval({"x": Fraction(1, 2)}))


# Every identity in the catalogue expands to zero; two of them are divisibility statements with a degree-8 cofactor.

# In[3]:

for r in check_all_identities():
    extra = f" cofactor degree {r.cofactor.total_degree()}" if r.cofactor is not None else ""
    print(f"{r.id:6} {r.status}{extra}")


# The printed forms of a few identities carry sign or coefficient slips; the checker keeps them for comparison.

# In[4]:

for ident in ("I-15", "I-16", "I-17"):
    print(ident, check_identity(ident, "printed").status)


# The first polynomial parametrisation of t_x^2 + t_y^2 = t_z^2. The triangular values of x_1 and y_1 share no root: gcd is 1 and the resultant is 2^-58.

# In[5]:

x1, y1, z1 = eq1_polynomials(1)
print(x1, y1, sep="\n")
print(uni_gcd(tri_poly(x1), tri_poly(y1), "u"))
r = resultant(tri_poly(x1), tri_poly(y1), "u")
print(r, r == Fraction(1, 2 ** 58))


# The later members of the chain are not integer valued on odd u. At u = 3 the second member is already fractional.

# In[6]:

x2, _, _ = eq1_polynomials(2)
print(x2.eval({"u": 3}))
