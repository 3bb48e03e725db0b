"""Sparse multivariate polynomials and rational functions over Q.

Polynomials carry an ordered variable universe; terms map exponent tuples
(aligned with that universe) to reduced :class:`~fractions.Fraction`
coefficients.  Binary operations extend the universe by union, so
polynomials built independently can be mixed freely.  Canonical order is
graded lexicographic with respect to the stored variable order.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

MAX_TERMS = 10**6

Scalar = Union[int, Fraction]


class PolyResourceError(RuntimeError):
    """Raised when a result would exceed the term-count guardrail."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _grlex_key(exp: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exp), exp)


def _guard(n: int) -> None:
    if n > MAX_TERMS:
        raise PolyResourceError(f"polynomial exceeds {MAX_TERMS} terms ({n})")


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], Scalar] | None = None,
                 vars: Iterable[str] = ()):
        self.vars: tuple[str, ...] = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            if len(exp) != len(self.vars):
                raise ValueError(f"exponent {exp} does not match variables {self.vars}")
            c = _frac(c)
            if c:
                clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, vars: Iterable[str] = ()) -> MultiPoly:
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Iterable[str] | None = None) -> MultiPoly:
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls({exp: 1}, vars)

    @classmethod
    def _raw(cls, terms: dict, vars: tuple[str, ...]) -> MultiPoly:
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # -- universe handling --------------------------------------------------

    def extend(self, vars: Iterable[str]) -> MultiPoly:
        """Re-express in a universe that contains this one's variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        for i, v in enumerate(self.vars):
            # dropping a variable is fine only if it never occurs
            if v not in vars and any(e[i] for e in self.terms):
                raise ValueError(f"variable {v!r} missing from target universe {vars}")
        pos = {v: i for i, v in enumerate(self.vars)}
        idx = [pos.get(v) for v in vars]
        out = {}
        for e, c in self.terms.items():
            out[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return MultiPoly._raw(out, vars)

    def _align(self, other: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        if self.vars == other.vars:
            return self, other
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.extend(vars), other.extend(vars)

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.vars)
        return None

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars)
                     if any(e[i] for e in self.terms))

    def trim(self) -> MultiPoly:
        """Drop variables that do not occur."""
        return self.extend(self.used_vars())

    # -- predicates and queries --------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str | None = None) -> int:
        if var is None:
            return self.total_degree()
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficients(self) -> list[Fraction]:
        """Flattened coefficient list; useful for integrality checks."""
        return [c for _, c in self.sorted_terms()]

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __len__(self) -> int:
        return len(self.terms)

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        _guard(len(out))
        return MultiPoly._raw(out, a.vars)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __pos__(self) -> MultiPoly:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw({}, self.vars)
            return MultiPoly._raw({e: c * other for e, c in self.terms.items()}, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        if len(a.terms) * len(b.terms) > 50 * MAX_TERMS:
            raise PolyResourceError("product too large to expand")
        out: dict[tuple[int, ...], Fraction] = {}
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        out = {e: c for e, c in out.items() if c}
        _guard(len(out))
        return MultiPoly._raw(out, a.vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by scalars only; use RatFunc or divide_exact otherwise
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, MultiPoly) and other.is_constant() and not other.is_zero():
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative exponent on a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- equality -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        return a.terms == b.terms

    def __hash__(self) -> int:
        used = self.used_vars()
        t = self.extend(used) if used != self.vars else self
        order = sorted(range(len(used)), key=lambda i: used[i])
        items = frozenset(
            (tuple((used[i], e[i]) for i in order if e[i]), c) for e, c in t.terms.items()
        )
        return hash(items)

    # -- composition and evaluation ----------------------------------------

    def substitute(self, var: str, q) -> MultiPoly:
        return self.substitute_many({var: q})

    def substitute_many(self, mapping: Mapping[str, object]) -> MultiPoly:
        """Simultaneous substitution of variables by polynomials or scalars."""
        for v in mapping:
            if v not in self.vars:
                raise ValueError(f"variable {v!r} not in universe {self.vars}")
        keep = tuple(v for v in self.vars if v not in mapping)
        images = {}
        for v, q in mapping.items():
            images[v] = q if isinstance(q, MultiPoly) else MultiPoly.const(_frac(q))
        powers: dict[tuple[str, int], MultiPoly] = {}

        def power(v: str, k: int) -> MultiPoly:
            key = (v, k)
            if key not in powers:
                if k == 1:
                    powers[key] = images[v]
                else:
                    powers[key] = power(v, k // 2) * power(v, k - k // 2)
            return powers[key]

        keep_idx = [self.vars.index(v) for v in keep]
        sub_idx = [(self.vars.index(v), v) for v in mapping]
        result = MultiPoly._raw({}, keep)
        # group terms by their substituted-part exponent to share products
        groups: dict[tuple[int, ...], dict] = {}
        for e, c in self.terms.items():
            se = tuple(e[i] for i, _ in sub_idx)
            ke = tuple(e[i] for i in keep_idx)
            g = groups.setdefault(se, {})
            g[ke] = g.get(ke, 0) + c
        for se, rest in groups.items():
            factor = MultiPoly.const(1, keep)
            for (i, v), k in zip(sub_idx, se):
                if k:
                    factor = factor * power(v, k)
            result = result + factor * MultiPoly(rest, keep)
        return result

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        missing = [v for v in self.used_vars() if v not in assignment]
        if missing:
            raise ValueError(f"unassigned variables {missing}")
        vals = [_frac(assignment[v]) if v in assignment else Fraction(0) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term *= x**k
            total += term
        return total

    def __call__(self, **assignment) -> Fraction:
        return self.eval(assignment)

    # -- univariate views ---------------------------------------------------

    def _require_univariate(self, var: str) -> None:
        bad = [v for v in self.used_vars() if v != var]
        if bad:
            raise ValueError(f"expected a polynomial in {var!r} only, found {bad}")

    def uni_coeffs(self, var: str) -> list[Fraction]:
        """Coefficients in ``var`` from degree 0 upward."""
        self._require_univariate(var)
        if not self.terms:
            return []
        if var not in self.vars:
            return [self.constant_value()]
        i = self.vars.index(var)
        out = [Fraction(0)] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            out[e[i]] += c
        return out

    @classmethod
    def from_uni_coeffs(cls, coeffs: Iterable[Scalar], var: str) -> MultiPoly:
        return cls({(k,): c for k, c in enumerate(coeffs)}, (var,))

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.vars, e) if k)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, vars={self.vars})"


# -- free functions ----------------------------------------------------------

def poly_vars(*names: str) -> tuple[MultiPoly, ...]:
    """Variables sharing one universe, e.g. ``u, v = poly_vars("u", "v")``."""
    return tuple(MultiPoly.var(n, names) for n in names)


def tri_poly(p):
    """Triangular number of a polynomial (or rational function): p(p+1)/2."""
    return p * (p + 1) * Fraction(1, 2)


def tet_poly(p):
    return p * (p + 1) * (p + 2) * Fraction(1, 6)


def divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly | None:
    """Return r with p == q*r, or None when q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p, q = p._align(q)
    lq_e, lq_c = q.leading_term()
    rem = dict(p.terms)
    quot: dict[tuple[int, ...], Fraction] = {}
    qterms = list(q.terms.items())
    while rem:
        le = max(rem, key=_grlex_key)
        diff = tuple(a - b for a, b in zip(le, lq_e))
        if any(d < 0 for d in diff):
            return None
        c = rem[le] / lq_c
        quot[diff] = c
        for e, qc in qterms:
            t = tuple(a + b for a, b in zip(e, diff))
            s = rem.get(t, 0) - c * qc
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return MultiPoly._raw(quot, p.vars)


def _uni_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        while a and not a[-1]:
            a.pop()
    return a


def uni_gcd(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Monic gcd over Q of two polynomials in ``var`` (Euclid)."""
    a = p.uni_coeffs(var)
    b = q.uni_coeffs(var)
    while b:
        a, b = b, _uni_rem(a, b)
    if not a:
        return MultiPoly({}, (var,))
    lead = a[-1]
    return MultiPoly.from_uni_coeffs([c / lead for c in a], var)


def bareiss_det(m: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(a: list, b: list) -> list[list]:
    """Sylvester matrix from coefficient lists given lowest degree first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    ra, rb = a[::-1], b[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + ra + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (size - n - 1 - i))
    return rows


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> Fraction:
    """Res(p, q) as the Sylvester determinant, computed over Z after clearing denominators."""
    a = p.uni_coeffs(var)
    b = q.uni_coeffs(var)
    if not a or not b:
        raise ValueError("resultant of the zero polynomial")
    da = lcm(*(c.denominator for c in a))
    db = lcm(*(c.denominator for c in b))
    ia = [int(c * da) for c in a]
    ib = [int(c * db) for c in b]
    m, n = len(a) - 1, len(b) - 1
    det = bareiss_det(sylvester_matrix(ia, ib))
    # Res(da*p, db*q) = da^n * db^m * Res(p, q)
    return Fraction(det, da**n * db**m)


def integer_valued_on_AP(p: MultiPoly, a: int, m: int) -> bool:
    """True iff p(a + m*s) is an integer for every integer s.

    Decided by the Newton forward differences of s -> p(a + m*s) at 0,
    which are its coordinates in the binomial basis C(s, k).
    """
    if m < 1:
        raise ValueError(f"step must be >= 1, got {m}")
    used = p.used_vars()
    if len(used) > 1:
        raise ValueError(f"expected a univariate polynomial, found {used}")
    if not used:
        return p.constant_value().denominator == 1
    var = used[0]
    deg = p.degree(var)
    vals = [p.eval({var: a + m * s}) for s in range(deg + 1)]
    for _ in range(deg + 1):
        if vals[0].denominator != 1:
            return False
        vals = [y - x for x, y in zip(vals, vals[1:])]
    return True


def binomial_coords(p: MultiPoly, a: int, m: int) -> list[Fraction]:
    """Coordinates of s -> p(a + m*s) in the basis C(s, 0), C(s, 1), ..."""
    used = p.used_vars()
    if not used:
        return [p.constant_value()]
    var = used[0]
    deg = p.degree(var)
    vals = [p.eval({var: a + m * s}) for s in range(deg + 1)]
    out = []
    for _ in range(deg + 1):
        out.append(vals[0])
        vals = [y - x for x, y in zip(vals, vals[1:])]
    return out


# -- rational functions -------------------------------------------------------

class RatFunc:
    """Quotient of two polynomials; no gcd normalization beyond cheap cases."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, MultiPoly) else MultiPoly.const(_frac(num))
        den = den if isinstance(den, MultiPoly) else MultiPoly.const(_frac(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = num._align(den)
        # keep the denominator's leading coefficient at 1
        _, lc = den.leading_term()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        if den.is_constant():
            num, den = num * (1 / den.constant_value()), MultiPoly.const(1, den.vars)
        elif num.is_zero():
            den = MultiPoly.const(1, den.vars)
        self.num = num
        self.den = den

    @staticmethod
    def _lift(x) -> RatFunc | None:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (MultiPoly, int, Fraction)):
            return RatFunc(x)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> RatFunc:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RatFunc(1) / (self ** (-k))
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def substitute_many(self, mapping) -> RatFunc:
        return RatFunc(self.num.substitute_many(mapping), self.den.substitute_many(mapping))

    def eval(self, assignment: Mapping[str, Scalar]) -> Fraction:
        d = self.den.eval(assignment)
        if not d:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {dict(assignment)}")
        return self.num.eval(assignment) / d

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


# -- parsing -----------------------------------------------------------------

def _walk(node, vars: tuple[str, ...]):
    if isinstance(node, ast.Expression):
        return _walk(node.body, vars)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return MultiPoly.const(node.value, vars)
    if isinstance(node, ast.Name):
        if node.id not in vars:
            raise ValueError(f"unknown variable {node.id!r}")
        return MultiPoly.var(node.id, vars)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        x = _walk(node.operand, vars)
        return -x if isinstance(node.op, ast.USub) else x
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            k = node.right
            if not (isinstance(k, ast.Constant) and isinstance(k.value, int)):
                raise ValueError("exponents must be integer literals")
            return _walk(node.left, vars) ** k.value
        left, right = _walk(node.left, vars), _walk(node.right, vars)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant():
                raise ValueError("division by a non-constant in a polynomial expression")
            return left / right
    raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")


def parse_poly(text: str, vars: Iterable[str] | None = None) -> MultiPoly:
    """Parse the rendered form (``3/2*u^2*v - u + 1``) or any polynomial expression.

    Without ``vars`` the universe is the sorted set of names that occur.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    if vars is None:
        names = sorted({n.id for n in ast.walk(tree) if isinstance(n, ast.Name)})
        vars = tuple(names)
    return _walk(tree, tuple(vars)).extend(tuple(vars))
