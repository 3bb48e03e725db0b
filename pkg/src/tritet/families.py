"""Constructive solution families, target equations and symbolic identities.

Every family generator returns a :class:`SolutionRecord` that has already
been re-checked against its target equation with exact arithmetic; a
failing check raises :class:`VerificationError` (it means the registry is
wrong, never the caller).

Several printed formulas in the source material contain misprints.  The
generators implement corrected forms; each correction is recorded in the
descriptor's ``corrections`` and the printed variants are kept in
``printed_*`` helpers so the regression tests can show that they fail.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .figurate import reverse_digits, tet, tri
from .polyring import (
    MultiPoly,
    PolyResourceError,
    RatFunc,
    divide_exact,
    poly_vars,
    tet_poly,
    tri_poly,
)


class DomainError(ValueError):
    """Parameters outside a family's declared domain."""


class VerificationError(RuntimeError):
    """A generated solution failed its exact re-check (registry bug)."""


class InvariantError(VerificationError):
    """A recurrence state broke its invariant polynomial."""


# ---------------------------------------------------------------------------
# figurate values for exact rationals and polynomials
# ---------------------------------------------------------------------------

def _t(n):
    if isinstance(n, int):
        return tri(n)
    return n * (n + 1) * Fraction(1, 2)


def _T(n):
    if isinstance(n, int):
        return tet(n)
    return n * (n + 1) * (n + 2) * Fraction(1, 6)


# ---------------------------------------------------------------------------
# target equations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Equation:
    id: str
    text: str
    components: tuple[str, ...]
    residual: Callable[[Mapping], object]
    condition: Callable[[Mapping, Mapping], bool] | None = None


def _harmonic(s):
    tx, ty, tz = _t(s["x"]), _t(s["y"]), _t(s["z"])
    if not (tx and ty and tz):
        raise ZeroDivisionError("harmonic equation needs nonzero triangular numbers")
    return Fraction(1) / tx + Fraction(1) / ty - Fraction(2) / tz


def _palindrome_residual(s):
    value = tri(s["n"]) + s.get("shift", 0)
    if value < 0:
        return value
    return value - reverse_digits(value, s["base"])


def _s_integral(s, params):
    primes = params["S"]
    return all(s_integer_check(Fraction(s[k]), primes) for k in ("x", "y", "z"))


EQUATIONS: dict[str, Equation] = {e.id: e for e in [
    Equation("t2sum", "t_x^2 + t_y^2 = z^2", ("x", "y", "z"),
             lambda s: _t(s["x"]) ** 2 + _t(s["y"]) ** 2 - s["z"] ** 2),
    Equation("T2sum", "T_x^2 + T_y^2 = z^2", ("x", "y", "z"),
             lambda s: _T(s["x"]) ** 2 + _T(s["y"]) ** 2 - s["z"] ** 2),
    Equation("t2sum_tri", "t_x^2 + t_y^2 = t_z^2", ("x", "y", "z"),
             lambda s: _t(s["x"]) ** 2 + _t(s["y"]) ** 2 - _t(s["z"]) ** 2),
    Equation("t2sum_tri_S", "t_x^2 + t_y^2 = t_z^2 in S-integers", ("x", "y", "z"),
             lambda s: _t(s["x"]) ** 2 + _t(s["y"]) ** 2 - _t(s["z"]) ** 2,
             _s_integral),
    Equation("tz_quartic", "t_z = x^4 + y^4", ("x", "y", "z"),
             lambda s: s["x"] ** 4 + s["y"] ** 4 - _t(s["z"])),
    Equation("tz_quartic_mean", "t_z = (x^4 + y^4)/2", ("x", "y", "z"),
             lambda s: Fraction(s["x"] ** 4 + s["y"] ** 4, 2) - _t(s["z"])),
    Equation("pow_sum", "z^n = T_x + T_y", ("x", "y", "z", "n"),
             lambda s: s["z"] ** s["n"] - _T(s["x"]) - _T(s["y"])),
    Equation("sqprod", "z^2 = T_x*T_y", ("x", "y", "z"),
             lambda s: s["z"] ** 2 - _T(s["x"]) * _T(s["y"])),
    Equation("harmonic", "1/t_x + 1/t_y = 2/t_z", ("x", "y", "z"), _harmonic),
    Equation("tet_mean_square", "z^2 = (T_x + T_y)/2", ("x", "y", "z"),
             lambda s: s["z"] ** 2 - Fraction(_T(s["x"]) + _T(s["y"]), 2)),
    Equation("quotient", "t_z = T_y/T_x", ("x", "y", "z"),
             lambda s: _t(s["z"]) * _T(s["x"]) - _T(s["y"])),
    Equation("product", "t_z = T_x*T_y", ("x", "y", "z"),
             lambda s: _t(s["z"]) - _T(s["x"]) * _T(s["y"])),
    Equation("two_pairs", "t_p^2 + t_q^2 = t_r^2 + t_s^2", ("p", "q", "r", "s"),
             lambda s: _t(s["p"]) ** 2 + _t(s["q"]) ** 2 - _t(s["r"]) ** 2 - _t(s["s"]) ** 2),
    Equation("cube_sum", "z^3 = T_a + T_b", ("a", "b", "z"),
             lambda s: s["z"] ** 3 - _T(s["a"]) - _T(s["b"])),
    Equation("palindrome", "t_n + shift is palindromic in base b", ("n", "base", "shift"),
             _palindrome_residual),
]}


def residual(equation_id: str, solution: Mapping):
    """LHS - RHS of the named equation at ``solution`` (exact)."""
    try:
        eq = EQUATIONS[equation_id]
    except KeyError:
        raise KeyError(f"unknown equation {equation_id!r}; known: {sorted(EQUATIONS)}") from None
    return eq.residual(solution)


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

def _jsonable(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, Fraction, MultiPoly)):
        return str(v)
    if isinstance(v, (list, tuple, frozenset, set)):
        return [_jsonable(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v)]
    return v


@dataclass(frozen=True)
class SolutionRecord:
    family: str
    params: dict
    solution: dict
    equation: str
    verified: bool = False

    def values(self) -> tuple:
        return tuple(self.solution.values())

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "solution": {k: _jsonable(v) for k, v in self.solution.items()},
            "equation": self.equation,
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> SolutionRecord:
        """Inverse of :meth:`to_dict` for numeric records."""
        def num(x):
            if isinstance(x, list):
                return tuple(num(y) for y in x)
            if isinstance(x, bool) or not isinstance(x, str):
                return x
            f = Fraction(x)
            return int(f) if f.denominator == 1 else f
        return cls(d["family"], {k: num(v) for k, v in d["params"].items()},
                   {k: num(v) for k, v in d["solution"].items()},
                   d["equation"], d["verified"])


def verify(record: SolutionRecord) -> bool:
    """Re-check a record's target equation from scratch."""
    eq = EQUATIONS.get(record.equation)
    if eq is None:
        return False
    if any(c not in record.solution for c in eq.components if c not in ("shift",)):
        return False
    try:
        r = eq.residual(record.solution)
    except ZeroDivisionError:
        return False
    if r != 0:
        return False
    if eq.condition is not None and not eq.condition(record.solution, record.params):
        return False
    return True


def _finish(family: str, params: dict, solution: dict, equation: str) -> SolutionRecord:
    rec = SolutionRecord(family, dict(params), dict(solution), equation)
    if not verify(rec):
        raise VerificationError(f"{family} {params} produced a non-solution {solution}")
    return SolutionRecord(family, rec.params, rec.solution, equation, True)


# ---------------------------------------------------------------------------
# affine recurrences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineRecurrence:
    """s_n = M s_{n-1} + c, optionally preserving ``invariant`` == ``invariant_value``.

    Entries may be ints, Fractions or polynomials.  The invariant is a
    polynomial whose variables include ``names`` (one per state slot);
    it may also mention parameters appearing in polynomial entries.
    """

    names: tuple[str, ...]
    matrix: tuple[tuple, ...]
    offset: tuple
    initial: tuple
    invariant: MultiPoly | None = None
    invariant_value: object = 0

    def __post_init__(self):
        d = len(self.names)
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            raise ValueError("step matrix does not match state dimension")
        if len(self.offset) != d or len(self.initial) != d:
            raise ValueError("offset/initial state dimension mismatch")

    def invariant_at(self, state: Sequence):
        mapping = dict(zip(self.names, state))
        if all(isinstance(x, (int, Fraction)) for x in state):
            return self.invariant.eval(mapping)
        return self.invariant.substitute_many(mapping)

    def check(self, state: Sequence) -> None:
        if self.invariant is None:
            return
        val = self.invariant_at(state)
        if val != self.invariant_value:
            raise InvariantError(f"invariant broken at state {tuple(map(str, state))}: {val}")

    def step(self, state: Sequence) -> tuple:
        if len(state) != len(self.names):
            raise ValueError("state dimension mismatch")
        out = []
        for row, c in zip(self.matrix, self.offset):
            acc = c
            for m, s in zip(row, state):
                if isinstance(m, int) and m == 0:
                    continue
                acc = acc + m * s
            out.append(acc)
        out = tuple(out)
        self.check(out)
        return out

    def iterate(self, n: int) -> tuple:
        """State after n steps from the initial state."""
        if n < 0:
            raise ValueError("step count must be >= 0")
        s = tuple(self.initial)
        self.check(s)
        for _ in range(n):
            s = self.step(s)
        return s

    def states(self, count: int):
        s = tuple(self.initial)
        self.check(s)
        for _ in range(count):
            yield s
            s = self.step(s)


def step(rec: AffineRecurrence, s: Sequence) -> tuple:
    return rec.step(s)


def iterate(rec: AffineRecurrence, n: int) -> tuple:
    return rec.iterate(n)


# named polynomials ------------------------------------------------------------

def consec_f(x):
    """8x^2 + 4x + 1: T_{6x}^2 + T_{6x+1}^2 = (3x+1)^2 (6x+1)^2 f(x)."""
    return 8 * x**2 + 4 * x + 1


def lucas_h(u, v):
    return -1 + u**2 - 6 * u * v + v**2


def harmonic_f(x, y):
    return -x + x**2 - y - 4 * x * y + y**2


def quartic_f(w):
    return 60 * w**2 - 61 * w + 16


def cube_F(x, y):
    return x**2 - 24 * y**2 - 4


def sqprod_f1(x):
    return (x + 2) * (2 * x + 1) * Fraction(1, 9)


def sqprod_f2(x):
    return x * (2 * x + 3) * Fraction(1, 9)


def eq1_f(k, q, u):
    """Pell-type quadratic in k whose square values give the polynomial family."""
    return (u**4 - 4) * Fraction(1, 4) * k**2 - u**3 * k + u**2 + 1


def _state_poly(names: str, fn):
    vs = poly_vars(*names.split())
    return fn(*vs)


RECURRENCES: dict[str, AffineRecurrence] = {
    "F-TET-CONSEC": AffineRecurrence(
        ("x", "z"), ((17, 6), (48, 17)), (4, 12), (0, 1),
        _state_poly("x z", lambda x, z: z**2 - consec_f(x))),
    "F-TET-LUCAS": AffineRecurrence(
        ("a", "b"), ((0, 1), (-1, 6)), (0, 0), (6, 35),
        _state_poly("a b", lucas_h)),
    "F-HARMONIC": AffineRecurrence(
        ("a", "b"), ((0, 1), (-1, 4)), (0, 1), (1, 5),
        _state_poly("a b", harmonic_f)),
    "F-QUARTIC-AP": AffineRecurrence(
        ("w", "v"), ((1921, 248), (14880, 1921)), (-976, -7564), (0, 4),
        _state_poly("w v", lambda w, v: v**2 - quartic_f(w))),
    "F-CUBE": AffineRecurrence(
        ("x", "y"), ((5, 24), (1, 5)), (0, 0), (2, 0),
        _state_poly("x y", cube_F)),
    "F-SQPROD-A": AffineRecurrence(
        ("u", "v"), ((17, 36), (8, 17)), (20, 10), (1, 1),
        _state_poly("u v", lambda u, v: v**2 - sqprod_f1(u))),
    # b^2 - 2a^2 = 1; u = 3a^2 then solves v^2 = f2(u) with v = a*b
    "F-SQPROD-B": AffineRecurrence(
        ("b", "a"), ((3, 4), (2, 3)), (0, 0), (1, 0),
        _state_poly("b a", lambda b, a: b**2 - 2 * a**2), 1),
}


def _eq1_recurrence() -> AffineRecurrence:
    u = MultiPoly.var("u")
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    m = (
        ((u**4 - 2) * half, u**2),
        (u**2 * (u**4 - 4) * quarter, (u**4 - 2) * half),
    )
    c = (-(u**3), -(u**5) * half)
    s0 = (MultiPoly.const(1, ("u",)), u * (u - 2) * half)
    k, q, uu = poly_vars("k", "q", "u")
    inv = eq1_f(k, q, uu) - q**2
    return AffineRecurrence(("k", "q"), m, c, s0, inv, 0)


RECURRENCES["F-EQ1-POLY"] = _eq1_recurrence()


# ---------------------------------------------------------------------------
# family generators
# ---------------------------------------------------------------------------

def _int_param(params: Mapping, name: str, minimum: int | None = None) -> int:
    if name not in params:
        raise DomainError(f"missing parameter {name!r}")
    v = params[name]
    if isinstance(v, Fraction) and v.denominator == 1:
        v = int(v)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DomainError(f"{name} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {v}")
    return v


def _rat_param(params: Mapping, name: str) -> Fraction:
    if name not in params:
        raise DomainError(f"missing parameter {name!r}")
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
        raise DomainError(f"{name} must be rational, got {v!r}")
    return Fraction(v)


EQ1_MAX_N = 3


def eq1_polynomials(n: int, allow_large: bool = False) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Polynomials (x_n, y_n, z_n) in Q[u] with t_x^2 + t_y^2 = z^2."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n > EQ1_MAX_N and not allow_large:
        raise DomainError(f"n must be <= {EQ1_MAX_N} unless allow_large is set")
    k, q = RECURRENCES["F-EQ1-POLY"].iterate(n)
    u = MultiPoly.var("u")
    p = k * u - 1
    r = u**2 * (k * u - 2) ** 2 * Fraction(1, 4) + k**2
    return (p - 1) * Fraction(1, 2), (q - 1) * Fraction(1, 2), r * Fraction(1, 8)


def printed_eq1_z(n: int) -> MultiPoly:
    """z_n built from the printed r_n = u^2 (k_n - 2)^2/4 + k_n^2 (misprint L1)."""
    k, _ = RECURRENCES["F-EQ1-POLY"].iterate(n)
    u = MultiPoly.var("u")
    return (u**2 * (k - 2) ** 2 * Fraction(1, 4) + k**2) * Fraction(1, 8)


def _gen_eq1(params):
    n = _int_param(params, "n", 0)
    polys = eq1_polynomials(n, bool(params.get("allow_large", False)))
    if "u" in params and params["u"] is not None:
        u = _rat_param(params, "u")
        vals = [p.eval({"u": u}) for p in polys]
        vals = [int(v) if v.denominator == 1 else v for v in vals]
        return {"n": n, "u": params["u"]}, dict(zip("xyz", vals))
    return {"n": n}, dict(zip("xyz", polys))


def txyz_rational(u, v):
    """Rational (x, y, z) with t_x^2 + t_y^2 = t_z^2; works for numbers and polynomials."""
    if isinstance(u, MultiPoly) or isinstance(v, MultiPoly):
        u, v = RatFunc(u), RatFunc(v)
    common = u**2 - 2 * u * v + 3 * v**2
    x = u * common / ((u - v) ** 2 * v)
    y = (u + v) * common / (2 * (u - v) * v**2)
    z = (u**4 - 2 * u**3 * v + 2 * u**2 * v**2 + 2 * u * v**3 + v**4) / (2 * (u - v) ** 2 * v**2)
    return x, y, z


def _normalize(q: Fraction):
    return int(q) if q.denominator == 1 else q


def _gen_txyz(params):
    u, v = _rat_param(params, "u"), _rat_param(params, "v")
    if v == 0 or u == v:
        raise DomainError("need v != 0 and u != v")
    x, y, z = txyz_rational(u, v)
    return {"u": u, "v": v}, {"x": _normalize(x), "y": _normalize(y), "z": _normalize(z)}


def _factor_over(n: int, primes: Iterable[int]) -> int:
    """Strip every prime of ``primes`` from |n|; return the cofactor."""
    n = abs(n)
    for p in primes:
        if p < 2:
            continue
        while n and n % p == 0:
            n //= p
    return n


def s_integer_check(r: Fraction, S: Iterable[int]) -> bool:
    """True iff every prime dividing the denominator of r lies in S."""
    return _factor_over(Fraction(r).denominator, tuple(S)) == 1


def _gen_sint(params):
    S = tuple(sorted(set(params.get("S", ()))))
    if 2 not in S:
        raise DomainError("S must contain 2")
    U = _int_param(params, "U", 1)
    V = _int_param(params, "V", 1)
    m = _int_param(params, "m", 0)
    n = _int_param(params, "n", 0)
    for name, val in (("U", U), ("V", V)):
        if _factor_over(val, S) != 1:
            raise DomainError(f"{name} = {val} is not a product of primes from S")
    v = Fraction(V**n)
    u = Fraction(U**m - V**n)
    if u == v:
        raise DomainError("U^m = 2 V^n makes the parametrization degenerate")
    # denominators are built from v, u - v and 2, so u - v must be an S-unit as well
    if _factor_over(int(u - v), S) != 1:
        raise DomainError(f"U^m - 2 V^n = {u - v} has a prime factor outside S")
    x, y, z = txyz_rational(u, v)
    return ({"S": S, "U": U, "V": V, "m": m, "n": n},
            {"x": _normalize(x), "y": _normalize(y), "z": _normalize(z)})


def _gen_tet_consec(params):
    n = _int_param(params, "n", 0)
    x, z = RECURRENCES["F-TET-CONSEC"].iterate(n)
    return {"n": n}, {"x": 6 * x, "y": 6 * x + 1, "z": (3 * x + 1) * (6 * x + 1) * z}


def lucas_Z(u, v, primed: bool = False):
    s = 1 if primed else -1
    return (105 * v**4 - 108 * u * v**3 + (150 * u**2 + s * 96) * v**2
            - 4 * u * (27 * u**2 + s * 16) * v + 3 * (u**2 + s * 1) * (35 * u**2 - s * 3))


def lucas_xyz(u, v, primed: bool = False):
    x = v**2 - u**2 - 1
    y = (3 * v**2 - 2 * u * v + 3 * u**2 - 3) * Fraction(1, 2)
    if primed:
        y = y + 1
    z = (v**2 - u**2) * lucas_Z(u, v, primed) * Fraction(1, 192)
    return x, y, z


def _gen_lucas(primed):
    def gen(params):
        n = _int_param(params, "n", 1)
        a, b = RECURRENCES["F-TET-LUCAS"].iterate(n - 1)
        x, y, z = (_normalize(Fraction(c)) for c in lucas_xyz(a, b, primed))
        return {"n": n}, {"x": x, "y": y, "z": z}
    return gen


def harmonic_sequence(count: int) -> list[int]:
    """x_0 = 1, x_1 = 5, x_n = 4 x_{n-1} - x_{n-2} + 1."""
    return [s[0] for s in RECURRENCES["F-HARMONIC"].states(count)]


def printed_harmonic_sequence(count: int) -> list[int]:
    """The printed recurrence x_n = 4x_{n-2} - x_{n-2} + 1 (misprint L2)."""
    xs = [1, 5]
    while len(xs) < count:
        xs.append(4 * xs[-2] - xs[-2] + 1)
    return xs[:count]


def _gen_harmonic(params):
    n = _int_param(params, "n", 1)
    if n % 2 == 0:
        raise DomainError("n must be odd")
    a, b = RECURRENCES["F-HARMONIC"].iterate(n)
    return {"n": n}, {"x": a, "y": b, "z": (b - a - 1) // 2}


def _gen_sq_ap(params):
    u = _int_param(params, "u")
    if u % 3 == 0:
        raise DomainError("u must not be divisible by 3 (u = 1, 2 mod 3)")
    return {"u": u}, {"x": (u * u - 1) // 3, "y": (2 * u * u - 5) // 3, "z": tet(u - 1)}


def _gen_quartic(params):
    n = _int_param(params, "n", 0)
    w, v = RECURRENCES["F-QUARTIC-AP"].iterate(n)
    return {"n": n}, {"x": v, "y": abs(5 * w - 2), "z": 65 * w * w - 64 * w + 16}


def printed_quartic_y(w: int) -> int:
    """The printed y_n = 60w^2 - 61w + 16 (misprint L3)."""
    return 60 * w * w - 61 * w + 16


def quot_a(u):
    return (u**3 + 3 * u**2 + 2 * u - 4) * Fraction(1, 2)


def quot_b_z(u):
    return (u**3 + 3 * u**2 + 2 * u + 2) * Fraction(1, 2)


def printed_quot_a(u):
    """Printed (u^3 + u^2 + 2u - 4)/2 (misprint L4)."""
    return (u**3 + u**2 + 2 * u - 4) * Fraction(1, 2)


def printed_quot_b_z(u):
    """Printed (u^3 + u^2 + 2u + 2)/2 (misprint L4)."""
    return (u**3 + u**2 + 2 * u + 2) * Fraction(1, 2)


def _gen_quot(variant):
    def gen(params):
        u = _int_param(params, "u", 1)
        if variant == "A":
            y = _normalize(quot_a(u))
            return {"u": u}, {"x": u, "y": y, "z": y}
        y = 3 * tet(u)
        return {"u": u}, {"x": u, "y": y, "z": _normalize(quot_b_z(u))}
    return gen


def product_rows(u):
    """The nine (x, y, z) triples with t_z = T_x T_y (numbers or polynomials)."""
    half = Fraction(1, 2)
    f = (81 * u**3 + 27 * u**2 + 2 * u - 2) * half
    g = (81 * u**3 - u - 2) * half
    h = (81 * u**3 - 27 * u**2 + 2 * u - 2) * half
    return [
        (9 * u, f, (f + 2) * f),
        (9 * u, 4 * f + 1, u * (9 * u + 1) * (9 * u + 2) * (162 * u**3 + 54 * u**2 + 4 * u - 3)),
        (9 * u, 4 * f + 5, u * (9 * u + 1) * (9 * u + 2) * (162 * u**3 + 54 * u**2 + 4 * u + 3)),
        (9 * u - 1, g, g * (g + 2)),
        (9 * u - 1, 4 * g + 1, u * (9 * u - 1) * (9 * u + 1) * (162 * u**3 - 2 * u - 3)),
        (9 * u - 1, 4 * g + 5, u * (9 * u - 1) * (9 * u + 1) * (162 * u**3 - 2 * u + 3)),
        (9 * u - 2, h, h * (h + 2)),
        (9 * u - 2, 4 * h + 1, u * (9 * u - 2) * (9 * u - 1) * (162 * u**3 - 54 * u**2 + 4 * u - 3)),
        (9 * u - 2, 4 * h + 5, u * (9 * u - 2) * (9 * u - 1) * (162 * u**3 - 54 * u**2 + 4 * u + 3)),
    ]


def _gen_prod(i):
    def gen(params):
        u = _int_param(params, "u", 1)
        x, y, z = (_normalize(Fraction(c)) for c in product_rows(u)[i])
        return {"u": u}, {"x": x, "y": y, "z": z}
    return gen


def twopair_pqrs(b, printed: bool = False):
    """(p, q, r, s) with t_p^2 + t_q^2 = t_r^2 + t_s^2; ``printed`` uses the (b+1) misprint (L5)."""
    sixth = Fraction(1, 6)
    lead = (b + 1) if printed else (b - 1)
    p = lead * (b**3 + 4 * b**2 + 2 * b + 2) * sixth
    q = (b**5 + b**3 - 2 * b - 6) * sixth
    r = (b + 1) * (b**3 - 4 * b**2 + 2 * b - 2) * sixth
    s = b * (b**2 - 1) * (b**2 + 2) * sixth
    return p, q, r, s


def _gen_twopair(params):
    b = _int_param(params, "b")
    if b % 3 != 1:
        raise DomainError("b must be ≡ 1 (mod 3)")
    p, q, r, s = (_normalize(Fraction(c)) for c in twopair_pqrs(b))
    return {"b": b}, {"p": p, "q": q, "r": r, "s": s}


def _gen_cube(params):
    n = _int_param(params, "n", 0)
    # index 0 is the first positive solution; the seed (2, 0) gives T_1 + T_{-1} = 1
    x, y = RECURRENCES["F-CUBE"].iterate(n + 1)
    return {"n": n}, {"a": x + 5 * y - 1, "b": y - 1, "z": (x + 6 * y) // 2}


def _gen_sqprod_a(params):
    n = _int_param(params, "n", 0)
    u, v = RECURRENCES["F-SQPROD-A"].iterate(n)
    return {"n": n}, {"x": u, "y": 2 * u, "z": v * u * (u + 1)}


def _gen_sqprod_b(params):
    n = _int_param(params, "n", 0)
    b, a = RECURRENCES["F-SQPROD-B"].iterate(n)
    u = 3 * a * a
    return {"n": n}, {"x": u, "y": 2 * u + 2, "z": (u + 1) * (u + 2) * a * b}


def _pal_index(base):
    def gen(params):
        k = _int_param(params, "k", 1)
        if base == 2:
            n = 2 ** (2**k) + 1
        elif base in (3, 9):
            n = (3**k - 1) // 2
        else:
            n = (base**k - 1) // 2
        return {"k": k}, {"n": n, "base": base, "shift": 0}
    return gen


def _gen_apal(shift):
    def gen(params):
        if shift > 0:
            k = _int_param(params, "k", 0)
            n = 2 * 10 ** (k + 1) + 1
        else:
            k = _int_param(params, "k", 1)
            n = 2 * 10**k + 2
        return {"k": k}, {"n": n, "base": 10, "shift": shift}
    return gen


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyDescriptor:
    id: str
    reference: str
    domain: str
    equation: str
    generator: Callable[[Mapping], tuple[dict, dict]] = field(repr=False)
    corrections: tuple[str, ...] = ()
    provenance: str = "as printed"
    index_param: str | None = None

    @property
    def target(self) -> str:
        return EQUATIONS[self.equation].text

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "reference": self.reference,
            "domain": self.domain,
            "equation": self.equation,
            "target": self.target,
            "corrections": list(self.corrections),
            "provenance": self.provenance,
        }


_L1 = ("L1: printed r_n = u^2(k_n - 2)^2/4 + k_n^2; the Pythagorean leg a = u(k u - 2)/2 "
       "forces r_n = u^2(k_n u - 2)^2/4 + k_n^2 (u=3, n=1 gives z = 1709)")
_L2 = ("L2: printed x_n = 4x_{n-2} - x_{n-2} + 1 is degenerate; f(x, y) = f(y, 4y - x + 1) "
       "gives x_n = 4x_{n-1} - x_{n-2} + 1 (76, 285, 1065, 3976)")
_L3 = ("L3: printed y_n = 60w_n^2 - 61w_n + 16 contradicts (4, 2, 16) and (120, 78, 15632); "
       "y_n = |5w_n - 2|")
_L4 = ("L4: printed u^3 + u^2 + 2u - 4 and u^3 + u^2 + 2u + 2 fail at u = 2, 3; "
       "the middle coefficient is 3u^2")
_L5 = ("L5: printed p(b) = (b+1)(b^3 + 4b^2 + 2b + 2)/6 fails at b = 4; "
       "the leading factor is (b - 1)")
_L6 = ("L6: no recurrence is printed for v^2 = u(2u+3)/9; u = 3a^2, v = ab with "
       "b^2 - 2a^2 = 1, stepping (b, a) -> (3b + 4a, 2b + 3a)")


FAMILIES: list[FamilyDescriptor] = [
    FamilyDescriptor("F-EQ1-POLY", "polynomial solutions of z^2 = t_x^2 + t_y^2 from the "
                     "Pell-type recurrence k_0 = 1, q_0 = u(u-2)/2",
                     "n >= 0 (n <= 3 unless allow_large); optional u to evaluate",
                     "t2sum", _gen_eq1, (_L1,), index_param="n"),
    FamilyDescriptor("F-TXYZ-RAT", "rational parametric solution of t_x^2 + t_y^2 = t_z^2",
                     "rational u, v with v != 0, u != v", "t2sum_tri", _gen_txyz),
    FamilyDescriptor("F-SINT", "S-integer solutions of t_x^2 + t_y^2 = t_z^2 via v = V^n, "
                     "u = U^m - V^n", "prime set S containing 2; U, V products of primes of S; U^m - 2V^n an S-unit",
                     "t2sum_tri_S", _gen_sint),
    FamilyDescriptor("F-TET-CONSEC", "T_{6x}^2 + T_{6x+1}^2 = z^2 along the Pell equation "
                     "8x^2 + 4x + 1 = z^2", "n >= 0", "T2sum", _gen_tet_consec, index_param="n"),
    FamilyDescriptor("F-TET-LUCAS", "T_x^2 + T_y^2 = z^2 with y - x unbounded, "
                     "(u, v) along h(u, v) = 0 with Z(u, v)", "n >= 1", "T2sum",
                     _gen_lucas(False), index_param="n"),
    FamilyDescriptor("F-TET-LUCAS-P", "T_x^2 + T_y^2 = z^2 with y - x unbounded, "
                     "variant y' = y + 1 with Z'(u, v)", "n >= 1", "T2sum",
                     _gen_lucas(True), index_param="n"),
    FamilyDescriptor("F-HARMONIC", "1/t_x + 1/t_y = 2/t_z from f(x, y) = x^2 - 4xy + y^2 - x - y = 0",
                     "odd n >= 1", "harmonic", _gen_harmonic, (_L2,), index_param="n"),
    FamilyDescriptor("F-SQ-AP", "(T_{(u^2-1)/3} + T_{(2u^2-5)/3})/2 = T_{u-1}^2",
                     "integer u, u = 1 or 2 (mod 3)", "tet_mean_square", _gen_sq_ap),
    FamilyDescriptor("F-QUARTIC-AP", "t_z = (x^4 + y^4)/2 along v^2 = 60w^2 - 61w + 16",
                     "n >= 0", "tz_quartic_mean", _gen_quartic, (_L3,), index_param="n"),
    FamilyDescriptor("F-QUOT-A", "t_z = T_y/T_x with x = u, z = y = (u^3 + 3u^2 + 2u - 4)/2",
                     "u >= 1", "quotient", _gen_quot("A"), (_L4,)),
    FamilyDescriptor("F-QUOT-B", "t_z = T_y/T_x with x = u, y = 3T_u, z = 3T_u + 1",
                     "u >= 1", "quotient", _gen_quot("B"), (_L4,)),
    *[FamilyDescriptor(f"F-PROD-{i + 1}", f"t_z = T_x T_y, polynomial row {i + 1} of nine",
                       "u >= 1", "product", _gen_prod(i)) for i in range(9)],
    FamilyDescriptor("F-TWOPAIR", "t_p^2 + t_q^2 = t_r^2 + t_s^2 (Euler-style two-pair family)",
                     "integer b ≡ 1 (mod 3)", "two_pairs", _gen_twopair, (_L5,)),
    FamilyDescriptor("F-CUBE", "z^3 = T_{x+5y-1} + T_{y-1} along x^2 - 24y^2 = 4",
                     "n >= 0 (n = 0 is T_19 + T_1 = 11^3)", "cube_sum", _gen_cube,
                     index_param="n"),
    FamilyDescriptor("F-SQPROD-A", "z^2 = T_u T_{2u} along v^2 = (u+2)(2u+1)/9",
                     "n >= 0", "sqprod", _gen_sqprod_a, index_param="n"),
    FamilyDescriptor("F-SQPROD-B", "z^2 = T_u T_{2u+2} along v^2 = u(2u+3)/9",
                     "n >= 0", "sqprod", _gen_sqprod_b, (_L6,),
                     provenance="derived, oracle: exhaustive u <= 10^4", index_param="n"),
    FamilyDescriptor("F-PAL-2", "n = 2^(2^k) + 1: t_n = 1 0..0 11 0..0 1 in base 2",
                     "k >= 1", "palindrome", _pal_index(2), index_param="k"),
    FamilyDescriptor("F-PAL-3", "n = (3^k - 1)/2: t_n = 1010..101 in base 3",
                     "k >= 1", "palindrome", _pal_index(3), index_param="k"),
    FamilyDescriptor("F-PAL-5", "n = (5^k - 1)/2: t_n = 3030..303 in base 5",
                     "k >= 1", "palindrome", _pal_index(5), index_param="k"),
    FamilyDescriptor("F-PAL-7", "n = (7^k - 1)/2: t_n = 6060..606 in base 7",
                     "k >= 1", "palindrome", _pal_index(7), index_param="k"),
    FamilyDescriptor("F-PAL-9", "n = (3^k - 1)/2: t_n = 11..11 in base 9",
                     "k >= 1", "palindrome", _pal_index(9), index_param="k"),
    FamilyDescriptor("F-APAL-PLUS", "n = 2*10^(k+1) + 1: t_n + 1 = 2 0..0 3 0..0 2",
                     "k >= 0", "palindrome", _gen_apal(+1), index_param="k"),
    FamilyDescriptor("F-APAL-MINUS", "n = 2*10^k + 2: t_n - 1 = 2 0..0 5 0..0 2",
                     "k >= 1", "palindrome", _gen_apal(-1), index_param="k"),
]

_BY_ID = {f.id: f for f in FAMILIES}


def list_families() -> list[FamilyDescriptor]:
    return list(FAMILIES)


def get_family(family_id: str) -> FamilyDescriptor:
    try:
        return _BY_ID[family_id]
    except KeyError:
        raise KeyError(f"unknown family {family_id!r}") from None


def generate(family_id: str, **params) -> SolutionRecord:
    """One verified solution of a family."""
    fam = get_family(family_id)
    used, sol = fam.generator(params)
    return _finish(fam.id, used, sol, fam.equation)


def generate_range(family_id: str, indices: Iterable[int], **params) -> list[SolutionRecord]:
    """Verified solutions for a range of the family's index parameter."""
    fam = get_family(family_id)
    if fam.index_param is None:
        raise DomainError(f"{family_id} has no index parameter")
    return [generate(family_id, **{**params, fam.index_param: i}) for i in indices]


# ---------------------------------------------------------------------------
# identity registry
# ---------------------------------------------------------------------------

ZERO = "zero"
NONZERO = "nonzero-with-residual"
DIVISIBLE = "divisibility-ok-with-cofactor"
RESOURCE = "resource-limit"


@dataclass(frozen=True)
class IdentityReport:
    id: str
    reference: str
    status: str
    residual: object = None
    cofactor: MultiPoly | None = None
    variant: str = "corrected"

    @property
    def ok(self) -> bool:
        return self.status in (ZERO, DIVISIBLE)

    def to_dict(self) -> dict:
        d = {"identity": self.id, "reference": self.reference, "status": self.status,
             "variant": self.variant}
        if self.residual is not None:
            d["residual"] = str(self.residual)
        if self.cofactor is not None:
            d["cofactor"] = str(self.cofactor)
            d["cofactor_degree"] = self.cofactor.total_degree()
        return d


@dataclass(frozen=True)
class _Identity:
    id: str
    reference: str
    build: Callable[[], list]
    printed: Callable[[], list] | None = None
    divisor: Callable[[], MultiPoly] | None = None
    cofactor_scale: Fraction | int = 1


def _i1():
    u, k, q = poly_vars("u", "k", "q")
    f = lambda kk: eq1_f(kk, q, u)
    arg = (u**4 - 2) * k * Fraction(1, 2) + u**2 * q - u**3
    sq = (u**2 * (u**4 - 4) * k + 2 * (u**4 - 2) * q - 2 * u**5) * Fraction(1, 4)
    return [f(arg) - sq**2 - (f(k) - q**2)]


def _i2():
    x, y, z = eq1_polynomials(1)
    u = MultiPoly.var("u")
    px = (u**5 - 2 * u**4 - u - 2) * Fraction(1, 2)
    py = (u**2 + 1) * (u**4 - 2 * u**3 - u**2 + 2 * u - 2) * Fraction(1, 4)
    pz = (u**12 - 4 * u**11 + 4 * u**10 + 2 * u**8 - 16 * u**7 + 24 * u**6 - 7 * u**4
          + 20 * u**3 + 4 * u**2 + 4) * Fraction(1, 32)
    return [tri_poly(px) ** 2 + tri_poly(py) ** 2 - pz**2, x - px, y - py, z - pz]


def _i3():
    u, v, T = poly_vars("u", "v", "T")
    p = 2 * u * v * T - 1
    q = (v**2 - u**2) * T + 1
    r = (v**2 + u**2) * T + 1
    rhs = (-8 * T**3 * u**2 * (u + v) ** 2 * (u**2 - 2 * u * v + 3 * v**2)
           - 8 * T**4 * u**2 * (u + v) ** 2 * (u**2 * v**2 - 2 * u * v**3 + v**4))
    return [(p**2 - 1) ** 2 + (q**2 - 1) ** 2 - (r**2 - 1) ** 2 - rhs]


def _i4():
    u, v = poly_vars("u", "v")
    x, y, z = txyz_rational(u, v)
    return [tri_poly(x) ** 2 + tri_poly(y) ** 2 - tri_poly(z) ** 2]


def _i5():
    x = MultiPoly.var("x")
    return [tet_poly(6 * x) ** 2 + tet_poly(6 * x + 1) ** 2
            - (3 * x + 1) ** 2 * (6 * x + 1) ** 2 * consec_f(x)]


def _i6():
    x, z = poly_vars("x", "z")
    return [consec_f(17 * x + 6 * z + 4) - (48 * x + 17 * z + 12) ** 2 - (consec_f(x) - z**2)]


def _i7(primed):
    def build():
        u, v = poly_vars("u", "v")
        x, y, z = lucas_xyz(u, v, primed)
        return [36864 * (tet_poly(x) ** 2 + tet_poly(y) ** 2 - z**2)]
    return build


def _lucas_divisor():
    u, v = poly_vars("u", "v")
    h = lucas_h(u, v)
    return h * (h + 2)


def _i8():
    u, v = poly_vars("u", "v")
    return [lucas_h(u, v) - lucas_h(v, 6 * v - u)]


def _i9():
    x, y = poly_vars("x", "y")
    X, Y = RatFunc(x), RatFunc(y)
    tx, ty = tri_poly(X), tri_poly(Y)
    lhs = tri_poly((Y - X - 1) / 2) - 2 * tx * ty / (tx + ty)
    rhs = RatFunc((x + y + 1) ** 2 * harmonic_f(x, y), 8 * (x**2 + y**2 + x + y))
    return [lhs - rhs, harmonic_f(x, y) - harmonic_f(y, 4 * y - x + 1)]


def _i10():
    u = MultiPoly.var("u")
    third = Fraction(1, 3)
    return [(tet_poly((u**2 - 1) * third) + tet_poly((2 * u**2 - 5) * third)) * Fraction(1, 2)
            - tet_poly(u - 1) ** 2]


def _i11():
    w = MultiPoly.var("w")
    return [(130 * w**2 - 128 * w + 33) ** 2 - 4 * quartic_f(w) ** 2 - 4 * (5 * w - 2) ** 4 - 1]


def _i12():
    v, w = poly_vars("v", "w")
    return [(1921 * v + 14880 * w - 7564) ** 2 - quartic_f(248 * v + 1921 * w - 976)
            - (v**2 - quartic_f(w))]


def _i13(variant, printed=False):
    def build():
        u = MultiPoly.var("u")
        if variant == "A":
            y = printed_quot_a(u) if printed else quot_a(u)
            z = y
        else:
            y = 3 * tet_poly(u)
            z = printed_quot_b_z(u) if printed else quot_b_z(u)
        return [tri_poly(z) * tet_poly(u) - tet_poly(y)]
    return build


def _i14(i):
    def build():
        u = MultiPoly.var("u")
        x, y, z = product_rows(u)[i]
        return [tri_poly(z) - tet_poly(x) * tet_poly(y)]
    return build


def _i15(printed=False):
    def build():
        b = MultiPoly.var("b")
        p, q, r, s = twopair_pqrs(b, printed)
        return [tri_poly(p) ** 2 + tri_poly(q) ** 2 - tri_poly(r) ** 2 - tri_poly(s) ** 2]
    return build


def _i16(printed=False):
    def build():
        T, b, c, d = poly_vars("T", "b", "c", "d")
        f = lambda X, Y: (X**2 - 1) ** 2 + (Y**2 - 1) ** 2
        a2 = (b**2 - 1) * (c**2 - d**2)
        a3 = c * (b**3 - 1) + d * (b**3 + 1)
        if printed:
            a1 = (b - 1) * c * (c**2 - 1) - (b + 1) * d * (d**2 - 1)
            lin = -2 * a1 * T
        else:
            a1 = (b - 1) * c * (c**2 - 1) + (b + 1) * d * (d**2 - 1)
            lin = -4 * a1 * T
        diff = f(T + c, b * T - d) - f(T + d, b * T + c)
        g = lin - 6 * a2 * T**2 - 4 * a3 * T**3
        # specialization c = -b^3 - 1, d = b^3 - 1 kills the cubic term
        spec = {"c": -(b**3) - 1, "d": b**3 - 1}
        g_spec = -8 * b**3 * (b**2 - 1) * T * (3 * T + b**4 - 2 * b**2 - 2)
        return [diff - g, a3.substitute_many(spec), diff.substitute_many(spec) - g_spec]
    return build


def _i17(printed=False):
    def build():
        x, y = poly_vars("x", "y")
        F = cube_F(x, y)
        sign = 1 if printed else -1
        lhs = ((x + 6 * y) * Fraction(1, 2)) ** 3 - tet_poly(x + 5 * y - 1) - tet_poly(y - 1)
        return [lhs - sign * (x + 6 * y) * F * Fraction(1, 24),
                cube_F(5 * x + 24 * y, x + 5 * y) - F]
    return build


def _i18():
    x = MultiPoly.var("x")
    return [tet_poly(x) * tet_poly(2 * x) - x**2 * (x + 1) ** 2 * sqprod_f1(x),
            tet_poly(x) * tet_poly(2 * x + 2) - (x + 1) ** 2 * (x + 2) ** 2 * sqprod_f2(x)]


def _i18p():
    u, v = poly_vars("u", "v")
    return [(8 * u + 17 * v + 10) ** 2 - sqprod_f1(17 * u + 36 * v + 20) - (v**2 - sqprod_f1(u))]


IDENTITIES: list[_Identity] = [
    _Identity("I-1", "Pell step for f(k) = (u^4-4)/4 k^2 - u^3 k + u^2 + 1", _i1),
    _Identity("I-2", "x_1, y_1, z_1 solve t_x^2 + t_y^2 = z^2 and match the recurrence", _i2),
    _Identity("I-3", "(p^2-1)^2 + (q^2-1)^2 - (r^2-1)^2 in T", _i3),
    _Identity("I-4", "rational x(u,v), y(u,v), z(u,v) solve t_x^2 + t_y^2 = t_z^2", _i4),
    _Identity("I-5", "T_{6x}^2 + T_{6x+1}^2 = (3x+1)^2 (6x+1)^2 (8x^2 + 4x + 1)", _i5),
    _Identity("I-6", "f(17x + 6z + 4) - (48x + 17z + 12)^2 = f(x) - z^2", _i6),
    _Identity("I-7", "36864 (T_x^2 + T_y^2 - z^2) = h (h + 2) H", _i7(False),
              divisor=_lucas_divisor),
    _Identity("I-7'", "36864 (T_x'^2 + T_y'^2 - z'^2) = h (h + 2) H'", _i7(True),
              divisor=_lucas_divisor),
    _Identity("I-8", "h(u, v) = h(v, 6v - u)", _i8),
    _Identity("I-9", "t_{(y-x-1)/2} - 2 t_x t_y/(t_x + t_y) and f(x,y) = f(y, 4y-x+1)", _i9),
    _Identity("I-10", "(T_{(u^2-1)/3} + T_{(2u^2-5)/3})/2 = T_{u-1}^2", _i10),
    _Identity("I-11", "(130w^2 - 128w + 33)^2 = 4 f(w)^2 + 4 (5w - 2)^4 + 1", _i11),
    _Identity("I-12", "(1921v + 14880w - 7564)^2 - f(248v + 1921w - 976) = v^2 - f(w)", _i12),
    _Identity("I-13A", "t_y T_u = T_y, y = (u^3 + 3u^2 + 2u - 4)/2", _i13("A"), _i13("A", True)),
    _Identity("I-13B", "t_z T_u = T_{3T_u}, z = (u^3 + 3u^2 + 2u + 2)/2", _i13("B"),
              _i13("B", True)),
    *[_Identity(f"I-14.{i + 1}", f"t_z = T_x T_y, row {i + 1}", _i14(i)) for i in range(9)],
    _Identity("I-15", "t_p^2 + t_q^2 = t_r^2 + t_s^2 with p(b) = (b-1)(b^3 + 4b^2 + 2b + 2)/6",
              _i15(), _i15(True)),
    _Identity("I-16", "f(x,y) - f(u,v) = -4 a_1 T - 6 a_2 T^2 - 4 a_3 T^3, "
              "a_1 = (b-1)c(c^2-1) + (b+1)d(d^2-1)", _i16(), _i16(True)),
    _Identity("I-17", "((x+6y)/2)^3 - T_{x+5y-1} - T_{y-1} = -(x+6y) F(x,y)/24 and "
              "F(5x+24y, x+5y) = F(x,y)", _i17(), _i17(True)),
    _Identity("I-18", "T_x T_{2x} = x^2 (x+1)^2 f_1(x), T_x T_{2x+2} = (x+1)^2 (x+2)^2 f_2(x)",
              _i18),
    _Identity("I-18p", "(8u + 17v + 10)^2 - f_1(17u + 36v + 20) = v^2 - f_1(u)", _i18p),
]

_IDENT_BY_ID = {i.id: i for i in IDENTITIES}


def list_identities() -> list[str]:
    return [i.id for i in IDENTITIES]


def has_printed_variant(identity_id: str) -> bool:
    return _IDENT_BY_ID[identity_id].printed is not None


def _is_zero(e) -> bool:
    if isinstance(e, (MultiPoly, RatFunc)):
        return e.is_zero()
    return e == 0


def check_identity(identity_id: str, variant: str = "corrected") -> IdentityReport:
    """Expand an identity symbolically and report whether it vanishes.

    ``variant="printed"`` checks the uncorrected form where one exists.
    """
    try:
        ident = _IDENT_BY_ID[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None
    if variant == "printed":
        if ident.printed is None:
            raise KeyError(f"{identity_id} has no printed variant")
        build = ident.printed
    elif variant == "corrected":
        build = ident.build
    else:
        raise ValueError(f"variant must be 'corrected' or 'printed', got {variant!r}")
    try:
        parts = build()
        if ident.divisor is not None:
            (expr,) = parts
            h = divide_exact(expr, ident.divisor())
            if h is None:
                return IdentityReport(ident.id, ident.reference, NONZERO, expr, None, variant)
            return IdentityReport(ident.id, ident.reference, DIVISIBLE, None, h, variant)
    except PolyResourceError as exc:
        return IdentityReport(ident.id, ident.reference, RESOURCE, str(exc), None, variant)
    for part in parts:
        if not _is_zero(part):
            return IdentityReport(ident.id, ident.reference, NONZERO, part, None, variant)
    return IdentityReport(ident.id, ident.reference, ZERO, None, None, variant)


def check_all_identities() -> list[IdentityReport]:
    return [check_identity(i) for i in list_identities()]
