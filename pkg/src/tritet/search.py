"""Exhaustive searches over index pairs, with exact re-verification.

Each problem has two evaluation paths:

* ``exact`` -- Python integers and :func:`math.isqrt`; slow, always valid.
* ``fast``  -- numpy, vectorised over the inner index.  A perfect-power
  candidate ``r = rint(s ** (1/k))`` is computed in float64 and accepted
  only if ``r**k == s`` holds modulo 2**64 (uint64 wrap-around).  When the
  float estimate is within 1/2 of the true root and ``|s - r**k| < 2**64``,
  that congruence is equivalent to equality, so no solution is lost and no
  false positive survives.  :func:`fast_path_ok` checks both conditions
  from the bound before the fast path is used.

Every hit, from either path, is re-verified with
:func:`tritet.families.verify` before it is reported.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np

from .families import SolutionRecord, verify
from .figurate import iroot, is_palindrome, tet, tri

PROBLEMS = ("SQ-SUM-TET", "PAL-TRI", "TZ-QUARTIC", "POW-SUM-TET", "SQPROD-TET")

# float64 roots below 2**46 carry an absolute error far below 1/2
_FAST_ROOT_LIMIT = 2**46
# chunk of the inner axis handled per numpy call (bounds memory per worker)
_PAL_CHUNK = 1 << 20


@dataclass(frozen=True)
class SearchProblem:
    problem: str
    bound: int
    base: int = 10
    exponent: int = 2
    coprime_only: bool = False
    require_gap: bool = False
    partitions: int = 1
    method: str = "auto"

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}; known: {PROBLEMS}")
        if self.problem == "PAL-TRI":
            if self.bound < 1:
                raise ValueError("bound must be >= 1")
            if self.base < 2:
                raise ValueError("base must be >= 2")
        elif self.bound < 2:
            raise ValueError("bound must be >= 2")
        if self.problem == "POW-SUM-TET" and self.exponent < 2:
            raise ValueError("exponent must be >= 2")
        if self.partitions < 1:
            raise ValueError("partitions must be >= 1")
        if self.method not in ("auto", "fast", "exact"):
            raise ValueError(f"method must be auto, fast or exact, got {self.method!r}")

    def options(self) -> dict:
        if self.problem == "SQ-SUM-TET":
            return {"coprime_only": self.coprime_only}
        if self.problem == "PAL-TRI":
            return {"base": self.base}
        if self.problem == "POW-SUM-TET":
            return {"exponent": self.exponent}
        if self.problem == "SQPROD-TET":
            return {"require_gap": self.require_gap}
        return {}


@dataclass
class SearchReport:
    problem: str
    bound: int
    options: dict
    solutions: list[dict]
    flags: list[dict]
    partitions: int
    method: str
    elapsed_ms: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.solutions)

    def tuples(self) -> list[tuple[int, ...]]:
        return [tuple(s.values()) for s in self.solutions]

    def to_dict(self, timing: bool = True) -> dict:
        sols = []
        for s, f in zip(self.solutions, self.flags):
            row = {k: str(v) for k, v in s.items()}
            row.update(f)
            sols.append(row)
        d = {
            "problem": self.problem,
            "bound": self.bound,
            "options": self.options,
            "count": self.count,
            "solutions": sols,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else None,
            "partitions": self.partitions,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))

    def content(self) -> dict:
        """Everything except timing and partitioning; equal across partition counts."""
        d = self.to_dict(timing=False)
        d.pop("elapsed_ms")
        d.pop("partitions")
        return d


# expected counts used to annotate reports; an exhaustive list always wins
_EXPECTED = {
    ("SQ-SUM-TET", 50_000): 39,
    ("PAL-TRI", 1_000_000, 10): 35,
    ("TZ-QUARTIC", 100_000): 2,
    ("POW-SUM-TET", 10_000, 4): 6,
}


# ---------------------------------------------------------------------------
# partitioning
# ---------------------------------------------------------------------------

def split_pairs(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split the outer index range [lo, hi) of a triangle x < y < hi into
    ``parts`` contiguous chunks of roughly equal pair counts."""
    n = hi - lo
    if n <= 0:
        return [(lo, lo)]
    parts = max(1, min(parts, n))
    total = n * (n - 1) / 2
    cuts = [lo]
    acc = 0.0
    target = total / parts
    for x in range(lo, hi):
        acc += hi - 1 - x
        if len(cuts) < parts and acc >= target * len(cuts):
            cuts.append(x + 1)
    cuts = sorted(set(cuts))
    if cuts[-1] != hi:
        cuts.append(hi)
    return list(zip(cuts[:-1], cuts[1:]))


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    n = hi - lo
    parts = max(1, min(parts, max(n, 1)))
    edges = [lo + (n * i) // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(edges[:-1], edges[1:])]


def _run_chunks(fn, chunks, workers: int) -> list:
    if workers <= 1 or len(chunks) <= 1:
        return [fn(a, b) for a, b in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), chunks))


# ---------------------------------------------------------------------------
# fast-path helpers
# ---------------------------------------------------------------------------

_U64 = np.uint64


def _tet_table(bound: int) -> np.ndarray:
    """T_0 .. T_{bound-1} as uint64 (exact for bound < 2**21)."""
    if bound >= 2**21:
        raise ValueError("tetrahedral table would overflow uint64 intermediates")
    n = np.arange(bound, dtype=np.uint64)
    # t_n (n+2) < 2**62 here, and is divisible by 3
    return (n * (n + _U64(1)) // _U64(2)) * (n + _U64(2)) // _U64(3)


def fast_path_ok(problem: SearchProblem) -> bool:
    """Whether the float64 + mod 2**64 path is exact for this bound."""
    b = problem.bound
    p = problem.problem
    if p == "PAL-TRI":
        # t_n and its digit reversal must fit int64
        return tri(b) * problem.base < 2**62
    if b >= 2**21:
        return False
    if p == "SQ-SUM-TET":
        root = isqrt(2 * tet(b) ** 2) + 1
    elif p == "TZ-QUARTIC":
        root = isqrt(16 * b**4 + 1) + 1
    elif p == "SQPROD-TET":
        root = tet(b) + 1
    else:
        s = 2 * tet(b)
        if s >= 2**62:
            return False
        root = iroot(s, problem.exponent) + 1
    return root < _FAST_ROOT_LIMIT


def _square_hits(s_float: np.ndarray, s_mod: np.ndarray) -> np.ndarray:
    r = np.rint(np.sqrt(s_float)).astype(np.uint64)
    return np.nonzero(r * r == s_mod)[0]


# ---------------------------------------------------------------------------
# SQ-SUM-TET: T_x^2 + T_y^2 = z^2
# ---------------------------------------------------------------------------

def _sq_sum_exact(lo, hi, bound):
    out = []
    for x in range(max(lo, 1), hi):
        tx2 = tet(x) ** 2
        for y in range(x + 1, bound):
            s = tx2 + tet(y) ** 2
            z = isqrt(s)
            if z * z == s:
                out.append((x, y, z))
    return out


def _sq_sum_fast(lo, hi, bound, tables):
    tu, t2f, t2u = tables
    out = []
    for x in range(max(lo, 1), hi):
        if x + 1 >= bound:
            break
        sf = t2f[x] + t2f[x + 1:]
        su = t2u[x] + t2u[x + 1:]
        for j in _square_hits(sf, su):
            y = x + 1 + int(j)
            s = tet(x) ** 2 + tet(y) ** 2
            out.append((x, y, isqrt(s)))
    return out


def search_sq_sum_tet(bound: int, coprime_only: bool = False, partitions: int = 1,
                      method: str = "auto") -> SearchReport:
    """All 1 <= x < y < bound with T_x^2 + T_y^2 a perfect square."""
    return run_partitioned(SearchProblem("SQ-SUM-TET", bound, coprime_only=coprime_only,
                                         partitions=partitions, method=method))


# ---------------------------------------------------------------------------
# PAL-TRI: t_n palindromic in base b
# ---------------------------------------------------------------------------

def _pal_exact(lo, hi, base):
    return [(n,) for n in range(max(lo, 1), hi) if is_palindrome(tri(n), base)]


def _pal_fast(lo, hi, base):
    out = []
    b = np.int64(base)
    for start in range(max(lo, 1), hi, _PAL_CHUNK):
        n = np.arange(start, min(hi, start + _PAL_CHUNK), dtype=np.int64)
        t = n * (n + 1) // 2
        rest = t.copy()
        rev = np.zeros_like(t)
        while True:
            live = rest > 0
            if not live.any():
                break
            rev = np.where(live, rev * b + rest % b, rev)
            rest //= b
        out.extend((int(v),) for v in n[rev == t])
    return out


def search_palindromic_tri(bound: int, base: int = 10, partitions: int = 1,
                           method: str = "auto") -> SearchReport:
    """All 1 <= n < bound with t_n palindromic in ``base``."""
    return run_partitioned(SearchProblem("PAL-TRI", bound, base=base, partitions=partitions,
                                         method=method))


# ---------------------------------------------------------------------------
# TZ-QUARTIC: x^4 + y^4 = t_z  <=>  8(x^4 + y^4) + 1 is a square
# ---------------------------------------------------------------------------

def _quartic_exact(lo, hi, bound):
    out = []
    for x in range(max(lo, 1), hi):
        x4 = x**4
        for y in range(x + 1, bound):
            d = 8 * (x4 + y**4) + 1
            r = isqrt(d)
            if r * r == d:
                out.append((x, y, (r - 1) // 2))
    return out


def _quartic_fast(lo, hi, bound, tables):
    q8f, q8u = tables
    out = []
    for x in range(max(lo, 1), hi):
        if x + 1 >= bound:
            break
        sf = q8f[x] + q8f[x + 1:] + 1.0
        su = q8u[x] + q8u[x + 1:] + _U64(1)
        for j in _square_hits(sf, su):
            y = x + 1 + int(j)
            r = isqrt(8 * (x**4 + y**4) + 1)
            out.append((x, y, (r - 1) // 2))
    return out


def search_tz_quartic(bound: int, partitions: int = 1, method: str = "auto") -> SearchReport:
    """All 1 <= x < y < bound with x^4 + y^4 triangular."""
    return run_partitioned(SearchProblem("TZ-QUARTIC", bound, partitions=partitions,
                                         method=method))


# ---------------------------------------------------------------------------
# POW-SUM-TET: z^n = T_x + T_y
# ---------------------------------------------------------------------------

def _pow_exact(lo, hi, bound, n):
    out = []
    for x in range(max(lo, 1), hi):
        tx = tet(x)
        for y in range(x + 1, bound):
            s = tx + tet(y)
            z = iroot(s, n)
            if z**n == s:
                out.append((x, y, z))
    return out


def _pow_fast(lo, hi, bound, n, tables):
    tu, tf = tables
    out = []
    inv = 1.0 / n
    for x in range(max(lo, 1), hi):
        if x + 1 >= bound:
            break
        sf = tf[x] + tf[x + 1:]
        su = tu[x] + tu[x + 1:]
        r = np.rint(sf**inv).astype(np.uint64)
        p = r.copy()
        for _ in range(n - 1):
            p *= r
        for j in np.nonzero(p == su)[0]:
            y = x + 1 + int(j)
            z = int(r[j])
            # congruence mod 2**64 can alias only when r**n overshoots by 2**64
            if z**n == tet(x) + tet(y):
                out.append((x, y, z))
    return out


def search_pow_sum_tet(exponent: int, bound: int, partitions: int = 1,
                       method: str = "auto") -> SearchReport:
    """All 1 <= x < y < bound, z >= 1 with z^exponent = T_x + T_y."""
    return run_partitioned(SearchProblem("POW-SUM-TET", bound, exponent=exponent,
                                         partitions=partitions, method=method))


# ---------------------------------------------------------------------------
# SQPROD-TET: z^2 = T_x T_y
# ---------------------------------------------------------------------------

def _sqprod_exact(lo, hi, bound, gap):
    out = []
    for x in range(max(lo, 1), hi):
        tx = tet(x)
        start = 2 * x + 3 if gap else x + 1
        for y in range(start, bound):
            s = tx * tet(y)
            z = isqrt(s)
            if z * z == s:
                out.append((x, y, z))
    return out


def _sqprod_fast(lo, hi, bound, gap, tables):
    tu, tf = tables
    out = []
    for x in range(max(lo, 1), hi):
        start = 2 * x + 3 if gap else x + 1
        if start >= bound:
            continue
        sf = tf[x] * tf[start:]
        su = tu[x] * tu[start:]
        for j in _square_hits(sf, su):
            y = start + int(j)
            out.append((x, y, isqrt(tet(x) * tet(y))))
    return out


def search_sqprod_tet(bound: int, require_gap: bool = False, partitions: int = 1,
                      method: str = "auto") -> SearchReport:
    """All 1 <= x < y < bound with T_x T_y a square (y > 2x + 2 if ``require_gap``)."""
    return run_partitioned(SearchProblem("SQPROD-TET", bound, require_gap=require_gap,
                                         partitions=partitions, method=method))


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def _record_for(problem: SearchProblem, hit: tuple) -> SolutionRecord:
    p = problem.problem
    if p == "PAL-TRI":
        sol = {"n": hit[0], "base": problem.base, "shift": 0}
        return SolutionRecord("search", {}, sol, "palindrome")
    x, y, z = hit
    if p == "SQ-SUM-TET":
        return SolutionRecord("search", {}, {"x": x, "y": y, "z": z}, "T2sum")
    if p == "TZ-QUARTIC":
        return SolutionRecord("search", {}, {"x": x, "y": y, "z": z}, "tz_quartic")
    if p == "POW-SUM-TET":
        return SolutionRecord("search", {}, {"x": x, "y": y, "z": z, "n": problem.exponent},
                              "pow_sum")
    return SolutionRecord("search", {}, {"x": x, "y": y, "z": z}, "sqprod")


def _chunk_worker(problem: SearchProblem, fast: bool):
    b = problem.bound
    p = problem.problem
    if p == "PAL-TRI":
        return lambda lo, hi: (_pal_fast if fast else _pal_exact)(lo, hi, problem.base)
    if not fast:
        if p == "SQ-SUM-TET":
            return lambda lo, hi: _sq_sum_exact(lo, hi, b)
        if p == "TZ-QUARTIC":
            return lambda lo, hi: _quartic_exact(lo, hi, b)
        if p == "POW-SUM-TET":
            return lambda lo, hi: _pow_exact(lo, hi, b, problem.exponent)
        return lambda lo, hi: _sqprod_exact(lo, hi, b, problem.require_gap)
    # shared read-only tables, built once per run
    if p == "SQ-SUM-TET":
        tu = _tet_table(b)
        tables = (tu, tu.astype(np.float64) ** 2, tu * tu)
        return lambda lo, hi: _sq_sum_fast(lo, hi, b, tables)
    if p == "TZ-QUARTIC":
        n = np.arange(b, dtype=np.uint64)
        n4 = n * n * n * n
        tables = (8.0 * np.arange(b, dtype=np.float64) ** 4, _U64(8) * n4)
        return lambda lo, hi: _quartic_fast(lo, hi, b, tables)
    tu = _tet_table(b)
    tables = (tu, tu.astype(np.float64))
    if p == "POW-SUM-TET":
        return lambda lo, hi: _pow_fast(lo, hi, b, problem.exponent, tables)
    return lambda lo, hi: _sqprod_fast(lo, hi, b, problem.require_gap, tables)


def run_partitioned(problem: SearchProblem) -> SearchReport:
    """Run a search over ``problem.partitions`` contiguous outer-index chunks.

    Chunks run on a thread pool; results are merged in chunk order and
    sorted, so the report does not depend on the partition count.
    """
    if problem.method == "fast" and not fast_path_ok(problem):
        raise ValueError(f"fast path is not exact for {problem.problem} at bound {problem.bound}")
    fast = problem.method == "fast" or (problem.method == "auto" and fast_path_ok(problem))
    start = time.perf_counter()
    worker = _chunk_worker(problem, fast)
    if problem.problem == "PAL-TRI":
        chunks = split_range(1, problem.bound, problem.partitions)
    else:
        chunks = split_pairs(1, problem.bound, problem.partitions)
    parts = _run_chunks(worker, chunks, problem.partitions)
    hits = sorted(h for part in parts for h in part)

    solutions, flags = [], []
    for h in hits:
        rec = _record_for(problem, h)
        if not verify(rec):
            raise AssertionError(f"search reported a non-solution {h} for {problem.problem}")
        keys = ("n",) if problem.problem == "PAL-TRI" else ("x", "y", "z")
        sol = {k: rec.solution[k] for k in keys}
        flag = {}
        if problem.problem == "SQ-SUM-TET":
            flag["coprime"] = gcd(tet(h[0]), tet(h[1])) == 1
            if problem.coprime_only and not flag["coprime"]:
                continue
        if problem.problem == "PAL-TRI":
            flag["t"] = str(tri(h[0]))
        solutions.append(sol)
        flags.append(flag)
    elapsed = (time.perf_counter() - start) * 1e3

    report = SearchReport(problem.problem, problem.bound, problem.options(), solutions, flags,
                          problem.partitions, "fast" if fast else "exact", elapsed)
    key = (problem.problem, problem.bound) + tuple(
        v for k, v in problem.options().items() if k in ("base", "exponent"))
    expected = _EXPECTED.get(key)
    if expected is not None and not problem.coprime_only and expected != report.count:
        report.notes.append(f"erratum: expected count {expected}, exhaustive search found "
                            f"{report.count}")
    return report
