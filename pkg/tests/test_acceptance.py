"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary.

Every check is exact; runtimes are measured and compared with the stated budgets.
"""
from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

from tritet import families as fam
from tritet.figurate import isqrt, tet
from tritet.polyring import parse_poly, resultant, tri_poly, uni_gcd
from tritet.search import (
    search_palindromic_tri,
    search_pow_sum_tet,
    search_sq_sum_tet,
    search_tz_quartic,
)


class UnattainableCriterion(AssertionError):
    """A criterion that fails because the claim it encodes is false."""


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_criterion_1_identity_suite(report_criterion):
    reports, secs = _timed(fam.check_all_identities)
    bad = []
    for r in reports:
        if r.id in ("I-7", "I-7'"):
            if r.status != fam.DIVISIBLE or r.cofactor.total_degree() != 8:
                bad.append(r.id)
        elif r.status != fam.ZERO:
            bad.append(r.id)
    ok = not bad and secs < 60
    report_criterion(1, ok, f"{len(reports)} identities, I-7/I-7' divisible with degree-8 "
                            f"cofactors, failures {bad or 'none'} ({secs:.2f} s < 60 s)")
    assert ok


def test_criterion_2_sq_sum_tet_count(report_criterion):
    rep, secs = _timed(search_sq_sum_tet, 50_000)
    rep8, secs8 = _timed(search_sq_sum_tet, 50_000, partitions=8)
    coprime = [s for s, f in zip(rep.tuples(), rep.flags) if f["coprime"]]
    ok = (rep.count == 39 and coprime == [(143, 237, 2301289)]
          and rep.content() == rep8.content() and secs <= 1800 and secs8 <= 300)
    report_criterion(2, ok, f"SQ-SUM-TET bound 5e4: {rep.count} solutions (expected 39), "
                            f"coprime {coprime}; 1 thread {secs:.1f} s, 8 partitions "
                            f"{secs8:.1f} s, identical content {rep.content() == rep8.content()}")
    assert ok
    for x, y, z in rep.tuples():
        assert tet(x) ** 2 + tet(y) ** 2 == z * z
        assert isqrt(z * z) == z


def test_criterion_3_palindromic_count(report_criterion):
    rep, secs = _timed(search_palindromic_tri, 10**6, base=10)
    ok = rep.count == 35 and secs <= 10
    report_criterion(3, ok, f"PAL-TRI base 10 bound 1e6: {rep.count} indices (expected 35), "
                            f"{secs:.2f} s <= 10 s")
    assert ok


def test_criterion_4_tz_quartic(report_criterion):
    expected = [(15, 28, 1153), (3300, 7712, 85508608)]
    rep, secs = _timed(search_tz_quartic, 10**4)
    full, secs_full = _timed(search_tz_quartic, 10**5)
    ok = rep.tuples() == expected and secs <= 120
    report_criterion(4, ok, f"TZ-QUARTIC bound 1e4: {rep.tuples()} ({secs:.2f} s <= 120 s); "
                            f"long mode bound 1e5: {full.count} solutions, same set "
                            f"{full.tuples() == expected} ({secs_full:.1f} s)")
    assert ok
    assert full.tuples() == expected


def test_criterion_5_pow_sum_tet(report_criterion):
    rep, secs = _timed(search_pow_sum_tet, 4, 10**4)
    first = min(rep.tuples()) if rep.count else None
    ok = rep.count == 6 and first == (8, 38, 10) and secs <= 120
    report_criterion(5, ok, f"POW-SUM-TET n=4 bound 1e4: {rep.count} solutions, smallest "
                            f"{first} ({secs:.2f} s <= 120 s)")
    assert ok


FIXTURES = [
    ("F-TET-CONSEC", 1, (60, 61, 54839)),
    ("F-TET-CONSEC", 2, (2088, 2089, 2150259925)),
    ("F-TET-LUCAS", 1, (1188, 1680, 839790700)),
    ("F-TET-LUCAS", 2, (40390, 57120, 32946833683400)),
    ("F-HARMONIC", 3, (76, 285, 104)),
    ("F-HARMONIC", 5, (1065, 3976, 1455)),
    ("F-HARMONIC", 7, (14840, 55385, 20272)),
    ("F-QUARTIC-AP", 0, (4, 2, 16)),
    ("F-QUARTIC-AP", 1, (120, 78, 15632)),
    ("F-CUBE", 0, (19, 1, 11)),
    ("F-CUBE", 1, (197, 19, 109)),
    ("F-CUBE", 2, (1959, 197, 1079)),
    ("F-SQPROD-A", 1, (73, 146, 189070)),
    ("F-SQPROD-A", 2, (2521, 5042, 7559616818)),
]


def test_criterion_6_family_fixtures(report_criterion):
    start = time.perf_counter()
    missed = []
    for fid, n, expected in FIXTURES:
        rec = fam.generate(fid, n=n)
        if rec.values() != expected or not fam.verify(rec):
            missed.append((fid, n))
    coprime = fam.SolutionRecord("fixture", {}, {"x": 143, "y": 237, "z": 2301289}, "T2sum")
    rows = len(FIXTURES) + 1
    if not (fam.verify(coprime) and gcd(tet(143), tet(237)) == 1):
        missed.append("coprime 143/237")
    secs = time.perf_counter() - start
    ok = not missed and secs < 10
    report_criterion(6, ok, f"{rows - len(missed)}/{rows} fixture rows reproduced exactly "
                            f"({secs:.3f} s < 10 s)")
    assert ok


PRINTED_X1 = "(u^5 - 2*u^4 - u - 2)/2"
PRINTED_Y1 = "(u^2 + 1)*(u^4 - 2*u^3 - u^2 + 2*u - 2)/4"
PRINTED_Z1 = ("(u^12 - 4*u^11 + 4*u^10 + 2*u^8 - 16*u^7 + 24*u^6 - 7*u^4 + 20*u^3"
              " + 4*u^2 + 4)/32")


def _odd_integral(p) -> bool:
    u = p.__class__.var("u")
    return p.substitute("u", 2 * u + 1).has_integer_coefficients()


@pytest.mark.xfail(raises=UnattainableCriterion, strict=True,
                   reason="x_n(2u+1), y_n(2u+1), z_n(2u+1) are not in Z[u] for n = 0, 2; "
                          "see the decisions ledger")
def test_criterion_7_polynomial_family(report_criterion):
    x1, y1, z1 = fam.eq1_polynomials(1)
    printed = tuple(parse_poly(t, ("u",)) for t in (PRINTED_X1, PRINTED_Y1, PRINTED_Z1))
    same = (x1, y1, z1) == printed
    g = uni_gcd(tri_poly(x1), tri_poly(y1), "u")
    coprime = g.is_constant() and g.constant_value() == 1
    res = resultant(tri_poly(x1), tri_poly(y1), "u")
    res_ok = res == Fraction(1, 2**58)
    rec = fam.generate("F-EQ1-POLY", n=1, u=3)
    numeric = rec.values() == (38, 55, 1709) and fam.verify(rec)
    integral = {n: all(_odd_integral(p) for p in fam.eq1_polynomials(n)) for n in range(3)}
    ok = same and coprime and res_ok and numeric and all(integral.values())
    report_criterion(7, ok, f"x1,y1,z1 as printed {same}; gcd 1 {coprime}; Res = {res} "
                            f"(2^-58 {res_ok}); u=3 -> {rec.values()} {numeric}; "
                            f"odd-shift integrality by n {integral}")
    assert same and coprime and res_ok and numeric
    if not all(integral.values()):
        raise UnattainableCriterion(f"integrality fails for n in "
                                    f"{[n for n, v in integral.items() if not v]}")


def _l6_oracle(limit: int) -> list[int]:
    out = []
    for u in range(limit + 1):
        num = u * (2 * u + 3)
        if num % 9 == 0 and isqrt(num // 9) ** 2 == num // 9:
            out.append(u)
    return out


def test_criterion_8_typo_ledger(report_criterion):
    verdicts = {}
    # L1: corrected r_n on 25 odd u; printed r at u=3
    corrected = all(fam.verify(fam.generate("F-EQ1-POLY", n=1, u=2 * k + 1)) for k in range(25))
    z_printed = fam.printed_eq1_z(1).eval({"u": 3})
    verdicts["L1"] = corrected and fam.residual("t2sum", {"x": 38, "y": 55, "z": z_printed}) != 0
    # L2: corrected recurrence on 25 odd n; printed sequence degenerate
    corrected = len(fam.generate_range("F-HARMONIC", range(1, 51, 2))) == 25
    p = fam.printed_harmonic_sequence(6)
    verdicts["L2"] = corrected and any(fam.harmonic_f(a, b) != 0 for a, b in zip(p, p[1:]))
    # L3: corrected y_n on 25 indices; printed y at w=16
    corrected = len(fam.generate_range("F-QUARTIC-AP", range(25))) == 25
    y_printed = fam.printed_quartic_y(16)
    verdicts["L3"] = corrected and fam.residual(
        "tz_quartic_mean", {"x": 120, "y": y_printed, "z": 15632}) != 0
    # L4: both quotient variants on u = 1..25; printed forms at u=2
    corrected = all(fam.verify(fam.generate(f, u=u))
                    for f in ("F-QUOT-A", "F-QUOT-B") for u in range(1, 26))
    ya, zb = fam.printed_quot_a(2), fam.printed_quot_b_z(2)
    verdicts["L4"] = (corrected and fam.residual("quotient", {"x": 2, "y": ya, "z": ya}) != 0
                      and fam.residual("quotient", {"x": 2, "y": 12, "z": zb}) != 0)
    # L5: corrected p(b) on 25 values of b; printed p at b=4, and symbolically
    corrected = all(fam.verify(fam.generate("F-TWOPAIR", b=3 * k + 4)) for k in range(25))
    pp, q, r, s = (int(c) for c in fam.twopair_pqrs(4, printed=True))
    verdicts["L5"] = (corrected and fam.residual("two_pairs", {"p": pp, "q": q, "r": r, "s": s}) != 0
                      and fam.check_identity("I-15", "printed").status == fam.NONZERO)
    # L6: derived recurrence on 25 indices, equal to the exhaustive oracle below 10^4
    corrected = len(fam.generate_range("F-SQPROD-B", range(25))) == 25
    emitted = [fam.generate("F-SQPROD-B", n=n).solution["x"] for n in range(5)]
    oracle = _l6_oracle(10**4)
    verdicts["L6"] = corrected and oracle == [u for u in emitted if u <= 10**4]
    ok = all(verdicts.values())
    report_criterion(8, ok, " ".join(f"{k}={'ok' if v else 'BAD'}" for k, v in verdicts.items())
                     + f"; L6 oracle u <= 1e4: {oracle}")
    assert ok


PROPERTY_SUITES = ["test_figurate.py", "test_polyring.py", "test_families.py", "test_search.py",
                   "test_cli.py"]


def test_criterion_9_property_suites(report_criterion):
    here = Path(__file__).parent
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
           *(str(here / f) for f in PROPERTY_SUITES)]
    proc, secs = _timed(subprocess.run, cmd, capture_output=True, text=True, check=False,
                        cwd=here.parent)
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and secs < 300
    report_criterion(9, ok, f"module property suites: {tail} ({secs:.1f} s < 300 s)")
    assert ok, proc.stdout[-3000:]
