from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from tritet import families as fam
from tritet.families import (
    DIVISIBLE,
    NONZERO,
    RECURRENCES,
    ZERO,
    DomainError,
    InvariantError,
    SolutionRecord,
    check_identity,
    eq1_polynomials,
    generate,
    generate_range,
    residual,
    s_integer_check,
    verify,
)
from tritet.figurate import is_palindrome, isqrt, tet, tri
from tritet.polyring import integer_valued_on_AP, resultant, tri_poly, uni_gcd

FIXTURES = [
    ("F-TET-CONSEC", {"n": 1}, (60, 61, 54839)),
    ("F-TET-CONSEC", {"n": 2}, (2088, 2089, 2150259925)),
    ("F-TET-LUCAS", {"n": 1}, (1188, 1680, 839790700)),
    ("F-TET-LUCAS", {"n": 2}, (40390, 57120, 32946833683400)),
    ("F-HARMONIC", {"n": 3}, (76, 285, 104)),
    ("F-HARMONIC", {"n": 5}, (1065, 3976, 1455)),
    ("F-HARMONIC", {"n": 7}, (14840, 55385, 20272)),
    ("F-QUARTIC-AP", {"n": 0}, (4, 2, 16)),
    ("F-QUARTIC-AP", {"n": 1}, (120, 78, 15632)),
    ("F-CUBE", {"n": 0}, (19, 1, 11)),
    ("F-CUBE", {"n": 1}, (197, 19, 109)),
    ("F-CUBE", {"n": 2}, (1959, 197, 1079)),
    ("F-SQPROD-A", {"n": 1}, (73, 146, 189070)),
    ("F-SQPROD-A", {"n": 2}, (2521, 5042, 7559616818)),
    ("F-EQ1-POLY", {"n": 1, "u": 3}, (38, 55, 1709)),
    ("F-PROD-1", {"u": 1}, (9, 54, 3024)),
    ("F-QUOT-B", {"u": 2}, (2, 12, 13)),
    ("F-PAL-2", {"k": 2}, (17, 2, 0)),
    ("F-APAL-MINUS", {"k": 3}, (2002, 10, -1)),
    ("F-SQPROD-B", {"n": 1}, (12, 26, 1092)),
    ("F-TWOPAIR", {"b": 4}, (69, 179, 5, 180)),
    ("F-SQ-AP", {"u": 4}, (5, 9, 10)),
]


@pytest.mark.parametrize("family, params, expected", FIXTURES,
                         ids=[f"{f}-{p}" for f, p, _ in FIXTURES])
def test_fixture_table(family, params, expected):
    rec = generate(family, **params)
    assert rec.verified
    assert rec.values() == expected
    assert verify(rec)


def test_cube_fixture_sums():
    for n, (a, b, z) in enumerate([(19, 1, 11), (197, 19, 109), (1959, 197, 1079)]):
        assert tet(a) + tet(b) == z**3
        assert generate("F-CUBE", n=n).values() == (a, b, z)


def test_coprime_fixture():
    rec = SolutionRecord("manual", {}, {"x": 143, "y": 237, "z": 2301289}, "T2sum")
    assert verify(rec)
    from math import gcd
    assert gcd(tet(143), tet(237)) == 1


def test_verify_rejects_tampering():
    rec = generate("F-TET-CONSEC", n=1)
    bad = SolutionRecord(rec.family, rec.params, {**rec.solution, "z": 54840}, rec.equation)
    assert not verify(bad)
    assert verify(SolutionRecord("manual", {}, {"x": 3300, "y": 7712, "z": 85508608},
                                 "tz_quartic"))
    assert not verify(SolutionRecord("manual", {}, {"x": 1}, "T2sum"))
    assert not verify(SolutionRecord("manual", {}, {"x": 1, "y": 2, "z": 3}, "nope"))


def test_descriptors():
    descs = fam.list_families()
    ids = [d.id for d in descs]
    assert len(descs) >= 20
    assert {"F-EQ1-POLY", "F-PAL-2"} <= set(ids)
    assert all(f"F-PROD-{i}" in ids for i in range(1, 10))
    assert all(d.reference for d in descs)
    corrected = {d.id for d in descs if d.corrections}
    assert corrected == {"F-EQ1-POLY", "F-HARMONIC", "F-QUARTIC-AP", "F-QUOT-A", "F-QUOT-B",
                         "F-TWOPAIR", "F-SQPROD-B"}
    assert fam.get_family("F-SQPROD-B").provenance.startswith("derived")
    with pytest.raises(KeyError):
        fam.get_family("F-NOPE")


# -- sampled verification across every family ------------------------------

def _samples(desc, rng: random.Random) -> list[dict]:
    fid = desc.id
    if fid == "F-EQ1-POLY":
        return [{"n": rng.randint(0, 3), "u": Fraction(rng.randint(-40, 40), rng.randint(1, 5))}
                for _ in range(22)] + [{"n": n} for n in range(3)]
    if fid == "F-TXYZ-RAT":
        out = []
        while len(out) < 25:
            u = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
            v = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
            if v != 0 and u != v:
                out.append({"u": u, "v": v})
        return out
    if fid == "F-SINT":
        out = []
        while len(out) < 25:
            S = rng.choice([(2,), (2, 3), (2, 5), (2, 3, 7)])
            U = 1
            for p in S:
                U *= p ** rng.randint(0, 2)
            V = rng.choice(S) ** rng.randint(0, 2)
            m, n = rng.randint(0, 3), rng.randint(0, 3)
            d = abs(U**m - 2 * V**n)
            for p in S:
                while d and d % p == 0:
                    d //= p
            if d == 1:
                out.append({"S": S, "U": U, "V": V, "m": m, "n": n})
        return out
    if fid == "F-HARMONIC":
        return [{"n": 2 * i + 1} for i in range(25)]
    if fid == "F-SQ-AP":
        return [{"u": u} for u in range(-40, 40) if u % 3][:25]
    if fid == "F-TWOPAIR":
        return [{"b": 3 * i + 1} for i in range(-12, 13)]
    if fid.startswith(("F-QUOT", "F-PROD")):
        return [{"u": u} for u in range(1, 26)]
    if fid.startswith("F-PAL") or fid.startswith("F-APAL"):
        return [{"k": k} for k in range(1, 21)] + [{"k": k} for k in range(21, 26)
                                                   if fid != "F-PAL-2"]
    start = 1 if fid.startswith("F-TET-LUCAS") else 0
    return [{"n": n} for n in range(start, start + 25)]


@pytest.mark.parametrize("desc", fam.list_families(), ids=lambda d: d.id)
def test_every_family_verifies_on_samples(desc):
    rng = random.Random(desc.id)
    samples = _samples(desc, rng)
    assert len(samples) >= 20
    for params in samples:
        rec = generate(desc.id, **params)
        assert rec.verified and verify(rec), (desc.id, params)


def test_domain_enforcement():
    with pytest.raises(DomainError, match="mod 3"):
        generate("F-TWOPAIR", b=5)
    with pytest.raises(DomainError):
        generate("F-SQ-AP", u=3)
    with pytest.raises(DomainError):
        generate("F-SINT", S=(3,), U=3, V=3, m=1, n=1)
    with pytest.raises(DomainError, match="outside S"):
        generate("F-SINT", S=(2,), U=1, V=2, m=1, n=3)
    with pytest.raises(DomainError):
        generate("F-HARMONIC", n=2)
    with pytest.raises(DomainError):
        generate("F-EQ1-POLY", n=4)
    with pytest.raises(DomainError):
        generate("F-TXYZ-RAT", u=1, v=1)
    with pytest.raises(DomainError):
        generate("F-TET-CONSEC", n=Fraction(1, 2))
    with pytest.raises(DomainError):
        generate_range("F-SQ-AP", range(3))


def test_generate_range_matches_single_calls():
    recs = generate_range("F-TET-CONSEC", range(1, 4))
    assert [r.values() for r in recs] == [generate("F-TET-CONSEC", n=n).values()
                                          for n in range(1, 4)]


def test_negative_twopair_indices_kept():
    rec = generate("F-TWOPAIR", b=1)
    assert verify(rec)
    rec = generate("F-TWOPAIR", b=-2)
    assert any(v < 0 for v in rec.values())
    assert verify(rec)


# -- recurrences -----------------------------------------------------------------

def test_recurrence_step_examples():
    consec = RECURRENCES["F-TET-CONSEC"]
    assert fam.step(consec, (0, 1)) == (10, 29)
    assert fam.consec_f(10) == 841 == 29**2
    lucas = RECURRENCES["F-TET-LUCAS"]
    assert fam.step(lucas, (6, 35)) == (35, 204)
    assert fam.lucas_h(35, 204) == 0
    quartic = RECURRENCES["F-QUARTIC-AP"]
    assert fam.step(quartic, (0, 4)) == (16, 120)
    assert fam.iterate(quartic, 1) == (16, 120)


def test_recurrence_invariants_along_orbits():
    for name in ("F-TET-CONSEC", "F-QUARTIC-AP", "F-SQPROD-A", "F-SQPROD-B"):
        rec = RECURRENCES[name]
        for s in rec.states(20):
            assert rec.invariant_at(s) == rec.invariant_value
    for x, z in RECURRENCES["F-TET-CONSEC"].states(20):
        assert z**2 - fam.consec_f(x) == 0
    for w, v in RECURRENCES["F-QUARTIC-AP"].states(20):
        assert v**2 - fam.quartic_f(w) == 0
    for u, v in RECURRENCES["F-SQPROD-A"].states(20):
        assert v**2 - fam.sqprod_f1(u) == 0
    for x, y in RECURRENCES["F-CUBE"].states(20):
        assert fam.cube_F(x, y) == 0 and x % 2 == 0
    xs = fam.harmonic_sequence(25)
    for a, b in zip(xs, xs[1:]):
        assert fam.harmonic_f(a, b) == 0
    for a, b in RECURRENCES["F-TET-LUCAS"].states(20):
        assert fam.lucas_h(a, b) == 0


def test_invariant_violation_aborts():
    rec = RECURRENCES["F-TET-CONSEC"]
    with pytest.raises(InvariantError):
        rec.step((1, 1))
    with pytest.raises(ValueError):
        rec.step((1, 2, 3))


def test_lucas_gap_grows():
    gaps = [r.solution["y"] - r.solution["x"] for r in generate_range("F-TET-LUCAS", range(1, 11))]
    assert all(a < b for a, b in zip(gaps, gaps[1:]))


def test_harmonic_parity():
    xs = fam.harmonic_sequence(40)
    for n in range(1, 39, 2):
        assert (xs[n + 1] - xs[n] - 1) % 2 == 0


def test_sqprod_b_matches_exhaustive_oracle():
    # v^2 = u(2u+3)/9 for 0 <= u <= 10^4
    oracle = []
    for u in range(0, 10_001):
        num = u * (2 * u + 3)
        if num % 9 == 0 and isqrt(num // 9) ** 2 == num // 9:
            oracle.append(u)
    emitted = []
    n = 0
    while True:
        u = generate("F-SQPROD-B", n=n).solution["x"]
        if u > 10_000:
            break
        emitted.append(u)
        n += 1
    assert oracle == emitted == [0, 12, 432]


# -- the polynomial family ------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 2])
def test_eq1_polynomial_identity_and_gcd(n):
    x, y, z = eq1_polynomials(n)
    assert (tri_poly(x) ** 2 + tri_poly(y) ** 2 - z**2).is_zero()
    g = uni_gcd(tri_poly(x), tri_poly(y), "u")
    assert g.is_constant() and g.constant_value() == 1


def _odd_shift_integral(p) -> bool:
    u = p.vars[0]
    return p.substitute(u, 2 * p.__class__.var(u) + 1).has_integer_coefficients()


def test_eq1_odd_integrality_only_at_n1():
    # x_n(2u+1), y_n(2u+1), z_n(2u+1) are in Z[u] for n = 1 only; k_n(odd) is odd for
    # n = 0, 2, 3, so x_n is a half-integer there (x_2(3) = 5995/2)
    for n in range(4):
        polys = eq1_polynomials(n)
        integral = [_odd_shift_integral(p) for p in polys]
        assert integral == ([True] * 3 if n == 1 else [False] * 3), n
        assert all(integer_valued_on_AP(p, 1, 2) == i for p, i in zip(polys, integral))
    assert eq1_polynomials(2)[0].eval({"u": 3}) == Fraction(5995, 2)


def test_eq1_printed_polynomials():
    from tritet.polyring import parse_poly
    x, y, z = eq1_polynomials(1)
    assert x == parse_poly("1/2*u^5 - u^4 - 1/2*u - 1", x.vars)
    assert y == parse_poly("1/4*u^6 - u^5 + 1/2*u^4 + 1/2*u^3 - 1/2*u^2 + 1/2*u - 1/2", x.vars) \
        or tri_poly(y) ** 2 == z**2 - tri_poly(x) ** 2


def test_eq1_resultant():
    x, y, _ = eq1_polynomials(1)
    assert resultant(tri_poly(x), tri_poly(y), "u") == Fraction(1, 2**58)


def test_eq1_cap_and_large_flag():
    with pytest.raises(DomainError):
        eq1_polynomials(4)
    x, y, z = eq1_polynomials(4, allow_large=True)
    assert tri_poly(x) ** 2 + tri_poly(y) ** 2 == z**2


# -- palindromes and nontriviality ------------------------------------------------

@pytest.mark.parametrize("base", [2, 3, 5, 7, 9])
def test_pal_families_palindromic(base):
    for k in range(1, 21):
        n = generate(f"F-PAL-{base}", k=k).solution["n"]
        assert is_palindrome(tri(n), base)


def test_apal_families():
    for k in range(0, 21):
        n = generate("F-APAL-PLUS", k=k).solution["n"]
        assert is_palindrome(tri(n) + 1, 10)
    for k in range(1, 21):
        n = generate("F-APAL-MINUS", k=k).solution["n"]
        assert is_palindrome(tri(n) - 1, 10)
    assert tri(2002) - 1 == 2005002


def test_pal_2_digit_pattern():
    from tritet.figurate import digits
    assert str(digits(tri(17), 2)) == "10011001"


def test_quartic_ap_nontrivial():
    for n, rec in enumerate(generate_range("F-QUARTIC-AP", range(25))):
        x, y, z = rec.values()
        assert not (y == x * x and z == x**4)
        if n >= 1:
            assert not (x == y * y and z == y**4)
    # the seed is the trivial solution with x and y swapped: 4 = 2^2, 16 = 2^4
    assert generate("F-QUARTIC-AP", n=0).values() == (4, 2, 16)


def test_twopair_nontrivial():
    # b = 1 is the all-zero degenerate point t_0 = t_{-1} = 0
    assert {tri(v) for v in generate("F-TWOPAIR", b=1).values()} == {0}
    for b in range(-20, 40):
        if b % 3 != 1 or b == 1:
            continue
        p, q, r, s = generate("F-TWOPAIR", b=b).values()
        assert sorted((tri(p), tri(q))) != sorted((tri(r), tri(s))), b


# -- corrections ledger: printed variants fail -----------------------------------

def test_l1_printed_r_fails_at_u3():
    z = fam.printed_eq1_z(1).eval({"u": 3})
    assert z == Fraction(493, 2)
    assert residual("t2sum", {"x": 38, "y": 55, "z": z}) != 0
    assert generate("F-EQ1-POLY", n=1, u=3).solution["z"] == 1709


def test_l2_printed_harmonic_degenerate():
    printed = fam.printed_harmonic_sequence(8)
    assert printed[:4] == [1, 5, 4, 16]
    bad = 0
    for a, b in zip(printed[1:], printed[2:]):
        if (b - a - 1) % 2 == 0 and b > a:
            z = (b - a - 1) // 2
            if z and residual("harmonic", {"x": a, "y": b, "z": z}) != 0:
                bad += 1
        bad += fam.harmonic_f(a, b) != 0
    assert bad > 0
    assert fam.harmonic_sequence(8)[:8] == [1, 5, 20, 76, 285, 1065, 3976, 14840]


def test_l3_printed_quartic_fails_at_w16():
    y = fam.printed_quartic_y(16)
    assert residual("tz_quartic_mean", {"x": 120, "y": y, "z": 15632}) != 0
    assert residual("tz_quartic_mean", {"x": 120, "y": 78, "z": 15632}) == 0


def test_l4_printed_quotients_fail_at_u2():
    y = fam.printed_quot_a(2)
    assert residual("quotient", {"x": 2, "y": y, "z": y}) != 0
    z = fam.printed_quot_b_z(2)
    assert residual("quotient", {"x": 2, "y": 12, "z": z}) != 0
    assert generate("F-QUOT-A", u=2).values() == (2, 10, 10)


def test_l5_printed_twopair_fails_at_b4():
    p, q, r, s = (int(c) for c in fam.twopair_pqrs(4, printed=True))
    lhs = tri(p) ** 2 + tri(q) ** 2
    rhs = tri(r) ** 2 + tri(s) ** 2
    assert (lhs, rhs) == (304021000, 265364325)


def test_corrected_forms_on_25_samples():
    for u in range(1, 26):
        assert verify(generate("F-EQ1-POLY", n=1, u=2 * u + 1))
        assert verify(generate("F-QUOT-A", u=u)) and verify(generate("F-QUOT-B", u=u))
        assert verify(generate("F-TWOPAIR", b=3 * u + 1))
    assert len(generate_range("F-HARMONIC", range(1, 51, 2))) == 25
    assert len(generate_range("F-QUARTIC-AP", range(25))) == 25
    assert len(generate_range("F-SQPROD-B", range(25))) == 25


# -- identities --------------------------------------------------------------------

def test_all_identities_hold():
    for rep in fam.check_all_identities():
        if rep.id in ("I-7", "I-7'"):
            assert rep.status == DIVISIBLE
            assert rep.cofactor.total_degree() == 8
        else:
            assert rep.status == ZERO, rep.id


@pytest.mark.parametrize("ident", ["I-13A", "I-13B", "I-15", "I-16", "I-17"])
def test_printed_identity_variants_fail(ident):
    rep = check_identity(ident, "printed")
    assert rep.status == NONZERO
    assert rep.residual is not None and not rep.ok


def test_i15_printed_counterexample_b4():
    rep = check_identity("I-15", "printed")
    assert rep.residual.eval({"b": 4}) == 304021000 - 265364325


def test_unknown_identity():
    with pytest.raises(KeyError):
        check_identity("I-99")


def test_s_integer_check():
    assert s_integer_check(Fraction(9, 2), {2})
    assert not s_integer_check(Fraction(9, 2), {3})
    assert s_integer_check(Fraction(7), set())
    assert s_integer_check(Fraction(5, 12), (2, 3))
    rec = generate("F-SINT", S=(2,), U=2, V=2, m=3, n=1)
    assert all(s_integer_check(Fraction(v), (2,)) for v in rec.values())


def test_json_round_trip():
    for fid, params, _ in FIXTURES:
        rec = generate(fid, **params)
        line = rec.to_json()
        d = json.loads(line)
        assert all(isinstance(v, str) for v in d["solution"].values())
        back = SolutionRecord.from_dict(d)
        assert back == rec
    rec = generate("F-TXYZ-RAT", u=1, v=2)
    assert SolutionRecord.from_dict(json.loads(rec.to_json())) == rec
