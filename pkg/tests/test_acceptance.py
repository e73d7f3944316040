"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Tolerances and runtime caps are pinned here, not configurable."""

import functools
import math
import random
import sys
import time
from fractions import Fraction

import mpmath

from symprod import (AlgebraicPoint, NumberField, PkPoint, RationalMap1,
                     UniPoly, apply, bad_primes, bad_primes_sym,
                     canonical_height, canonical_height_nf, conjugate_points,
                     eta, eta_tilde, is_pcf, is_strongly_pcf_symmetric,
                     morphism_of_map, multiplier_F, multiplier_f, naive_height,
                     orbit_classify, p1_point, parse_map, period_bound,
                     PeriodBoundInput, preperiodic_graph,
                     rational_periodic_points, roots_in_number_field,
                     same_field, symmetrize, verify_commutation)
from symprod import DegenerateMapError, DomainError
from symprod.parser import parse_mpoly

F = Fraction


def _report(line: str):
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()


def criterion(num, description):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.time()
            try:
                fn(*args, **kwargs)
            except BaseException:
                _report(f"criterion {num:2d}: FAIL ({time.time() - t0:6.2f}s)  "
                        f"{description}")
                raise
            _report(f"criterion {num:2d}: PASS ({time.time() - t0:6.2f}s)  "
                    f"{description}")
        return wrapper
    return deco


def _map(text):
    return parse_map(text).map


@criterion(1, "bit-exact 4-symmetric product of x^2 - 2")
def test_criterion_1_bit_exact_symmetrize():
    t0 = time.time()
    Fm = symmetrize(_map("x^2 - 2"), 4)
    elapsed = time.time() - t0
    names = ["v0", "v1", "v2", "v3", "v4"]
    expected = [
        "v0^2 - 2*v1^2 + 4*v0*v2 + 4*v2^2 - 8*v1*v3 - 8*v3^2 + 8*v0*v4 "
        "+ 16*v2*v4 + 16*v4^2",
        "v1^2 - 2*v0*v2 - 4*v2^2 + 8*v1*v3 + 12*v3^2 - 8*v0*v4 - 24*v2*v4 "
        "- 32*v4^2",
        "v2^2 - 2*v1*v3 - 6*v3^2 + 2*v0*v4 + 12*v2*v4 + 24*v4^2",
        "v3^2 - 2*v2*v4 - 8*v4^2",
        "v4^2",
    ]
    for comp, text in zip(Fm.components, expected):
        assert comp == parse_mpoly(text, names)
    assert elapsed < 1.0, f"took {elapsed:.2f}s"


@criterion(2, "eta and eta~ values: (81,108,54,12,1) and (1,-1,1,-1,1)")
def test_criterion_2_eta_values():
    assert eta([p1_point(3)] * 4).coords == (81, 108, 54, 12, 1)
    Z5 = NumberField.get(UniPoly((1, 1, 1, 1, 1)))
    assert eta_tilde(AlgebraicPoint(Z5, Z5.gen()), 4).coords == (1, -1, 1, -1, 1)


@criterion(3, "canonical heights: 0.9624, 3.84969 = 4x, 0.3884, in < 10 s")
def test_criterion_3_canonical_heights():
    t0 = time.time()
    f = _map("x^2 - 2")
    h1 = canonical_height(morphism_of_map(f), p1_point(3), tol=1e-7,
                          bad=bad_primes(f))
    assert abs(h1.value - 0.9624) < 1e-3
    closed = float(mpmath.log((3 + mpmath.sqrt(5)) / 2))
    assert abs(h1.value - closed) < 1e-6
    F4 = symmetrize(f, 4)
    tol = 1e-6
    h4 = canonical_height(F4, PkPoint((81, 108, 54, 12, 1)), tol=tol,
                          bad=bad_primes_sym(f, 4))
    assert abs(h4.value - 3.84969) < 1e-3
    assert abs(h4.value - 4 * h1.value) < 2 * tol
    Z5 = NumberField.get(UniPoly((1, 1, 1, 1, 1)))
    hz = canonical_height_nf(f, AlgebraicPoint(Z5, Z5.gen()), tol=1e-6)
    assert abs(hz.value - 0.3884) < 1e-3
    elapsed = time.time() - t0
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


@criterion(4, "21 preperiodic points over fields of degree <= 3 for x^2 - 29/16")
def test_criterion_4_twenty_one_points():
    t0 = time.time()
    f = _map("x^2 - 29/16")
    graph = preperiodic_graph(f, 3, 3)
    rat, orbits = graph.recovered_points()
    rationals = {pt.to_text() for pt in rat}
    assert rationals == {"oo", "7/4", "-7/4", "5/4", "-5/4", "1/4", "-1/4",
                         "3/4", "-3/4"}
    ref = NumberField.get(UniPoly((23, -164, 16, 64)))
    cubic_points = 0
    cubic_orbits = 0
    for minpoly, fld in orbits:
        if minpoly.degree == 3:
            cubic_orbits += 1
            assert same_field(ref, fld), minpoly.to_text()
            cubic_points += len(roots_in_number_field(minpoly, ref))
    assert cubic_orbits == 4
    assert cubic_points == 12
    assert len(rationals) + cubic_points == 21
    elapsed = time.time() - t0
    assert elapsed < 60.0, f"took {elapsed:.2f}s"


@criterion(5, "verified rational 5-cycles over degree-5 fields for three c values")
def test_criterion_5_five_cycles():
    for c in (F(-2), F(-16, 9), F(-64, 9)):
        t0 = time.time()
        f = RationalMap1.from_affine_polynomial(UniPoly((c, 0, 1)))
        pts = rational_periodic_points(f, 5, 5)
        verified = False
        for p, _per in pts:
            comps = conjugate_points(p)
            if (len(comps) == 1 and comps[0][0] is not None
                    and comps[0][0].degree == 5 and comps[0][2] == 1):
                cls = orbit_classify(f, comps[0][1])
                if cls.preperiodic and cls.tail == 0 and cls.period == 5:
                    verified = True
                    break
        assert verified, f"no verified 5-cycle for c = {c}"
        elapsed = time.time() - t0
        assert elapsed < 120.0, f"c = {c} took {elapsed:.2f}s"


@criterion(6, "multiplier charpoly structure: fixtures plus 50 random instances")
def test_criterion_6_multiplier_structure():
    f21 = _map("x^2 - 21/16")
    p = eta([p1_point(F(-3, 4)), p1_point(F(1, 4)), p1_point(F(-5, 4))])
    rep = multiplier_F(f21, 3, p, 1)
    assert rep.charpoly == UniPoly((F(3, 2), 1)) * UniPoly((F(5, 4), 0, 1))
    assert multiplier_f(f21, F(7, 4), 1) == F(7, 2)
    assert multiplier_f(f21, F(-5, 4), 2) == F(-5, 4)
    f29 = _map("x^2 - 29/16")
    p3 = eta([p1_point(F(5, 4)), p1_point(F(-1, 4)), p1_point(F(-7, 4))])
    assert multiplier_F(f29, 3, p3, 1).charpoly == UniPoly((F(-35, 8), 0, 0, 1))
    assert multiplier_f(f29, F(5, 4), 3) == F(35, 8)

    rng = random.Random(2024)
    instances = 0
    # repeated fixed points: charpoly divisible by prod (x - lam^i)
    while instances < 25:
        d = rng.choice([2, 3])
        fixed = []
        while len(fixed) < d:
            a = F(rng.randrange(-6, 7), rng.choice([1, 2]))
            if a not in fixed:
                fixed.append(a)
        c = F(rng.randrange(1, 7), rng.choice([1, 2, 4]))
        prod = UniPoly.one()
        for a in fixed:
            prod = prod * UniPoly((-a, 1))
        poly = UniPoly((0, 1)) + prod * c
        f = RationalMap1.from_affine_polynomial(poly)
        k = rng.choice([2, 3])
        m = rng.randrange(2, k + 1)
        multiset = [fixed[0]] * m + fixed[1: 1 + k - m]
        if len(multiset) != k:
            continue
        rep = multiplier_F(f, k, eta([p1_point(v) for v in multiset]), 1)
        lam = poly.derivative()(fixed[0])
        want = UniPoly.one()
        for i in range(1, m + 1):
            want = want * UniPoly((-lam ** i, 1))
        assert (rep.charpoly % want).is_zero()
        instances += 1
    # collapsed 2-cycles: charpoly divisible by x^2 - lam
    while instances < 50:
        s = F(rng.randrange(2, 9), rng.choice([1, 2, 3]))
        if s in (1, -1):
            continue
        b = s - 1 / s
        if b == 0:
            continue
        f = RationalMap1.from_affine_polynomial(UniPoly((b, -(b + 1), 1)))
        lam = 1 - b * b
        rep2 = multiplier_F(f, 2, eta([p1_point(0), p1_point(b)]), 1)
        assert rep2.charpoly == UniPoly((-lam, 0, 1))
        fx = (b + 2 + s + 1 / s) / 2
        rep3 = multiplier_F(
            f, 3, eta([p1_point(0), p1_point(b), p1_point(fx)]), 1)
        assert (rep3.charpoly % UniPoly((-lam, 0, 1))).is_zero()
        instances += 2
    assert instances >= 50


@criterion(7, "commutation: 200 random exact checks + parametrized families")
def test_criterion_7_commutation():
    rng = random.Random(1234)
    checks = 0
    while checks < 200:
        d = rng.choice([2, 3])
        k = rng.choice([2, 3])
        try:
            f = RationalMap1([rng.randrange(-9, 10) for _ in range(d + 1)],
                             [rng.randrange(-9, 10) for _ in range(d + 1)])
        except (DegenerateMapError, DomainError):
            continue
        Fk = symmetrize(f, k)
        for _ in range(4):
            pts = []
            for _i in range(k):
                if rng.random() < 0.1:
                    pts.append(PkPoint((1, 0)))
                else:
                    pts.append(p1_point(F(rng.randrange(-15, 16),
                                          rng.randrange(1, 10))))
            assert eta([f.apply_point(q) for q in pts]) == Fk.apply(eta(pts))
            checks += 1
    assert checks >= 200

    # Milnor family at 12 rational parameters, k in {2, 3} (a^4 = 1 excluded)
    milnor_params = [F(2), F(3), F(4), F(-2), F(-3), F(5), F(1, 2), F(3, 2),
                     F(2, 3), F(5, 2), F(-1, 3), F(7, 3)]
    for a in milnor_params:
        a2 = a * a
        f = RationalMap1((1, a2, 0), (0, a2, 1))
        for k in (2, 3):
            assert verify_commutation(f, k)
    # flexible degree-4 family at 12 rational parameters, k = 2
    flexible_params = [F(2), F(3), F(-1), F(-2), F(5), F(1, 2), F(3, 2),
                       F(-1, 2), F(2, 3), F(5, 3), F(-3), F(7, 2)]
    for lam in flexible_params:
        text = (f"[(z^2 - {lam.numerator}/{lam.denominator}*t^2)^2, "
                f"4*z*t*(z - t)*(z - {lam.numerator}/{lam.denominator}*t)]")
        f = _map(text)
        assert f.d == 4
        assert verify_commutation(f, 2)


@criterion(8, "bad primes, degeneracy audit, and the period bound 234")
def test_criterion_8_bad_primes_and_bounds():
    from symprod.gf import morphism_degenerate_over

    f29 = _map("x^2 - 29/16")
    assert tuple(bad_primes(f29)) == (2,)
    for k in (2, 3):
        assert bad_primes_sym(f29, k) == bad_primes(f29)
        assert bad_primes_sym(_map("x^2 - 2"), k) == bad_primes(_map("x^2 - 2"))
    for text in ("x^2 - 29/16", "x^2 - 2"):
        f = _map(text)
        F2 = symmetrize(f, 2)
        bad = set(bad_primes_sym(f, 2))
        for p in (2, 3, 5, 7):
            found = any(morphism_degenerate_over(F2, p, e) for e in (1, 2, 3))
            assert found == (p in bad), (text, p)
    assert period_bound(PeriodBoundInput(Np=3, p=3, vp=1, k=2)) == 234


@criterion(9, "postcritical finiteness verdicts with machine-checkable certificates")
def test_criterion_9_pcf():
    expected = {
        "x^2 - 1": "PCF",
        "x^2 - 2": "PCF",
        "x^2 + 1": "not-PCF",
        "x^2 - 1/1": "PCF",        # p_a at a = 1
        "x^2 - 1/4": "not-PCF",    # p_a at a = 2
    }
    for text, verdict in expected.items():
        f = _map(text)
        cert = is_pcf(f)
        assert cert.verdict == verdict, text
        for _fld, pt, _m, cls in cert.entries:
            if cls.preperiodic:
                # machine check: f^(tail+period)(P) = f^(tail)(P) exactly
                cur = pt
                for _ in range(cls.tail):
                    cur = f.apply_algebraic(cur)
                mark = cur
                for _ in range(cls.period):
                    cur = f.apply_algebraic(cur)
                assert cur == mark
            else:
                # machine check: the cited iterate exceeds the height bound
                cur = pt
                for _ in range(cls.escape_index):
                    cur = f.apply_algebraic(cur)
                q = eta_tilde(cur, 1 if cur.field is None else cur.field.degree)
                assert naive_height(q) > cls.bound
        strong = is_strongly_pcf_symmetric(f, 2)
        assert strong.verdict == verdict


@criterion(10, "height-comparison inequalities hold exactly on 200 multisets")
def test_criterion_10_height_inequalities():
    rng = random.Random(555)
    for _ in range(200):
        k = rng.randrange(2, 5)
        pts = []
        for _i in range(k):
            if rng.random() < 0.05:
                pts.append(PkPoint((1, 0)))
            else:
                pts.append(p1_point(F(rng.randrange(-60, 61),
                                      rng.randrange(1, 40))))
        p = eta(pts)
        Hprod = 1
        for q in pts:
            Hprod *= max(abs(q.coords[0]), abs(q.coords[1]))
        Heta = max(abs(c) for c in p.coords)
        # 2^-k prod H <= H(eta) <= 2^(k-1) prod H, as exact integers
        assert Hprod <= (2 ** k) * Heta
        assert Heta <= 2 ** (k - 1) * Hprod
