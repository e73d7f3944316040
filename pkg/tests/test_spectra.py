import random
from fractions import Fraction

import pytest

from symprod import (AlgebraicPoint, DegenerateMapError, DomainError,
                     NumberField, PkPoint, RationalMap1, UniPoly, critical_points,
                     eta, is_pcf, is_strongly_pcf_symmetric, multiplier_F,
                     multiplier_f, p1_point, parse_map, symmetrize)
from symprod.linalg import charpoly
from symprod.spectra import multiplier_matrix

F = Fraction


def _map(text):
    return parse_map(text).map


def _poly_map(coeffs):
    return RationalMap1.from_affine_polynomial(UniPoly(coeffs))


# ---------------------------------------------------------------------------
# base multipliers
# ---------------------------------------------------------------------------


def test_multiplier_fixed_points():
    f = _map("x^2 - 21/16")
    assert multiplier_f(f, F(7, 4), 1) == F(7, 2)
    assert multiplier_f(f, F(-3, 4), 1) == F(-3, 2)


def test_multiplier_two_cycle():
    f = _map("x^2 - 21/16")
    assert multiplier_f(f, F(-5, 4), 2) == F(-5, 4)
    assert multiplier_f(f, F(1, 4), 2) == F(-5, 4)


def test_multiplier_at_infinity():
    fsq = _map("[z^2, t^2]")
    assert multiplier_f(fsq, AlgebraicPoint.at_infinity(), 1) == 0
    # a cycle through infinity: [t^2, z^2] swaps 0 and infinity
    fswap = _map("[t^2, z^2]")
    lam = multiplier_f(fswap, p1_point(0), 2)
    assert lam == 0


def test_multiplier_rejects_nonperiodic():
    with pytest.raises(DomainError):
        multiplier_f(_map("x^2 - 2"), p1_point(3), 1)


def test_multiplier_algebraic_cycle():
    # the golden-ratio fixed points of x^2 - 1... use x^2 - 29/16's quadratic
    # fixed points: multiplier is 2x, an element of Q(sqrt33)
    f = _map("x^2 - 29/16")
    K = NumberField.get(UniPoly((F(-29, 16), -1, 1)))  # x^2 - x - 29/16
    w = K.gen()
    lam = multiplier_f(f, AlgebraicPoint(K, w), 1)
    assert lam == 2 * w


# ---------------------------------------------------------------------------
# symmetric-product multiplier matrices
# ---------------------------------------------------------------------------


def test_collapsed_two_cycle_charpoly():
    f = _map("x^2 - 21/16")
    p = eta([p1_point(F(-3, 4)), p1_point(F(1, 4)), p1_point(F(-5, 4))])
    rep = multiplier_F(f, 3, p, 1)
    assert rep.charpoly == UniPoly((F(3, 2), 1)) * UniPoly((F(5, 4), 0, 1))
    lams = sorted(str(l) for _pt, _per, l in rep.base_multipliers)
    assert len(rep.base_multipliers) == 3


def test_three_cycle_collapse_charpoly():
    f = _map("x^2 - 29/16")
    p = eta([p1_point(F(5, 4)), p1_point(F(-1, 4)), p1_point(F(-7, 4))])
    rep = multiplier_F(f, 3, p, 1)
    assert rep.charpoly == UniPoly((F(-35, 8), 0, 0, 1))   # x^3 - 35/8
    assert multiplier_f(f, F(5, 4), 3) == F(35, 8)


def test_repeated_fixed_point_charpoly():
    f = _map("x^2 - 21/16")
    lam = F(7, 2)
    p = eta([p1_point(F(7, 4))] * 3)
    rep = multiplier_F(f, 3, p, 1)
    want = UniPoly.one()
    for i in (1, 2, 3):
        want = want * UniPoly((-lam ** i, 1))
    assert rep.charpoly == want


def test_chart_independence():
    f = _map("x^2 - 21/16")
    F3 = symmetrize(f, 3)
    p = eta([p1_point(F(-3, 4)), p1_point(F(1, 4)), p1_point(F(-5, 4))])
    # the canonical chart result
    rep = multiplier_F(f, 3, p, 1)
    # recompute in every admissible fixed chart by permuting coordinates...
    # chart choice is per-point inside multiplier_matrix; instead verify the
    # charpoly is invariant under relabeling the orbit start for a cycle
    f29 = _map("x^2 - 29/16")
    cyc = [F(5, 4), F(-1, 4), F(-7, 4)]
    reps = []
    for rot in range(3):
        pts = cyc[rot:] + cyc[:rot]
        p0 = eta([p1_point(v) for v in pts])
        reps.append(multiplier_F(f29, 3, p0, 1).charpoly)
    assert reps[0] == reps[1] == reps[2]


def test_chart_independence_infinity_chart():
    # a point with vanishing last coordinate forces a different chart
    f = _map("x^2 - 21/16")
    p = eta([PkPoint((1, 0)), p1_point(F(7, 4))])
    rep = multiplier_F(f, 2, p, 1)
    # multiset {oo, 7/4}: eigenvalues 0 (superattracting) and 7/2
    assert rep.charpoly == UniPoly((0, 1)) * UniPoly((F(-7, 2), 1))


def _random_interpolation_map(rng, d, fixed):
    """Polynomial map of degree d fixing the given rational points:
    f(x) = x + c * prod (x - a_i)."""
    c = F(rng.randrange(1, 7), rng.choice([1, 2, 4]))
    poly = UniPoly((0, 1))
    prod = UniPoly.one()
    for a in fixed:
        prod = prod * UniPoly((-a, 1))
    return _poly_map((poly + prod * c).coeffs), c, prod


def test_multiplier_structure_repeated_points_randomized():
    """m-fold repeated fixed points contribute prod (x - lam^i)."""
    rng = random.Random(99)
    for _ in range(25):
        d = rng.choice([2, 3])
        fixed = []
        while len(fixed) < d:
            a = F(rng.randrange(-6, 7), rng.choice([1, 2]))
            if a not in fixed:
                fixed.append(a)
        f, c, prod = _random_interpolation_map(rng, d, fixed)
        deriv = (UniPoly((0, 1)) + prod * c).derivative()
        k = rng.choice([2, 3])
        m = rng.randrange(2, k + 1)
        target = fixed[0]
        rest = fixed[1:]
        multiset = [target] * m + rest[: k - m]
        if len(multiset) != k:
            continue
        p = eta([p1_point(v) for v in multiset])
        rep = multiplier_F(f, k, p, 1)
        lam = deriv(target)
        want = UniPoly.one()
        for i in range(1, m + 1):
            want = want * UniPoly((-lam ** i, 1))
        assert (rep.charpoly % want).is_zero(), (f, multiset)


def test_multiplier_structure_collapsed_cycles_randomized():
    """A collapsed m-cycle with multiplier lam contributes x^m - lam."""
    rng = random.Random(7)
    count = 0
    while count < 25:
        s = F(rng.randrange(1, 9), rng.choice([1, 2, 3]))
        if s in (0, 1, -1):
            continue
        b = s - 1 / s
        if b == 0:
            continue
        # f(0) = b, f(b) = 0
        f = _poly_map((b, -(b + 1), 1))
        lam = 1 - b * b
        p2 = eta([p1_point(0), p1_point(b)])
        rep2 = multiplier_F(f, 2, p2, 1)
        assert rep2.charpoly == UniPoly((-lam, 0, 1)), (s, b)
        # k = 3: complete with a rational fixed point ((b+2) +- (s+1/s))/2
        fx = (b + 2 + s + 1 / s) / 2
        assert f.apply_point(p1_point(fx)) == p1_point(fx)
        p3 = eta([p1_point(0), p1_point(b), p1_point(fx)])
        rep3 = multiplier_F(f, 3, p3, 1)
        assert (rep3.charpoly % UniPoly((-lam, 0, 1))).is_zero(), (s, b)
        count += 1


def test_trace_consistency_distinct_fixed_points():
    rng = random.Random(13)
    for _ in range(10):
        fixed = []
        while len(fixed) < 2:
            a = F(rng.randrange(-5, 6), rng.choice([1, 2]))
            if a not in fixed:
                fixed.append(a)
        f, c, prod = _random_interpolation_map(rng, 2, fixed)
        deriv = (UniPoly((0, 1)) + prod * c).derivative()
        p = eta([p1_point(v) for v in fixed])
        M = multiplier_matrix(symmetrize(f, 2), p, 1)
        trace = M[0][0] + M[1][1]
        assert trace == deriv(fixed[0]) + deriv(fixed[1])


# ---------------------------------------------------------------------------
# critical points and PCF
# ---------------------------------------------------------------------------


def test_critical_points_quadratic_polynomial():
    got = {(pt.to_text(), m) for _f, pt, m in critical_points(_map("x^2 + 1"))}
    assert got == {("oo", 1), ("0", 1)}


def test_critical_points_restricted_family():
    # [-a^2 z^2, (z+t)^2] at a = 2: critical points 0 and -1 (the Wronskian
    # is -4 a^2 z (z + t); the flip point is (1 : -1))
    fa = _map("[-4*z^2, (z + t)^2]")
    got = {(pt.to_text(), m) for _f, pt, m in critical_points(fa)}
    assert got == {("0", 1), ("-1", 1)}


def test_critical_points_cubic_power():
    got = {(pt.to_text(), m) for _f, pt, m in critical_points(_map("[z^3, t^3]"))}
    assert got == {("oo", 2), ("0", 2)}
    with pytest.raises(DegenerateMapError):
        RationalMap1((0, 1, 0), (0, 2, 0))


def test_critical_points_total_multiplicity():
    rng = random.Random(3)
    for _ in range(10):
        d = rng.choice([2, 3])
        while True:
            try:
                f = RationalMap1([rng.randrange(-9, 10) for _ in range(d + 1)],
                                 [rng.randrange(-9, 10) for _ in range(d + 1)])
                break
            except (DegenerateMapError, DomainError):
                continue
        try:
            crit = critical_points(f)
        except DegenerateMapError:
            continue
        total = sum((fld.degree if fld else 1) * m for fld, _pt, m in crit)
        assert total == 2 * d - 2


def test_pcf_suite():
    assert is_pcf(_map("x^2 - 1")).verdict == "PCF"
    assert is_pcf(_map("x^2 - 2")).verdict == "PCF"
    assert is_pcf(_map("x^2 + 1")).verdict == "not-PCF"
    # conjugated restriction family z^2 - 1/a^2: PCF at a=1, not at a=2
    assert is_pcf(_map("x^2 - 1")).verdict == "PCF"
    cert = is_pcf(_map("x^2 - 1/4"))
    assert cert.verdict == "not-PCF"
    wandering = [cls for _f, _pt, _m, cls in cert.entries
                 if cls.status == "wandering"]
    assert wandering and wandering[0].escape_index is not None
    assert wandering[0].bound is not None


def test_pcf_never_unknown():
    rng = random.Random(77)
    for _ in range(8):
        c = F(rng.randrange(-12, 13), rng.choice([1, 2, 4, 8]))
        cert = is_pcf(_poly_map((c, 0, 1)))
        assert cert.verdict in ("PCF", "not-PCF")
        for _f, _pt, _m, cls in cert.entries:
            assert cls.status in ("preperiodic", "wandering")


def test_strongly_pcf_mirrors_base():
    for text in ("x^2 - 1", "x^2 - 2", "x^2 + 1", "x^2 - 1/4", "[z^2, t^2]"):
        base = is_pcf(_map(text))
        for k in (2, 3):
            strong = is_strongly_pcf_symmetric(_map(text), k)
            assert strong.verdict == base.verdict
            assert strong.notes


def test_pcf_quadratic_critical_points():
    # a map with irrational critical points: [z^2 - t^2, z*t] has Wronskian
    # z^2 + t^2 -> critical points +-i (a quadratic pair)
    f = _map("[z^2 - t^2, z*t]")
    crit = critical_points(f)
    assert any(fld is not None and fld.degree == 2 for fld, _pt, _m in crit)
    cert = is_pcf(f)
    assert cert.verdict in ("PCF", "not-PCF")


def test_multiplier_report_json():
    f = _map("x^2 - 29/16")
    p = eta([p1_point(F(5, 4)), p1_point(F(-1, 4)), p1_point(F(-7, 4))])
    rep = multiplier_F(f, 3, p, 1)
    data = rep.to_json()
    assert data["schema_version"] == "1"
    assert data["charpoly"] == "x^3 - 35/8"
    assert len(data["matrix"]) == 3
    assert is_pcf(f).to_json()["verdict"] in ("PCF", "not-PCF")
