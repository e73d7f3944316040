"""Heights: naive and canonical, local Green's functions, bad primes.

The canonical height of a rational point is the sum of local Green's
functions of a fixed primitive-integer lift: the archimedean one by
norm-renormalized floating iteration, the finite ones (bad primes only; good
primes contribute exactly zero for coprime coordinates) by exact valuation
bookkeeping modulo a prime power.

Every error bound is backed by a certificate: explicit integer polynomials
g_ij and nonzero integers r_i with sum_j g_ij F_j = r_i x_i^M.  These give a
two-sided comparison |h(F(p)) - d h(p)| <= C, the geometric tail bounds for
the Green iterations, and the per-step valuation caps at finite places.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import mpmath

from .errors import CertificateError, DomainError
from .intfactor import prime_divisors
from .linalg import solve_int_system
from .mpoly import MPoly
from .projective import MorphismPk, PkPoint, RationalMap1, morphism_of_map
from .symmetric import eta_tilde, symmetrize

_mp_lock = threading.Lock()


# ---------------------------------------------------------------------------
# naive height and bad primes
# ---------------------------------------------------------------------------


def naive_height(p: PkPoint) -> float:
    """log of the maximal absolute coordinate (coordinates are coprime)."""
    m = max(abs(c) for c in p.coords)
    return _log_int(m)


def _log_int(n: int) -> float:
    return float(mpmath.log(n)) if n > 1 else 0.0


class BadPrimeSet(tuple):
    """A sorted tuple of rational primes of bad reduction."""

    def __new__(cls, primes):
        return super().__new__(cls, tuple(sorted(set(primes))))


def bad_primes(f: RationalMap1) -> BadPrimeSet:
    """Primes of bad reduction: divisors of the primitive lift's resultant at
    which the reduced pair degenerates (checked directly)."""
    res = f.res
    num, den = res.numerator, res.denominator
    if den != 1:
        raise DomainError("primitive lift has non-integral resultant")  # unreachable
    out = []
    for p in prime_divisors(num):
        if _degenerates_mod_p(f, p):
            out.append(p)
    return BadPrimeSet(out)


def _degenerates_mod_p(f: RationalMap1, p: int) -> bool:
    from .polyfactor import _pgcd, _trim

    num = [c % p for c in f.num]
    den = [c % p for c in f.den]
    affn = _trim([num[len(num) - 1 - j] for j in range(len(num))])
    affd = _trim([den[len(den) - 1 - j] for j in range(len(den))])
    if not affn or not affd:
        # one component vanishes identically mod p (joint lift is primitive,
        # so not both); shared zeros certainly exist
        return True
    if num[0] % p == 0 and den[0] % p == 0:
        return True  # common root at infinity
    return len(_pgcd(affn, affd, p)) > 1


def bad_primes_sym(f: RationalMap1, k: int) -> BadPrimeSet:
    """Bad primes of the k-symmetric product: identical to those of f (over Q
    the prime contraction is the identity)."""
    if k < 1:
        raise DomainError("k must be at least 1")
    return bad_primes(f)


# ---------------------------------------------------------------------------
# the height-comparison certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeightCertificate:
    morphism_key: tuple
    exponents: tuple          # M_i per coordinate
    multipliers: tuple        # integers r_i
    g_norms: tuple            # sum_j of 1-norms of g_ij, per i
    coeff_norm: int           # U = max_i sum |coeffs of F_i|
    bad: tuple                # primes carrying Green's functions
    valuation_caps: dict      # q -> A_q = max_i v_q(r_i)
    c_upper: float
    c_lower: float
    constant: float           # C = max of the two, rounded up
    bound: float              # B = C/(d-1), rounded up
    escape_threshold: int     # coordinates above this certify naive height > B
    verified: bool = True

    def green_constant(self) -> float:
        return max(self.c_upper, self.c_lower) + 1.0


_cert_cache: dict = {}
_CERT_DIM_CAP = 2000  # columns; beyond this the search is declined


def _monomials(nvars: int, deg: int):
    out = []
    for combo in combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def _find_certificate(F: MorphismPk, bad) -> HeightCertificate:
    k, d = F.k, F.d
    nvars = k + 1
    cap = (k + 1) * (d - 1) + 1
    exps = [None] * nvars
    mults = [None] * nvars
    gnorms = [None] * nvars

    for M in range(d, cap + 1):
        missing = [i for i in range(nvars) if exps[i] is None]
        if not missing:
            break
        gmons = _monomials(nvars, M - d)
        rows_mons = _monomials(nvars, M)
        if len(gmons) * nvars > _CERT_DIM_CAP:
            raise CertificateError(
                f"certificate system too large at degree {M} (k={k}, d={d})")
        row_index = {m: i for i, m in enumerate(rows_mons)}
        ncols = nvars * len(gmons)
        rows = [[0] * ncols for _ in rows_mons]
        colinfo = []
        col = 0
        for j in range(nvars):
            fterms = [(int(c), e) for e, c in F.components[j].terms.items()]
            for alpha in gmons:
                for c, e in fterms:
                    tot = tuple(a + b for a, b in zip(alpha, e))
                    rows[row_index[tot]][col] += c
                colinfo.append((j, alpha))
                col += 1
        for i in list(missing):
            target = [0] * nvars
            target[i] = M
            rhs = [0] * len(rows_mons)
            rhs[row_index[tuple(target)]] = 1
            sol = solve_int_system(rows, rhs)
            if sol is None:
                continue
            den = math.lcm(*(x.denominator for x in sol)) if sol else 1
            gsum = 0
            polys = [dict() for _ in range(nvars)]
            for (j, alpha), x in zip(
                    [(j, a) for j in range(nvars) for a in gmons], sol):
                if x:
                    polys[j][alpha] = int(x * den)
            for j in range(nvars):
                gsum += sum(abs(c) for c in polys[j].values())
            # exact verification of the identity sum g_ij F_j = r_i x_i^M
            acc = MPoly.zero(nvars)
            for j in range(nvars):
                if polys[j]:
                    gp = MPoly(nvars, {a: Fraction(c) for a, c in polys[j].items()})
                    acc = acc + gp * F.components[j]
            want = MPoly(nvars, {tuple(target): Fraction(den)})
            if acc != want:
                raise CertificateError("certificate failed exact verification")
            exps[i] = M
            mults[i] = den
            gnorms[i] = gsum
    if any(e is None for e in exps):
        raise CertificateError(
            f"no Nullstellensatz certificate up to degree {cap}")

    U = max(sum(abs(int(c)) for c in comp.terms.values()) for comp in F.components)
    c_up = _ceil_log(U)
    # lower bound: ||F(x)|| >= min_i (|r_i| / gnorm_i) * ||x||^d, minus content loss
    worst = max(Fraction(g, abs(r)) for g, r in zip(gnorms, mults))
    caps = {}
    content_loss = 0.0
    for q in bad:
        a = max(_valuation(abs(r), q) for r in mults)
        caps[q] = a
        content_loss += a * float(mpmath.log(q))
    c_low = _ceil_log_fraction(worst) + content_loss
    constant = max(c_up, c_low) + 1e-9
    bound = constant / (d - 1) + 1e-9
    threshold = int(mpmath.ceil(mpmath.e ** (bound + 1e-9))) + 1
    return HeightCertificate(
        morphism_key=F.key(), exponents=tuple(exps), multipliers=tuple(mults),
        g_norms=tuple(gnorms), coeff_norm=U, bad=tuple(bad),
        valuation_caps=caps, c_upper=c_up, c_lower=c_low,
        constant=constant, bound=bound, escape_threshold=threshold)


def _ceil_log(n: int) -> float:
    if n <= 1:
        return 0.0
    return float(mpmath.log(n)) + 1e-12


def _ceil_log_fraction(x: Fraction) -> float:
    if x <= 1:
        return 0.0
    return float(mpmath.log(x.numerator) - mpmath.log(x.denominator)) + 1e-12


def _valuation(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def morphism_certificate(F: MorphismPk, bad=None) -> HeightCertificate:
    key = (F.key(), tuple(sorted(bad)) if bad is not None else None)
    got = _cert_cache.get(key)
    if got is None:
        if bad is None:
            # safe superset: any prime not dividing some r_i has good reduction
            tmp = _find_certificate(F, bad=())
            primes = set()
            for r in tmp.multipliers:
                primes.update(prime_divisors(r))
            got = _find_certificate(F, bad=tuple(sorted(primes)))
        else:
            got = _find_certificate(F, bad=tuple(sorted(bad)))
        _cert_cache[key] = got
    return got


def height_comparison_constant(F: MorphismPk, bad=None) -> float:
    """Certified C with |h(F(p)) - d h(p)| <= C for all rational points p."""
    return morphism_certificate(F, bad).constant


def preperiodicity_bound(f) -> float:
    """B = C/(d-1): any point with an iterate of naive height > B is
    certified non-preperiodic."""
    cert = _certificate_for(f)
    return cert.bound


def _certificate_for(f) -> HeightCertificate:
    if isinstance(f, RationalMap1):
        return morphism_certificate(morphism_of_map(f), bad=bad_primes(f))
    if isinstance(f, MorphismPk):
        return morphism_certificate(f)
    raise DomainError("expected a RationalMap1 or MorphismPk")


# ---------------------------------------------------------------------------
# local Green's functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeightValue:
    value: float
    error_bound: float
    places: tuple = ()
    notes: tuple = ()

    def to_json(self) -> dict:
        return {
            "schema_version": "1",
            "value": self.value,
            "error_bound": self.error_bound,
            "places": [{"place": name, "contribution": c} for name, c in self.places],
            "notes": list(self.notes),
        }


def green_local(F: MorphismPk, p: PkPoint, place, tol: float = 1e-6,
                prec: int = 53, bad=None, cert: HeightCertificate | None = None):
    """Local Green's function of the primitive lift at one place.

    place is "arch" (or "inf") for the archimedean place, else a prime.
    Good primes return the local naive term (0 for coprime coordinates)
    exactly.  Returns (value, error_bound).
    """
    if cert is None:
        cert = morphism_certificate(F, bad) if bad is not None else _certificate_for(F)
    if p.k != F.k:
        raise DomainError("dimension mismatch")
    if place in ("arch", "inf", "infinity"):
        return _green_arch(F, p, tol, prec, cert)
    q = int(place)
    if q not in cert.bad:
        return 0.0, 0.0
    return _green_finite(F, p, q, tol, cert)


def _green_arch(F: MorphismPk, p: PkPoint, tol, prec, cert):
    d = F.d
    C = cert.green_constant()
    N = max(1, int(mpmath.ceil(mpmath.log(C / (tol * (d - 1))) / mpmath.log(d))) + 1)
    with _mp_lock:
        old = mpmath.mp.prec
        mpmath.mp.prec = max(53, prec)
        try:
            u = [mpmath.mpf(c) for c in p.coords]
            scale = max(abs(x) for x in u)
            acc = mpmath.log(scale)
            u = [x / scale for x in u]
            for n in range(N):
                w = [_eval_mp(comp, u) for comp in F.components]
                s = max(abs(x) for x in w)
                acc += mpmath.log(s) / mpmath.mpf(d) ** (n + 1)
                u = [x / s for x in w]
            tail = C * float(mpmath.mpf(d) ** (-N)) / (d - 1)
            slack = N * (C + 2) * 2.0 ** (10 - mpmath.mp.prec)
            return float(acc), tail + slack
        finally:
            mpmath.mp.prec = old


def _eval_mp(comp: MPoly, vals):
    total = mpmath.mpf(0)
    for e, c in comp.terms.items():
        term = mpmath.mpf(c.numerator)
        for v, a in zip(vals, e):
            if a:
                term *= v ** a
        total += term
    return total


def _green_finite(F: MorphismPk, p: PkPoint, q: int, tol, cert):
    d = F.d
    A = cert.valuation_caps.get(q, 0)
    if A == 0:
        return 0.0, 0.0
    logq = float(mpmath.log(q))
    N = max(1, int(mpmath.ceil(
        mpmath.log(A * logq / (tol * (d - 1))) / mpmath.log(d))) + 1)
    mtotal = A * N + A + 4
    modulus = q ** mtotal
    x = [c % modulus for c in p.coords]
    mrem = mtotal
    total = Fraction(0)
    for n in range(1, N + 1):
        mod_n = q ** mrem
        y = [v % mod_n for v in F.eval_int(x)]
        m = min((_valuation_mod(v, q, mrem) for v in y), default=mrem)
        if m > A:
            raise DomainError("valuation cap violated; certificate inconsistent")
        qm = q ** m
        mrem -= m
        mod_next = q ** mrem
        x = [(v // qm) % mod_next for v in y]
        total += Fraction(m, d ** n)
    val = -float(mpmath.mpf(total.numerator) / total.denominator * mpmath.log(q)) \
        if total else 0.0
    tail = A * logq * d ** (-float(N)) / (d - 1)
    return val, tail + 1e-12


def _valuation_mod(v: int, q: int, cap: int) -> int:
    if v == 0:
        return cap
    n = 0
    while v % q == 0:
        v //= q
        n += 1
    return n


# ---------------------------------------------------------------------------
# canonical heights
# ---------------------------------------------------------------------------


def canonical_height(F: MorphismPk, p: PkPoint, tol: float = 1e-6,
                     prec: int = 53, bad=None) -> HeightValue:
    """Canonical height of a rational point as a certified sum of local
    Green's functions over the archimedean place and the bad primes."""
    cert = morphism_certificate(F, bad) if bad is not None else _certificate_for(F)
    places = [("arch", None)] + [(str(q), q) for q in cert.bad]
    share = tol / len(places)
    contributions = []
    total = 0.0
    err = 0.0
    for name, q in places:
        if q is None:
            v, e = _green_arch(F, p, share, prec, cert)
        else:
            v, e = _green_finite(F, p, q, share, cert)
        contributions.append((name, v))
        total += v
        err += e
    if total < 0 and total > -err:
        total = 0.0  # heights are nonnegative; clamp roundoff
    return HeightValue(value=total, error_bound=err, places=tuple(contributions))


def canonical_height_nf(f: RationalMap1, point, tol: float = 1e-6,
                        prec: int = 53) -> HeightValue:
    """Canonical height of an algebraic point of P^1, computed over Q through
    the symmetric-product transfer: h_f(P) = h_F(eta~(P)) / k."""
    from .projective import AlgebraicPoint

    if not isinstance(point, AlgebraicPoint):
        raise DomainError("expected an AlgebraicPoint")
    notes = []
    if point.infinity or point.field is None:
        k = 1
    else:
        k = point.field.degree
        if not point.field.is_galois():
            notes.append("transfer outside stated hypotheses: field is not Galois")
    if k == 1:
        F = morphism_of_map(f)
        q = eta_tilde(point, 1)
        hv = canonical_height(F, q, tol, prec, bad=bad_primes(f))
        return HeightValue(hv.value, hv.error_bound, hv.places, tuple(notes))
    F = symmetrize(f, k)
    q = eta_tilde(point, k)
    hv = canonical_height(F, q, tol * k, prec, bad=bad_primes_sym(f, k))
    return HeightValue(hv.value / k, hv.error_bound / k,
                       tuple((n, v / k) for n, v in hv.places), tuple(notes))
