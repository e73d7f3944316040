"""Iteration, orbit classification, periodic/preperiodic point search.

The search for rational periodic points of a symmetric product works on the
base map: the points of period dividing n are the roots of the fixed-point
form of f^n (degree d^n + 1); Galois-stable multisets of total degree k built
from its irreducible factors give candidate points of P^k(Q), and every
candidate is verified by exact iteration.  Preimages are enumerated the same
way from a pullback form, with a final exact filter, so the root-convention
bookkeeping is self-correcting.
"""

from __future__ import annotations

import json
import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceededError, DomainError
from .gf import FiniteField, cycle_lengths, p1_points, reduce_map
from .heights import bad_primes, bad_primes_sym, morphism_certificate
from .projective import (AlgebraicPoint, BinaryForm, MorphismPk, PkPoint,
                         RationalMap1, form_of_point, morphism_of_map,
                         point_of_form, zero_form_to_point_form)
from .symmetric import conjugate_points, eta_tilde, symmetrize
from .unipoly import UniPoly

DEFAULT_BUDGET = 4096
_ORBIT_CAP = 100000


def apply(F: MorphismPk, p: PkPoint) -> PkPoint:
    """Exact evaluation of F at p followed by canonical normalization."""
    return F.apply(p)


# ---------------------------------------------------------------------------
# orbit classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClassification:
    status: str                      # "preperiodic" or "wandering"
    tail: int | None = None          # iterations before entering the cycle
    period: int | None = None        # minimal cycle length
    escape_index: int | None = None  # iterate whose height exceeded the bound
    bound: float | None = None       # the preperiodicity height bound used

    @property
    def preperiodic(self) -> bool:
        return self.status == "preperiodic"

    def to_json(self) -> dict:
        return {"status": self.status, "tail": self.tail, "period": self.period,
                "escape_index": self.escape_index, "bound": self.bound}


def _classify_pk_orbit(F: MorphismPk, p: PkPoint, cert) -> OrbitClassification:
    seen = {p: 0}
    cur = p
    for i in range(1, _ORBIT_CAP):
        if max(abs(c) for c in cur.coords) > cert.escape_threshold:
            return OrbitClassification("wandering", escape_index=i - 1,
                                       bound=cert.bound)
        cur = F.apply(cur)
        j = seen.get(cur)
        if j is not None:
            return OrbitClassification("preperiodic", tail=j, period=i - j)
        seen[cur] = i
    raise DomainError("orbit classification exceeded the iteration cap")


def orbit_classify(f, point) -> OrbitClassification:
    """Exact repeat-or-escape dichotomy.

    Accepts (MorphismPk, PkPoint), (RationalMap1, PkPoint of P^1), or
    (RationalMap1, AlgebraicPoint); heights of algebraic points are measured
    over Q through eta~ and the symmetric product of the point's field degree.
    """
    if isinstance(f, MorphismPk):
        if not isinstance(point, PkPoint):
            raise DomainError("expected a PkPoint for a MorphismPk")
        return _classify_pk_orbit(f, point, morphism_certificate(f))
    if not isinstance(f, RationalMap1):
        raise DomainError("expected a RationalMap1 or MorphismPk")
    if isinstance(point, PkPoint):
        point = AlgebraicPoint.from_p1(point)
    if not isinstance(point, AlgebraicPoint):
        raise DomainError("expected a point of P^1")

    if point.field is None:
        F = morphism_of_map(f)
        cert = morphism_certificate(F, bad=bad_primes(f))
        if point.infinity:
            start = PkPoint((1, 0))
        else:
            start = PkPoint((point.value.numerator, point.value.denominator))
        return _classify_pk_orbit(F, start, cert)

    kf = point.field.degree
    F = symmetrize(f, kf)
    cert = morphism_certificate(F, bad=bad_primes_sym(f, kf))
    seen = {point: 0}
    cur = point
    for i in range(1, _ORBIT_CAP):
        shadow = eta_tilde(cur, kf)
        if max(abs(c) for c in shadow.coords) > cert.escape_threshold:
            return OrbitClassification("wandering", escape_index=i - 1,
                                       bound=cert.bound)
        cur = f.apply_algebraic(cur)
        j = seen.get(cur)
        if j is not None:
            return OrbitClassification("preperiodic", tail=j, period=i - j)
        seen[cur] = i
    raise DomainError("orbit classification exceeded the iteration cap")


# ---------------------------------------------------------------------------
# good-reduction period data
# ---------------------------------------------------------------------------


def periods_mod_p(f: RationalMap1, p: int, k: int) -> set[int]:
    """Cycle lengths of f on P^1(F_{p^j}) for j <= k, closed under lcm of
    subsets of size <= k (candidate period patterns of conjugate k-tuples)."""
    if p in bad_primes(f):
        raise DomainError(f"{p} is a prime of bad reduction")
    base: set[int] = set()
    for j in range(1, k + 1):
        gf = FiniteField(p, j)
        step = reduce_map(f, gf)
        base |= cycle_lengths(step, p1_points(gf))
    out: set[int] = set()
    items = sorted(base)
    for size in range(1, k + 1):
        for combo in combinations(items, size):
            out.add(math.lcm(*combo))
    return out


@dataclass(frozen=True)
class PeriodBoundInput:
    Np: int   # norm of the prime above p
    k: int    # extension degree
    p: int    # rational prime
    vp: int   # ramification-type valuation v(p)

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("k must be at least 1")
        if self.vp < 1:
            raise DomainError("v(p) must be at least 1")
        n = self.Np
        if n < self.p:
            raise DomainError("Np must be a power of p")
        while n % self.p == 0:
            n //= self.p
        if n != 1:
            raise DomainError("Np must be a power of p")


def _sign_plus_sqrt5(a: int, b: int) -> int:
    """Sign of a + b*sqrt(5), exactly."""
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    s = a * a - 5 * b * b
    if a > 0:
        return 1 if s > 0 else -1
    return -1 if s > 0 else 1


def exponent_bound(p: int, vp: int) -> int:
    """Certified floor of the wild-part exponent bound.

    For p != 2 this is floor(1 + log2 v(p)); for p = 2 it is
    floor(1 + log_phi((sqrt5 v + sqrt(5 v^2 + 4))/2)), decided in exact
    arithmetic in Z[sqrt5] (phi^s = (L_s + F_s sqrt5)/2 with Lucas/Fibonacci
    numbers, so each comparison is a sign computation)."""
    if vp < 1:
        raise DomainError("v(p) must be at least 1")
    if p != 2:
        return 1 + (vp.bit_length() - 1)
    target = 5 * vp * vp + 4  # R^2 with R = sqrt(5 v^2 + 4)
    s = 0
    L, Fib = 2, 0  # Lucas and Fibonacci at index 0
    Ln, Fn = 1, 1  # index 1
    while True:
        # test phi^(s+1) <= x_v; phi^(s+1) = (Ln + Fn sqrt5)/2
        D = Fn - vp
        lhs_sign = _sign_plus_sqrt5(Ln, D)
        if lhs_sign <= 0:
            ok = True
        else:
            a = Ln * Ln + 5 * D * D - target
            b = 2 * Ln * D
            ok = _sign_plus_sqrt5(a, b) <= 0
        if not ok:
            return 1 + s
        s += 1
        L, Ln = Ln, L + Ln
        Fib, Fn = Fn, Fib + Fn


def period_bound(inp: PeriodBoundInput) -> int:
    """Upper bound on the minimal period of a periodic point defined over a
    Galois extension of degree k, from good reduction at the given prime."""
    e = exponent_bound(inp.p, inp.vp)
    s = sum(inp.Np ** i for i in range(inp.k + 1))
    return s * inp.k * inp.Np * inp.p ** e


# ---------------------------------------------------------------------------
# fixed-point forms and the periodic point search
# ---------------------------------------------------------------------------


def _conv(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def iterate_lift(f: RationalMap1, n: int):
    """Coefficient vectors of the exact n-th iterate lift (P_n, Q_n), with the
    joint content stripped at every step."""
    A, B = list(f.num), list(f.den)
    for _ in range(n - 1):
        apow = [[1]]
        bpow = [[1]]
        for _i in range(f.d):
            apow.append(_conv(apow[-1], A))
            bpow.append(_conv(bpow[-1], B))
        deg = (len(A) - 1) * f.d
        newA = [0] * (deg + 1)
        newB = [0] * (deg + 1)
        for j in range(f.d + 1):
            mono = _conv(apow[f.d - j], bpow[j])
            ca, cb = f.num[j], f.den[j]
            for idx, m in enumerate(mono):
                if m:
                    if ca:
                        newA[idx] += ca * m
                    if cb:
                        newB[idx] += cb * m
        g = math.gcd(*(newA + newB))
        A = [c // g for c in newA]
        B = [c // g for c in newB]
    return A, B


def fixed_point_form(f: RationalMap1, n: int) -> BinaryForm:
    """The degree d^n + 1 form (point-encoded) whose roots are exactly the
    points of period dividing n."""
    A, B = iterate_lift(f, n)
    D = len(A) - 1
    zero_form = [0] * (D + 2)
    for j in range(D + 1):
        zero_form[j] += B[j]       # z * Q_n
        zero_form[j + 1] -= A[j]   # - t * P_n
    return zero_form_to_point_form(BinaryForm(zero_form))


def _degree_multisets(pool, k):
    """All multisets (with unlimited repetition) of forms from the pool whose
    degrees sum to exactly k; yields form lists."""

    def rec(i, remaining):
        if remaining == 0:
            yield []
            return
        if i == len(pool):
            return
        form, deg = pool[i]
        maxc = remaining // deg
        for c in range(maxc + 1):
            for rest in rec(i + 1, remaining - c * deg):
                yield [form] * c + rest

    yield from rec(0, k)


def _exact_period(F: MorphismPk, p: PkPoint, cap: int) -> int | None:
    cur = p
    for j in range(1, cap + 1):
        cur = F.apply(cur)
        if cur == p:
            return j
    return None


def rational_periodic_points(f: RationalMap1, k: int, n_max: int,
                             budget: int = DEFAULT_BUDGET):
    """All rational periodic points of the k-symmetric product built from
    f-periodic points of period <= n_max, each with its exact period.

    Returns a sorted list of (PkPoint, period)."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if f.d ** n_max > budget:
        raise BudgetExceededError(
            f"fixed-point form degree {f.d ** n_max} exceeds the budget {budget}")
    F = symmetrize(f, k)
    found: dict[PkPoint, int] = {}
    for n in range(1, n_max + 1):
        W = fixed_point_form(f, n)
        pool = [(g, g.degree) for g, _m in W.factor() if g.degree <= k]
        for forms in _degree_multisets(pool, k):
            prod = forms[0]
            for g in forms[1:]:
                prod = prod * g
            p = point_of_form(prod)
            if p in found:
                continue
            per = _exact_period(F, p, n)
            if per is None:
                raise DomainError("candidate from the fixed-point form failed "
                                  "to be periodic")  # unreachable
            found[p] = per
    return sorted(found.items())


def default_n_max(f: RationalMap1, k: int, user_cap: int | None = None,
                  budget: int = DEFAULT_BUDGET) -> int:
    """Smallest of the user cap, the good-reduction period bound at two good
    primes, and the largest n whose fixed-point form fits the budget."""
    from .intfactor import small_primes

    good = []
    bad = bad_primes(f)
    for p in small_primes():
        if p not in bad:
            good.append(p)
        if len(good) == 2:
            break
    bound = min(period_bound(PeriodBoundInput(Np=p, k=k, p=p, vp=1))
                for p in good)
    by_budget = 0
    while f.d ** (by_budget + 1) <= budget:
        by_budget += 1
    out = min(bound, max(1, by_budget))
    if user_cap is not None:
        out = min(out, user_cap)
    return max(1, out)


# ---------------------------------------------------------------------------
# preimages and the preperiodic graph
# ---------------------------------------------------------------------------


def rational_preimages(f: RationalMap1, F: MorphismPk, q: PkPoint):
    """The exact set of rational points p with F(p) = q, for F the symmetric
    product of f."""
    if q.k != F.k:
        raise DomainError("dimension mismatch")
    k = F.k
    G = form_of_point(q)
    # pullback: H(z, t) = G(Q(z,t), -P(z,t)) vanishes on the f-preimages of
    # the multiset encoded by q
    ppow = [[1]]
    qpow = [[1]]
    for _ in range(k):
        ppow.append(_conv(ppow[-1], [-c for c in f.num]))
        qpow.append(_conv(qpow[-1], list(f.den)))
    H = [0] * (k * f.d + 1)
    for j, c in enumerate(G.coeffs):
        if c:
            mono = _conv(qpow[k - j], ppow[j])
            for idx, m in enumerate(mono):
                H[idx] += c * m
    W = zero_form_to_point_form(BinaryForm(H))
    pool = [(g, g.degree) for g, _m in W.factor() if g.degree <= k]
    out = set()
    for forms in _degree_multisets(pool, k):
        prod = forms[0]
        for g in forms[1:]:
            prod = prod * g
        p = point_of_form(prod)
        if p not in out and F.apply(p) == q:
            out.add(p)
    return sorted(out)


@dataclass(frozen=True)
class GraphNode:
    point: PkPoint
    tail: int
    period: int
    components: tuple  # (NumberField | None, AlgebraicPoint, multiplicity)


class PreperiodicGraph:
    """The functional graph of all rational preperiodic points of F found by
    backward closure from the periodic set, with conjugate decompositions."""

    def __init__(self, f, k, nodes, images, periods):
        self.f = f
        self.k = k
        points = sorted(nodes)
        self._index = {p: i for i, p in enumerate(points)}
        tails, pers = _tails_and_periods(points, images, periods)
        self.nodes = []
        fields = {}
        for p in points:
            comps = conjugate_points(p)
            for fld, _pt, _m in comps:
                if fld is not None:
                    fields.setdefault(fld.minpoly.coeffs, fld)
            self.nodes.append(GraphNode(point=p, tail=tails[p], period=pers[p],
                                        components=tuple(comps)))
        self.edges = sorted((self._index[p], self._index[images[p]]) for p in points)
        self.fields = [fields[key] for key in sorted(fields)]

    def __len__(self):
        return len(self.nodes)

    def periodic_nodes(self):
        return [n for n in self.nodes if n.tail == 0]

    def recovered_points(self):
        """Distinct base-map preperiodic data: rational points as a sorted
        list, and one (minpoly, field) per higher-degree conjugate orbit."""
        rationals = set()
        orbits = {}
        for node in self.nodes:
            for fld, pt, _m in node.components:
                if fld is None:
                    rationals.add(pt)
                else:
                    orbits.setdefault(fld.minpoly.coeffs, (fld.minpoly, fld))
        rat = sorted(rationals, key=lambda p: (0, Fraction(0)) if p.infinity
                     else (1, p.value))
        return rat, [orbits[key] for key in sorted(orbits)]

    def _node_label(self, node: GraphNode) -> str:
        parts = []
        for fld, pt, mult in node.components:
            if pt.infinity:
                base = "oo"
            elif fld is None:
                base = f"(x - {pt.value})" if pt.value >= 0 \
                    else f"(x + {-pt.value})"
            else:
                base = f"({fld.minpoly.to_text()})"
            parts.append(base if mult == 1 else f"{base}^{mult}")
        coords = ", ".join(str(c) for c in node.point.coords)
        return f"minpoly={'*'.join(parts)}; coords=({coords})"

    def to_dot(self) -> str:
        lines = ["digraph preperiodic {", "  node [shape=box];"]
        for i, node in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{self._node_label(node)}"];')
        cycle = {i for i, n in enumerate(self.nodes) if n.tail == 0}
        for a, b in self.edges:
            style = " [style=bold]" if a in cycle else ""
            lines.append(f"  n{a} -> n{b}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        nodes = []
        for i, node in enumerate(self.nodes):
            comps = []
            for fld, pt, mult in node.components:
                comps.append({
                    "degree": 1 if fld is None else fld.degree,
                    "minpoly": ("x" if pt.infinity else
                                f"x - {pt.value}" if fld is None else
                                fld.minpoly_int.to_text()),
                    "infinity": pt.infinity,
                    "point": pt.to_text("w"),
                    "multiplicity": mult,
                })
            nodes.append({"id": i,
                          "coords": [str(c) for c in node.point.coords],
                          "tail": node.tail, "period": node.period,
                          "components": comps})
        return {
            "schema_version": "1",
            "nodes": nodes,
            "edges": [{"src": a, "dst": b} for a, b in self.edges],
            "fields": [{"minpoly": fld.minpoly_int.to_text(), "degree": fld.degree}
                       for fld in self.fields],
        }


def _tails_and_periods(points, images, periods):
    tails = {}
    pers = dict(periods)
    for p in points:
        if p in periods:
            tails[p] = 0
    for p in points:
        if p in tails:
            continue
        chain = []
        cur = p
        while cur not in tails:
            chain.append(cur)
            cur = images[cur]
        base_tail = tails[cur]
        base_per = pers[cur]
        for off, node in enumerate(reversed(chain), start=1):
            tails[node] = base_tail + off
            pers[node] = base_per
    return tails, pers


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SYMPROD_THREADS", "1")))
    except ValueError:
        return 1


def preperiodic_graph(f: RationalMap1, k: int, n_max: int | None = None,
                      budget: int = DEFAULT_BUDGET) -> PreperiodicGraph:
    """All rational preperiodic points of the k-symmetric product reachable
    from periodic points with base period <= n_max, as a closed graph."""
    if n_max is None:
        n_max = default_n_max(f, k, budget=budget)
    F = symmetrize(f, k)
    periodic = rational_periodic_points(f, k, n_max, budget=budget)
    periods = {p: per for p, per in periodic}
    nodes = set(periods)
    frontier = sorted(nodes)
    workers = _thread_count()
    while frontier:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                batches = list(pool.map(
                    lambda q: rational_preimages(f, F, q), frontier))
        else:
            batches = [rational_preimages(f, F, q) for q in frontier]
        new = []
        for batch in batches:
            for p in batch:
                if p not in nodes:
                    nodes.add(p)
                    new.append(p)
        frontier = sorted(new)
    images = {p: F.apply(p) for p in nodes}
    for p, img in images.items():
        if img not in nodes:
            raise DomainError("graph closure violated")  # unreachable
    return PreperiodicGraph(f, k, nodes, images, periods)
