"""Projective points, binary forms, and the two kinds of self-maps.

Conventions (all sign bookkeeping lives here):
  * PkPoint: coprime integer coordinates, first nonzero coordinate positive.
  * BinaryForm of degree k: coefficients c_j of X^(k-j) Y^j, coprime integers,
    first nonzero coefficient positive.
  * The form attached to a point multiset {[z_l : t_l]} is prod(z_l X + t_l Y),
    so its coefficient vector literally equals the eta coordinates of the
    multiset; a linear factor (a X + b Y) encodes the point (a : b).
  * A form whose *zeros* are the points of interest (fixed-point forms,
    Wronskians, pullbacks) is converted by zero_form_to_point_form, which is
    the substitution (z, t) -> (-Y, X).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DegenerateMapError, DomainError
from .mpoly import MPoly, joint_primitive
from .numberfield import NFElem, NumberField, minimal_polynomial
from .unipoly import UniPoly, sylvester_resultant


def _normalize_int_vector(vals):
    """Clear denominators, strip the gcd, make the first nonzero entry positive."""
    fr = [Fraction(v) for v in vals]
    if all(v == 0 for v in fr):
        raise DomainError("all coordinates are zero")
    den = math.lcm(*(v.denominator for v in fr))
    ints = [int(v * den) for v in fr]
    g = math.gcd(*ints)
    first = next(v for v in ints if v)
    if first < 0:
        g = -g
    return tuple(v // g for v in ints)


class PkPoint:
    """A point of P^k(Q) in canonical coprime-integer coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        object.__setattr__(self, "coords", _normalize_int_vector(coords))

    def __setattr__(self, *a):
        raise AttributeError("PkPoint is immutable")

    @property
    def k(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other):
        return isinstance(other, PkPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"({', '.join(str(c) for c in self.coords)})"

    def __lt__(self, other):
        return self.coords < other.coords


def p1_point(a, b=None) -> PkPoint:
    """P^1 point from an affine rational (b omitted) or a coordinate pair."""
    if b is None:
        a = Fraction(a)
        return PkPoint((a.numerator, a.denominator))
    return PkPoint((a, b))


P1_INFINITY = p1_point(1, 0)


class BinaryForm:
    """A nonzero homogeneous two-variable polynomial over Q, canonically scaled."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _normalize_int_vector(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("BinaryForm is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("binform", self.coeffs))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return BinaryForm(out)

    def eval(self, x, y):
        n = self.degree
        return sum(c * x ** (n - j) * y ** j for j, c in enumerate(self.coeffs))

    def to_text(self, x="X", y="Y") -> str:
        n = self.degree
        poly = MPoly(2, {(n - j, j): Fraction(c)
                         for j, c in enumerate(self.coeffs) if c})
        return poly.to_text([x, y])

    def __repr__(self):
        return f"BinaryForm({self.to_text()})"

    def factor(self):
        """Irreducible factorization over Q: list of (BinaryForm, multiplicity).

        Factors of X and Y come from vanishing end coefficients; the middle is
        the factorization of the dehomogenization.
        """
        cs = self.coeffs
        k = self.degree
        a = 0
        while cs[a] == 0:
            a += 1
        b = 0
        while cs[k - b] == 0:
            b += 1
        out = []
        if b:
            out.append((BinaryForm((1, 0)), b))   # X^b
        if a:
            out.append((BinaryForm((0, 1)), a))   # Y^a
        mid = cs[a: k - b + 1]
        e = len(mid) - 1
        if e >= 1:
            from .polyfactor import factor_unipoly

            u = UniPoly(tuple(reversed(mid)))  # u(T) = h(T, 1)
            _, facs = factor_unipoly(u)
            for w, m in facs:
                out.append((BinaryForm(tuple(reversed(w.coeffs))), m))
        elif e == 0 and not out:
            raise DomainError("constant form has no factorization")
        return out


def form_of_point(p: PkPoint) -> BinaryForm:
    """The degree-k form whose coefficient vector is the point's coordinates."""
    return BinaryForm(p.coords)


def point_of_form(g: BinaryForm) -> PkPoint:
    return PkPoint(g.coeffs)


def linear_form_of_p1(p: PkPoint) -> BinaryForm:
    """Encode a P^1 point (a : b) as the linear form a X + b Y."""
    if p.k != 1:
        raise DomainError("expected a point of P^1")
    return BinaryForm(p.coords)


def p1_of_linear_form(g: BinaryForm) -> PkPoint:
    if g.degree != 1:
        raise DomainError("expected a linear form")
    return PkPoint(g.coeffs)


def zero_form_to_point_form(g: BinaryForm) -> BinaryForm:
    """Convert a form vanishing at points (z0 : t0) into the form that encodes
    those points as roots under the (a X + b Y) <-> (a : b) convention."""
    n = g.degree
    v = g.coeffs
    return BinaryForm(tuple((-1) ** i * v[n - i] for i in range(n + 1)))


def minpoly_of_factor(g: BinaryForm) -> UniPoly:
    """Monic minimal polynomial of the points encoded by an irreducible factor
    of degree >= 2 (all encoded points are then finite conjugates)."""
    e = g.degree
    cs = g.coeffs
    if cs[e] == 0:
        raise DomainError("factor encodes the point at infinity")
    return UniPoly(tuple(Fraction((-1) ** (e - i) * cs[i], cs[e])
                         for i in range(e + 1)))


class AlgebraicPoint:
    """A point of P^1 with coordinates in Q or in a number field."""

    __slots__ = ("field", "value", "infinity")

    def __init__(self, field: NumberField | None, value, infinity: bool = False):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "infinity", bool(infinity))
        if infinity:
            object.__setattr__(self, "value", None)
        elif field is None:
            object.__setattr__(self, "value", Fraction(value))
        else:
            if not isinstance(value, NFElem) or value.field != field:
                raise DomainError("value must be an element of the given field")
            object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("AlgebraicPoint is immutable")

    @staticmethod
    def at_infinity() -> "AlgebraicPoint":
        return AlgebraicPoint(None, None, infinity=True)

    @staticmethod
    def rational(q) -> "AlgebraicPoint":
        return AlgebraicPoint(None, Fraction(q))

    @staticmethod
    def of_element(e: NFElem) -> "AlgebraicPoint":
        if e.is_rational():
            return AlgebraicPoint.rational(e.as_rational())
        return AlgebraicPoint(e.field, e)

    @staticmethod
    def from_p1(p: PkPoint) -> "AlgebraicPoint":
        if p.coords[1] == 0:
            return AlgebraicPoint.at_infinity()
        return AlgebraicPoint.rational(Fraction(p.coords[0], p.coords[1]))

    def minimal_polynomial(self) -> UniPoly:
        if self.infinity:
            raise DomainError("the point at infinity has no affine minimal polynomial")
        return minimal_polynomial(self.value)

    def degree(self) -> int:
        return 1 if self.infinity else self.minimal_polynomial().degree

    def __eq__(self, other):
        if not isinstance(other, AlgebraicPoint):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity == other.infinity
        if (self.field is None) != (other.field is None):
            return False
        return self.value == other.value

    def __hash__(self):
        if self.infinity:
            return hash("oo")
        return hash(self.value)

    def to_text(self, var: str = "a") -> str:
        if self.infinity:
            return "oo"
        if self.field is None:
            return str(self.value)
        return self.value.to_text(var)

    def __repr__(self):
        return f"AlgebraicPoint({self.to_text()})"


class RationalMap1:
    """A self-map of P^1 given by a coprime pair of degree-d binary forms."""

    __slots__ = ("num", "den", "d", "res")

    def __init__(self, num_coeffs, den_coeffs):
        num = [Fraction(c) for c in num_coeffs]
        den = [Fraction(c) for c in den_coeffs]
        if len(num) != len(den):
            raise DomainError("numerator and denominator must have equal formal degree")
        d = len(num) - 1
        if d < 1:
            raise DomainError("map degree must be at least 1")
        dens = math.lcm(*(c.denominator for c in num + den))
        ints = [int(c * dens) for c in num + den]
        g = math.gcd(*ints)
        first = next((v for v in ints if v), 0)
        if first < 0:
            g = -g
        if g == 0:
            raise DegenerateMapError("zero map")
        ints = [v // g for v in ints]
        object.__setattr__(self, "num", tuple(ints[: d + 1]))
        object.__setattr__(self, "den", tuple(ints[d + 1:]))
        object.__setattr__(self, "d", d)
        res = sylvester_resultant(list(self.num), list(self.den), d, d)
        if res == 0:
            raise DegenerateMapError(
                "resultant vanishes: the pair does not define a morphism")
        object.__setattr__(self, "res", res)

    def __setattr__(self, *a):
        raise AttributeError("RationalMap1 is immutable")

    @staticmethod
    def from_affine_polynomial(poly: UniPoly) -> "RationalMap1":
        """Homogenize an affine polynomial x -> p(x) of degree d to [P : t^d]."""
        d = poly.degree
        if d < 1:
            raise DomainError("affine polynomial must have degree >= 1")
        num = [poly.coeff(d - j) for j in range(d + 1)]  # coeff of z^(d-j) t^j
        den = [Fraction(0)] * d + [Fraction(1)]
        return RationalMap1(num, den)

    def __eq__(self, other):
        return (isinstance(other, RationalMap1) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def key(self):
        return (self.num, self.den)

    # affine views: P(x, 1) and Q(x, 1)
    def affine_num(self) -> UniPoly:
        return UniPoly(tuple(reversed(self.num)))

    def affine_den(self) -> UniPoly:
        return UniPoly(tuple(reversed(self.den)))

    # flipped views: P(1, w) and Q(1, w)
    def flip_num(self) -> UniPoly:
        return UniPoly(self.num)

    def flip_den(self) -> UniPoly:
        return UniPoly(self.den)

    def is_polynomial(self) -> bool:
        """True when the denominator is a constant times t^d (infinity is
        totally invariant)."""
        return all(c == 0 for c in self.den[:-1])

    def eval_pair(self, z, t):
        """Exact evaluation of the lift at a coordinate pair (any ring)."""
        d = self.d
        num = den = None
        zp = [1]
        for _ in range(d):
            zp.append(zp[-1] * z)
        tp = [1]
        for _ in range(d):
            tp.append(tp[-1] * t)
        for j in range(d + 1):
            m = zp[d - j] * tp[j]
            nterm = self.num[j] * m
            dterm = self.den[j] * m
            num = nterm if num is None else num + nterm
            den = dterm if den is None else den + dterm
        return num, den

    def apply_point(self, p: PkPoint) -> PkPoint:
        if p.k != 1:
            raise DomainError("expected a point of P^1")
        n, d = self.eval_pair(p.coords[0], p.coords[1])
        return PkPoint((n, d))

    def apply_algebraic(self, pt: AlgebraicPoint) -> AlgebraicPoint:
        if pt.infinity:
            n, d = self.num[0], self.den[0]  # values of the lift at (1, 0)
            if d == 0:
                return AlgebraicPoint.at_infinity()
            return AlgebraicPoint.rational(Fraction(n, d))
        z = pt.value
        n, d = self.eval_pair(z, 1 if pt.field is None else pt.field.one())
        if pt.field is None:
            if d == 0:
                return AlgebraicPoint.at_infinity()
            return AlgebraicPoint.rational(Fraction(n, d))
        if d.is_zero():
            return AlgebraicPoint.at_infinity()
        return AlgebraicPoint.of_element(n / d)

    def wronskian(self) -> BinaryForm:
        """The critical form dP/dz * dQ/dt - dP/dt * dQ/dz, of degree 2d - 2."""
        d = self.d
        pz = [self.num[j] * (d - j) for j in range(d)]
        pt = [self.num[j + 1] * (j + 1) for j in range(d)]
        qz = [self.den[j] * (d - j) for j in range(d)]
        qt = [self.den[j + 1] * (j + 1) for j in range(d)]

        def mul(a, b):
            out = [0] * (2 * len(a) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            out[i + j] += ai * bj
            return out

        w = [x - y for x, y in zip(mul(pz, qt), mul(pt, qz))]
        if all(c == 0 for c in w):
            raise DegenerateMapError("identically vanishing Wronskian")
        return BinaryForm(w)

    def to_text(self) -> str:
        n = MPoly(2, {(self.d - j, j): Fraction(c)
                      for j, c in enumerate(self.num) if c})
        dd = MPoly(2, {(self.d - j, j): Fraction(c)
                       for j, c in enumerate(self.den) if c})
        return f"[{n.to_text(['z', 't'])}, {dd.to_text(['z', 't'])}]"

    def __repr__(self):
        return f"RationalMap1({self.to_text()})"


class MorphismPk:
    """A self-map of P^k as k+1 integer-coefficient forms of common degree d."""

    __slots__ = ("k", "d", "components", "_fast")

    def __init__(self, components, expected_degree=None):
        comps = list(components)
        k = len(comps) - 1
        if k < 1:
            raise DomainError("need at least two components")
        degs = set()
        for c in comps:
            if c.nvars != k + 1:
                raise DomainError("component variable count must be k+1")
            if not c.is_homogeneous():
                raise DomainError("components must be homogeneous")
            if c.terms:
                degs.add(c.total_degree())
        if len(degs) != 1:
            raise DomainError("components must share one degree")
        d = degs.pop()
        if expected_degree is not None and d != expected_degree:
            raise DomainError("unexpected algebraic degree")
        comps = joint_primitive(comps)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "components", tuple(comps))
        fast = tuple(tuple((c.numerator, e) for e, c in comp.sorted_terms())
                     for comp in comps)
        object.__setattr__(self, "_fast", fast)

    def __setattr__(self, *a):
        raise AttributeError("MorphismPk is immutable")

    def __eq__(self, other):
        return isinstance(other, MorphismPk) and self.components == other.components

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(tuple(sorted(c.terms.items())) for c in self.components)

    def eval_int(self, coords) -> list[int]:
        out = []
        for comp in self._fast:
            total = 0
            for c, e in comp:
                term = c
                for v, a in zip(coords, e):
                    if a:
                        term *= v ** a
                total += term
            out.append(total)
        return out

    def apply(self, p: PkPoint) -> PkPoint:
        if p.k != self.k:
            raise DomainError("dimension mismatch")
        vals = self.eval_int(p.coords)
        if all(v == 0 for v in vals):
            raise DomainError("all components vanish: morphism invariant violated")
        return PkPoint(vals)

    def to_text(self) -> str:
        return "[" + ", ".join(c.to_text() for c in self.components) + "]"

    def __repr__(self):
        return f"MorphismPk(k={self.k}, d={self.d}, {self.to_text()})"


def morphism_of_map(f: RationalMap1) -> MorphismPk:
    """View a P^1 map as a MorphismPk with k = 1 (shared height machinery)."""
    d = f.d
    num = MPoly(2, {(d - j, j): Fraction(c) for j, c in enumerate(f.num) if c})
    den = MPoly(2, {(d - j, j): Fraction(c) for j, c in enumerate(f.den) if c})
    return MorphismPk([num, den])
