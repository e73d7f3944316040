"""Number fields Q[x]/(m) and exact arithmetic in their power basis.

Irreducibility of the defining polynomial is verified at construction and
never trusted from the caller.  Elements are immutable coordinate vectors;
inversion is by the extended Euclidean algorithm against the minimal
polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, FieldMismatchError
from .linalg import first_dependency
from .polyfactor import factor_unipoly
from .unipoly import UniPoly, sylvester_resultant

_field_cache: dict[tuple, "NumberField"] = {}


class NumberField:
    """Q[x]/(minpoly) with minpoly monic irreducible over Q."""

    __slots__ = ("minpoly", "minpoly_int", "degree", "_galois", "_mulcache")

    def __init__(self, minpoly: UniPoly):
        if minpoly.degree < 1:
            raise DomainError("a number field needs a defining polynomial of degree >= 1")
        content, facs = factor_unipoly(minpoly)
        if len(facs) != 1 or facs[0][1] != 1:
            raise DomainError(
                f"defining polynomial {minpoly.to_text()} is not irreducible over Q")
        prim = facs[0][0]
        object.__setattr__(self, "minpoly_int", prim)
        object.__setattr__(self, "minpoly", prim.monic())
        object.__setattr__(self, "degree", prim.degree)
        object.__setattr__(self, "_galois", None)
        object.__setattr__(self, "_mulcache", None)

    def __setattr__(self, *a):
        raise AttributeError("NumberField is immutable")

    @staticmethod
    def get(minpoly: UniPoly) -> "NumberField":
        """Cached constructor; fields with the same primitive minpoly are shared."""
        key = tuple(minpoly.primitive_int_coeffs())
        field = _field_cache.get(key)
        if field is None:
            field = NumberField(minpoly)
            _field_cache[key] = field
        return field

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({self.minpoly_int.to_text()})"

    # reduction matrix rows: x^(deg), ..., x^(2 deg - 2) modulo minpoly
    def _reduction_rows(self):
        if self._mulcache is None:
            k = self.degree
            rows = []
            cur = [-c for c in self.minpoly.coeffs[:-1]]  # x^k mod m
            rows.append(tuple(cur))
            for _ in range(k - 2):
                nxt = [Fraction(0)] + cur[: k - 1]
                top = cur[k - 1]
                if top:
                    for i in range(k):
                        nxt[i] += top * rows[0][i]
                cur = nxt
                rows.append(tuple(cur))
            object.__setattr__(self, "_mulcache", tuple(rows))
        return self._mulcache

    def zero(self) -> "NFElem":
        return NFElem(self, (Fraction(0),) * self.degree)

    def one(self) -> "NFElem":
        return NFElem(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    def gen(self) -> "NFElem":
        if self.degree == 1:
            return NFElem(self, (Fraction(-self.minpoly.coeff(0)),))
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return NFElem(self, tuple(coords))

    def from_rational(self, q) -> "NFElem":
        coords = [Fraction(0)] * self.degree
        coords[0] = Fraction(q)
        return NFElem(self, tuple(coords))

    def element(self, coords) -> "NFElem":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise DomainError("coordinate vector length must equal the field degree")
        return NFElem(self, coords)

    def is_galois(self) -> bool:
        """True when the defining polynomial splits completely in the field."""
        if self._galois is None:
            n = len(roots_in_number_field(self.minpoly, self))
            object.__setattr__(self, "_galois", n == self.degree)
        return self._galois


class NFElem:
    """An element of a NumberField in the power basis 1, a, ..., a^(k-1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))
        if len(self.coords) != field.degree:
            raise DomainError("coordinate vector length must equal the field degree")

    def __setattr__(self, *a):
        raise AttributeError("NFElem is immutable")

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldMismatchError("elements belong to different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return (isinstance(other, NFElem) and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.minpoly.coeffs, self.coords))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return NFElem(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        k = self.field.degree
        prod = [Fraction(0)] * (2 * k - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        if k == 1:
            return NFElem(self.field, (prod[0],))
        rows = self.field._reduction_rows()
        out = prod[:k]
        for i in range(k, 2 * k - 1):
            c = prod[i]
            if c:
                row = rows[i - k]
                for j in range(k):
                    out[j] += c * row[j]
        return NFElem(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        # extended Euclid: u * elem + v * minpoly = 1 in Q[x]
        a = self.field.minpoly
        b = UniPoly(self.coords)
        r0, r1 = a, b
        t0, t1 = UniPoly.zero(), UniPoly.one()
        while r1.degree > 0:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        if r1.is_zero():
            raise DomainError("defining polynomial is not irreducible")  # unreachable
        inv = t1 * (1 / r1.coeff(0))
        coords = list(inv.coeffs) + [Fraction(0)] * (self.field.degree - len(inv.coeffs))
        return NFElem(self.field, tuple(coords[: self.field.degree]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def to_text(self, var: str = "a") -> str:
        return UniPoly(self.coords).to_text(var) if not self.is_zero() else "0"

    def __repr__(self):
        return f"NFElem({self.to_text()})"


def nf_arith(field: NumberField, a: NFElem, b: NFElem, op: str) -> NFElem:
    """Field arithmetic dispatcher: op in {add, sub, mul, div}."""
    if a.field != field or b.field != field:
        raise FieldMismatchError("operands do not belong to the given field")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        return a / b
    raise DomainError(f"unknown field operation {op!r}")


def minimal_polynomial(e: NFElem | Fraction | int) -> UniPoly:
    """Monic minimal polynomial over Q; its degree divides the field degree."""
    if isinstance(e, (int, Fraction)):
        return UniPoly((-Fraction(e), Fraction(1)))
    vectors = []
    power = e.field.one()
    for _ in range(e.field.degree + 1):
        vectors.append(list(power.coords))
        dep = first_dependency(vectors)
        if dep is not None:
            j, coeffs = dep
            return UniPoly(tuple(coeffs))
        power = power * e
    raise DomainError("no annihilating polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# Root finding inside a field (Trager-style norm computation)
# ---------------------------------------------------------------------------


def _kpoly_trim(cs):
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _kpoly_divmod(a, b, field):
    inv = b[-1].inverse()
    r = list(a)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    for i in range(len(r) - 1, len(b) - 2, -1):
        if not r[i].is_zero():
            f = r[i] * inv
            q[i - len(b) + 1] = f
            for j, c in enumerate(b):
                r[i - len(b) + 1 + j] = r[i - len(b) + 1 + j] - f * c
    return _kpoly_trim(q), _kpoly_trim(r)


def _kpoly_gcd(a, b, field):
    a, b = _kpoly_trim(list(a)), _kpoly_trim(list(b))
    while b:
        a, b = b, _kpoly_divmod(a, b, field)[1]
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def roots_in_number_field(poly: UniPoly, field: NumberField) -> list[NFElem]:
    """All roots of a Q-polynomial that lie in the given number field.

    Uses the norm trick: Res_y(m(y), poly(x - s*y)) is squarefree for some
    shift s, its rational factorization pulls back through a gcd over the
    field, and the degree-1 pullbacks are the roots.
    """
    if poly.degree < 1:
        return []
    m = field.minpoly
    alpha = field.gen()
    if field.degree == 1:
        # rational field: rational roots only
        from .polyfactor import rational_roots
        return [field.from_rational(r) for r in sorted(set(rational_roots(poly)))]

    poly = poly.monic() if poly.lead != 1 else poly
    for s in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5):
        norm = _norm_resultant(poly, m, s)
        if norm.is_zero() or not norm.is_squarefree():
            continue
        _, facs = factor_unipoly(norm)
        roots = []
        for h, _mult in facs:
            # gcd over the field of poly(x) and h(x + s*alpha)
            hk = _shift_into_field(h, s, alpha)
            pk = [field.from_rational(c) for c in poly.coeffs]
            g = _kpoly_gcd(pk, hk, field)
            if len(g) == 2:  # monic linear factor x + g0
                roots.append(-g[0])
        roots.sort(key=lambda r: r.coords)
        return roots
    raise DomainError("no squarefree norm found while searching roots in field")


def _norm_resultant(poly: UniPoly, m: UniPoly, s: int) -> UniPoly:
    """Res_y(m(y), poly(x - s y)) as a polynomial in x, by interpolation."""
    deg = poly.degree * m.degree
    xs = []
    ys = []
    c = 0
    while len(xs) < deg + 1:
        # poly(c - s y) as a polynomial in y
        shifted = poly.compose(UniPoly((Fraction(c), Fraction(-s))))
        val = sylvester_resultant(list(m.coeffs), list(shifted.coeffs),
                                  m.degree, poly.degree)
        xs.append(Fraction(c))
        ys.append(Fraction(val))
        c = -c + (0 if c > 0 else 1)  # 0, 1, -1, 2, -2, ...
    return _lagrange(xs, ys)


def _lagrange(xs, ys) -> UniPoly:
    total = UniPoly.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = UniPoly.one()
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UniPoly((-xj, 1))
                den *= xi - xj
        total = total + num * (yi / den)
    return total


def _shift_into_field(h: UniPoly, s: int, alpha: NFElem):
    """h(x + s*alpha) as a polynomial with NFElem coefficients."""
    field = alpha.field
    out = [field.zero()]
    shift = s * alpha
    for c in reversed(h.coeffs):
        # out = out * (x + shift) + c
        new = [field.zero()] * (len(out) + 1)
        for i, a in enumerate(out):
            new[i + 1] = new[i + 1] + a
            new[i] = new[i] + a * shift
        new[0] = new[0] + field.from_rational(c)
        out = _kpoly_trim(new)
        if not out:
            out = [field.zero()]
    return _kpoly_trim(out)


def same_field(a: NumberField, b: NumberField) -> bool:
    """Isomorphism test: equal degree and b's defining polynomial has a root in a."""
    if a.degree != b.degree:
        return False
    if a.minpoly == b.minpoly:
        return True
    return bool(roots_in_number_field(b.minpoly, a))
