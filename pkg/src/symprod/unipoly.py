"""Univariate polynomials over Q with exact arithmetic.

Coefficients are `fractions.Fraction` throughout; a polynomial is an immutable
coefficient tuple indexed by degree.  The zero polynomial has degree -1.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

Rat = Fraction


def _as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class UniPoly:
    """A univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def one() -> "UniPoly":
        return UniPoly((1,))

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly((0, 1))

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly((c,))

    @staticmethod
    def monomial(c, n: int) -> "UniPoly":
        return UniPoly((0,) * n + (c,))

    @staticmethod
    def from_int_list(cs) -> "UniPoly":
        return UniPoly(tuple(Fraction(c) for c in cs))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _as_rat(other)
            return UniPoly(tuple(c * a for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = UniPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly"):
        """Exact polynomial division with remainder over Q."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        dlead = other.lead
        dn = other.degree
        for i in range(len(rem) - 1, dn - 1, -1):
            if rem[i]:
                f = rem[i] / dlead
                q[i - dn] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dn + j] -= f * b
        return UniPoly(tuple(q)), UniPoly(tuple(rem))

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    # -- calculus & evaluation ---------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x):
        """Horner evaluation; works for Fraction, int, float, mpf, NFElem, UniPoly."""
        if not self.coeffs:
            return 0 * x if not isinstance(x, (int, float)) else 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(c)
        return acc

    def shift_scale(self, a, b) -> "UniPoly":
        """p(a*x + b) computed exactly."""
        return self.compose(UniPoly((b, a)))

    # -- normalization ------------------------------------------------------

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise DomainError("cannot make the zero polynomial monic")
        l = self.lead
        return UniPoly(tuple(c / l for c in self.coeffs))

    def content_primitive(self):
        """Return (content, primitive) with primitive an integer-coefficient
        polynomial whose coefficients are coprime and whose lead is positive."""
        if self.is_zero():
            return Fraction(0), UniPoly.zero()
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        content = Fraction(g, den)
        return content, UniPoly.from_int_list([c // g for c in ints])

    def primitive_int_coeffs(self):
        """Integer coefficient list of the primitive positive-lead associate."""
        _, prim = self.content_primitive()
        return [int(c) for c in prim.coeffs]

    def reverse(self) -> "UniPoly":
        """x^deg * p(1/x); trailing zero coefficients are dropped."""
        return UniPoly(tuple(reversed(self.coeffs)))

    # -- gcd / resultant ----------------------------------------------------

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Primitive gcd over Q, computed by a primitive PRS over Z."""
        a, b = self, other
        if a.is_zero():
            return b.monic() if b else UniPoly.zero()
        if b.is_zero():
            return a.monic()
        _, a = a.content_primitive()
        _, b = b.content_primitive()
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero():
            # pseudo-remainder keeps everything integral
            k = a.degree - b.degree + 1
            r = (a * (b.lead ** k)) % b
            if r.is_zero():
                b_ = UniPoly.zero()
            else:
                _, b_ = r.content_primitive()
            a, b = b, b_
        return a.monic()

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return UniPoly.one()
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def is_squarefree(self) -> bool:
        return self.degree <= 0 or self.gcd(self.derivative()).degree == 0

    def resultant(self, other: "UniPoly"):
        """Res(self, other) with the true (degree-based) Sylvester convention."""
        return sylvester_resultant(list(self.coeffs), list(other.coeffs))

    # -- printing -----------------------------------------------------------

    def to_text(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = abs(c)
                xp = var if i == 1 else f"{var}^{i}"
                term = xp if mag == 1 else f"{mag}*{xp}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.to_text()})"


def sylvester_matrix(a, b, m=None, n=None):
    """Sylvester matrix of coefficient sequences a (degree m) and b (degree n).

    Coefficient lists are low-to-high.  Explicit m, n allow the formal-degree
    convention needed for binary forms whose leading coefficients vanish.
    """
    if m is None:
        m = len(a) - 1
    if n is None:
        n = len(b) - 1
    a = list(a) + [0] * (m + 1 - len(a))
    b = list(b) + [0] * (n + 1 - len(b))
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(a):
            row[i + (m - j)] = c  # descending-degree layout
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(b):
            row[i + (n - j)] = c
        rows.append(row)
    return rows


def sylvester_resultant(a, b, m=None, n=None):
    """Resultant via fraction-free (Bareiss) elimination of the Sylvester matrix."""
    from .linalg import det_bareiss

    if m is None:
        m = len(a) - 1
    if n is None:
        n = len(b) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    rows = sylvester_matrix(a, b, m, n)
    den = 1
    for r in rows:
        den = math.lcm(den, *(Fraction(c).denominator for c in r))
    int_rows = [[int(Fraction(c) * den) for c in r] for r in rows]
    d = det_bareiss(int_rows)
    return Fraction(d, den ** (m + n))
