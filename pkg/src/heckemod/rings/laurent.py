"""Laurent polynomials in one variable ``v`` with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Mapping

from . import upoly


class LaurentPoly:
    """An immutable element of ``R[v, v^-1]``.

    Stored as a lowest exponent plus a dense coefficient tuple whose first and
    last entries are nonzero.  Coefficients are usually ``int`` or
    ``Fraction`` but any exact ring element works.
    """

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable = (), low: int = 0):
        cs = list(coeffs)
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        end = len(cs)
        while end > start and not cs[end - 1]:
            end -= 1
        cs = cs[start:end]
        self.coeffs = tuple(_tidy(c) for c in cs)
        self.low = low + start if cs else 0
        self._hash = None

    # -- construction --------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[int, object]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        zero = 0
        return cls([terms.get(e, zero) for e in range(lo, hi + 1)], lo)

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls([c])

    @classmethod
    def monomial(cls, exp: int, c=1) -> "LaurentPoly":
        return cls([c], exp)

    @classmethod
    def gen(cls) -> "LaurentPoly":
        return cls([1], 1)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def high(self) -> int:
        """Largest exponent (meaningless for zero)."""
        return self.low + len(self.coeffs) - 1

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation of zero")
        return self.low

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return self.high

    def terms(self) -> dict[int, object]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def coeff(self, exp: int):
        i = exp - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def leading_coeff(self):
        return self.coeffs[-1] if self.coeffs else 0

    def trailing_coeff(self):
        return self.coeffs[0] if self.coeffs else 0

    def is_integral(self) -> bool:
        return all(_is_int(c) for c in self.coeffs)

    def is_polynomial(self) -> bool:
        return not self.coeffs or self.low >= 0

    def content(self):
        """Gcd of the coefficients for integral polys, else a rational content."""
        if not self.coeffs:
            return 0
        if self.is_integral():
            g = 0
            for c in self.coeffs:
                g = igcd(g, int(c))
            return g
        num = 0
        den = 0
        for c in self.coeffs:
            f = Fraction(c)
            num = igcd(num, f.numerator)
            den = den * f.denominator // igcd(den, f.denominator) if den else f.denominator
        return Fraction(num, den)

    def to_poly(self) -> list:
        """Dense coefficient list; requires nonnegative exponents."""
        if not self.coeffs:
            return []
        if self.low < 0:
            raise ValueError("negative exponent in polynomial conversion")
        return [0] * self.low + list(self.coeffs)

    @classmethod
    def from_poly(cls, p, shift: int = 0) -> "LaurentPoly":
        return cls(p, shift)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            return LaurentPoly([a * c for a in self.coeffs], self.low + other.low)
        return LaurentPoly(upoly.mul(list(self.coeffs), list(other.coeffs)), self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                return LaurentPoly([self.coeffs[0] ** (-n)], self.low * n)
            raise ValueError("negative power of a non-unit")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs, self.low + k)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly([a * c for a in self.coeffs], self.low)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in ``Q[v, v^-1]``; raises if there is a remainder."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.coeffs:
            return LaurentPoly()
        quo = upoly.exact_quo(upoly.to_fractions(self.coeffs), upoly.to_fractions(other.coeffs))
        return LaurentPoly(quo, self.low - other.low)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return ``p(v**k)``."""
        return LaurentPoly.from_terms({e * k: c for e, c in self.terms().items()})

    def negate_variable(self) -> "LaurentPoly":
        """Return ``p(-v)``."""
        return LaurentPoly.from_terms(
            {e: (-c if e % 2 else c) for e, c in self.terms().items()}
        )

    def evaluate(self, x):
        """Evaluate at a ring element; negative powers need ``1/x``."""
        if not self.coeffs:
            return x * 0
        acc = upoly.evaluate(list(self.coeffs), x)
        if self.low > 0:
            acc = acc * x**self.low
        elif self.low < 0:
            acc = acc * (1 / x) ** (-self.low)
        return acc

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly([fn(c) for c in self.coeffs], self.low)

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return self.pretty("v")

    def pretty(self, var: str = "v") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.high, self.low - 1, -1):
            c = self.coeff(e)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _is_int(c) -> bool:
    return isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)


def _tidy(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


V = LaurentPoly.gen()


def cyclotomic_polynomial(d: int) -> LaurentPoly:
    """The ``d``-th cyclotomic polynomial, as a polynomial in one variable."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    return LaurentPoly(_cyclotomic_coeffs(d))


_CYCLO_CACHE: dict[int, tuple] = {}


def _cyclotomic_coeffs(d: int) -> tuple:
    if d in _CYCLO_CACHE:
        return _CYCLO_CACHE[d]
    # x^d - 1 = prod over divisors
    num = [-1] + [0] * (d - 1) + [1]
    for k in range(1, d):
        if d % k == 0:
            num = upoly.exact_quo(num, list(_cyclotomic_coeffs(k)))
    out = tuple(int(c) for c in num)
    _CYCLO_CACHE[d] = out
    return out


def substitute_square(p: LaurentPoly) -> LaurentPoly:
    """Return ``p(v**2)`` for a polynomial ``p`` in ``u``."""
    return p.substitute_power(2)


def poly_valuation(p: LaurentPoly, f: LaurentPoly) -> int:
    """Largest ``i`` with ``f**i`` dividing ``p`` in ``Q[x, x^-1]``."""
    if not p:
        raise ValueError("valuation of zero")
    if len(f.coeffs) < 2:
        raise ValueError("valuation with respect to a unit")
    i = 0
    while True:
        try:
            p = p.exact_div(f)
        except ArithmeticError:
            return i
        i += 1
