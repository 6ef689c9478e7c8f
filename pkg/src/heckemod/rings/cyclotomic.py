"""Arithmetic in the cyclotomic field Q(zeta_n)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import upoly
from .laurent import LaurentPoly, cyclotomic_polynomial


class ZeroValue(ArithmeticError):
    """A norm or inverse was requested for zero."""


class CycloNumber:
    """``rep(zeta_n)`` with ``rep`` reduced modulo the ``n``-th cyclotomic polynomial."""

    __slots__ = ("field", "rep")

    def __init__(self, field: "CyclotomicField", rep):
        self.field = field
        self.rep = tuple(upoly.trim(rep))

    def _lift(self, other):
        if isinstance(other, CycloNumber):
            if other.field.n != self.field.n:
                raise ValueError("mixing different cyclotomic fields")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) if other else ()
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.field, upoly.add(list(self.rep), list(o)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.field, [-c for c in self.rep])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.field, upoly.sub(list(self.rep), list(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.field, self.field.reduce(upoly.mul(list(self.rep), list(o))))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if not self.rep:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        g, s, _ = upoly.gcdex(list(self.rep), self.field.phi_q)
        if len(g) != 1:
            raise ZeroDivisionError("non-invertible cyclotomic element")  # pragma: no cover
        return CycloNumber(self.field, self.field.reduce(s))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.field, [c / other for c in self.rep])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * CycloNumber(self.field, o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.rep == tuple(upoly.trim(o))

    def __hash__(self):
        return hash((self.field.n, self.rep))

    def __repr__(self):
        return f"CycloNumber({self})"

    def __str__(self):
        if not self.rep:
            return "0"
        return LaurentPoly(self.rep).pretty(f"z{self.field.n}")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.rep)

    def norm(self) -> Fraction:
        return self.field.norm(self)


class CyclotomicField:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.phi_poly = cyclotomic_polynomial(n)
        self.phi_q = [Fraction(c) for c in self.phi_poly.to_poly()]
        self.dim = len(self.phi_q) - 1
        self.zero = CycloNumber(self, ())
        self.one = CycloNumber(self, (Fraction(1),))
        self._powers = [self._reduce_monomial(j) for j in range(n)]

    def __repr__(self):
        return f"Q(zeta_{self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyclo", self.n))

    def __call__(self, x) -> CycloNumber:
        if isinstance(x, CycloNumber):
            return x
        return CycloNumber(self, (Fraction(x),))

    def _reduce_monomial(self, j: int):
        mono = [Fraction(0)] * j + [Fraction(1)]
        return tuple(upoly.divmod_(mono, self.phi_q)[1])

    def reduce(self, p):
        p = upoly.trim(p)
        if len(p) <= self.dim:
            return p
        return upoly.divmod_(p, self.phi_q)[1]

    def zeta(self, k: int = 1) -> CycloNumber:
        return CycloNumber(self, self._powers[k % self.n])

    def from_poly(self, coeffs) -> CycloNumber:
        return CycloNumber(self, self.reduce([Fraction(c) for c in coeffs]))

    def evaluate(self, p: LaurentPoly, power: int = 1) -> CycloNumber:
        """Image of ``p`` under ``v -> zeta_n**power``."""
        acc = [Fraction(0)] * self.dim
        for e, c in p.terms().items():
            for i, a in enumerate(self._powers[(e * power) % self.n]):
                acc[i] += c * a
        return CycloNumber(self, acc)

    def multiplication_matrix(self, x: CycloNumber) -> list[list[Fraction]]:
        """Matrix of ``y -> x*y`` on the power basis (columns = images)."""
        cols = []
        for j in range(self.dim):
            img = x * self.zeta(j)
            col = list(img.rep) + [Fraction(0)] * (self.dim - len(img.rep))
            cols.append(col)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def norm(self, x: CycloNumber) -> Fraction:
        from .linalg import QQ, det

        return det(self.multiplication_matrix(x), QQ)


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def cyclotomic_norm(g, n: int) -> int:
    """Norm from Q(zeta_n) to Q of ``g(zeta_n)`` for an integer polynomial ``g``.

    Equals the resultant of the ``n``-th cyclotomic polynomial and ``g``.
    """
    if not isinstance(g, LaurentPoly):
        g = LaurentPoly(g)
    K = cyclotomic_field(n)
    x = K.evaluate(g)
    if not x:
        raise ZeroValue(f"polynomial vanishes at zeta_{n}")
    N = K.norm(x)
    if N.denominator != 1:
        raise ArithmeticError("norm of an algebraic integer must be an integer")  # pragma: no cover
    return int(N)
