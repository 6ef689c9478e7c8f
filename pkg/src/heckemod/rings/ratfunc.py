"""The field Q(v) of rational functions, used as the generic field K."""

from __future__ import annotations

from fractions import Fraction

from . import upoly
from .laurent import LaurentPoly


class RatFunc:
    """``num/den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        num = upoly.trim([Fraction(c) for c in num])
        if den is None:
            den = [Fraction(1)]
        else:
            den = upoly.trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        if not _normalized and len(den) > 1:
            g = upoly.gcd(num, den)
            if len(g) > 1:
                num = upoly.exact_quo(num, g)
                den = upoly.exact_quo(den, g)
        lc = den[-1]
        if lc != 1:
            num = [c / lc for c in num]
            den = [c / lc for c in den]
        self.num, self.den = tuple(num), tuple(den)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        if not p:
            return cls(())
        if p.low >= 0:
            return cls(p.to_poly(), _normalized=True)
        return cls(list(p.coeffs), [0] * (-p.low) + [1], _normalized=True)

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc((other,))
        if isinstance(other, LaurentPoly):
            return RatFunc.from_laurent(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(upoly.add(list(self.num), list(o.num)), self.den)
        num = upoly.add(upoly.mul(list(self.num), list(o.den)), upoly.mul(list(o.num), list(self.den)))
        return RatFunc(num, upoly.mul(list(self.den), list(o.den)))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc([-c for c in self.num], self.den, _normalized=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc(())
        if len(o.den) == 1 and len(self.den) == 1:
            return RatFunc(upoly.mul(list(self.num), list(o.num)), _normalized=True)
        # cross-cancel before multiplying
        g1 = upoly.gcd(list(self.num), list(o.den))
        g2 = upoly.gcd(list(o.num), list(self.den))
        n1, d2 = list(self.num), list(o.den)
        n2, d1 = list(o.num), list(self.den)
        if len(g1) > 1:
            n1, d2 = upoly.exact_quo(n1, g1), upoly.exact_quo(d2, g1)
        if len(g2) > 1:
            n2, d1 = upoly.exact_quo(n2, g2), upoly.exact_quo(d1, g2)
        return RatFunc(upoly.mul(n1, n2), upoly.mul(d1, d2), _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, _normalized=True)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(
            _ppow(list(self.num), k) if self.num or k == 0 else (),
            _ppow(list(self.den), k),
            _normalized=True,
        )

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if len(self.den) == 1:
            return f"RatFunc({LaurentPoly(self.num)})"
        return f"RatFunc(({LaurentPoly(self.num)})/({LaurentPoly(self.den)}))"

    def complexity(self) -> tuple:
        return (len(self.num) + len(self.den), max(_height(c) for c in self.num + self.den))

    def is_laurent(self) -> bool:
        """True if the denominator is a power of ``v``."""
        return all(not c for c in self.den[:-1])

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        return LaurentPoly(self.num, -(len(self.den) - 1))


def _ppow(p, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = upoly.mul(out, p)
    return out


def _height(c: Fraction) -> int:
    return max(abs(c.numerator), c.denominator).bit_length()
