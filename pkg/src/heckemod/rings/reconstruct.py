"""Chinese remaindering, rational reconstruction and Laurent interpolation."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .laurent import LaurentPoly


class NoReconstruction(ArithmeticError):
    """The current modulus is too small to recover the value."""


class InconsistentSamples(ArithmeticError):
    """No Laurent polynomial in the requested window fits the samples."""


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Combine congruences; returns ``(x, M)`` with ``0 <= x < M``."""
    if len(residues) != len(moduli):
        raise ValueError("need one residue per modulus")
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        if gcd(M, m) != 1:
            raise ValueError("moduli must be pairwise coprime")
        # x + M*t = r (mod m)
        t = ((r - x) * pow(M, -1, m)) % m
        x += M * t
        M *= m
    return x % M, M


def symmetric(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def rational_reconstruct(a: int, m: int, bound: int | None = None) -> Fraction:
    """Find ``r/s`` with ``r = a*s (mod m)`` and ``|r|, s <= bound``.

    The default bound ``isqrt((m - 1) // 2)`` makes the answer unique when it
    exists.
    """
    if bound is None:
        bound = isqrt((m - 1) // 2)
    a %= m
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        raise NoReconstruction(f"no rational with height <= {bound} matches {a} mod {m}")
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def crt_rational_reconstruct(residues: Sequence[int], moduli: Sequence[int], rational: bool = True):
    """Combine residues and recover a symmetric-range integer or a small rational.

    Returns an ``int`` whenever the recovered value is integral.
    """
    x, M = crt(residues, moduli)
    if not rational:
        return symmetric(x, M)
    q = rational_reconstruct(x, M)
    return int(q) if q.denominator == 1 else q


def interpolate_laurent(samples, window: tuple[int, int], F=None) -> LaurentPoly:
    """Unique Laurent polynomial with exponents in ``window`` through ``samples``.

    ``samples`` is a list of ``(point, value)``; points must be distinct and
    nonzero.  With more samples than unknowns the fit is checked, and a
    mismatch raises :class:`InconsistentSamples`.
    """
    from .linalg import QQ, rref

    lo, hi = window
    width = hi - lo + 1
    if width <= 0:
        raise ValueError("empty exponent window")
    if len(samples) < width:
        raise ValueError(f"need at least {width} samples, got {len(samples)}")
    if F is None:
        F = QQ
    points = [F(x) if isinstance(x, (int, Fraction)) else x for x, _ in samples]
    if len(set(points)) != len(points):
        raise ValueError("sample points must be distinct")
    rows = []
    for x, (_, y) in zip(points, samples):
        base = x**lo
        row = []
        p = base
        for _ in range(width):
            row.append(p)
            p = p * x
        row.append(F(y) if isinstance(y, (int, Fraction)) else y)
        rows.append(row)
    R, pivots = rref(rows, F)
    if width in pivots:
        raise InconsistentSamples(f"samples do not fit exponent window [{lo}, {hi}]")
    if len(pivots) < width:
        raise ValueError("sample points do not determine the polynomial")  # pragma: no cover
    coeffs = [R[i][width] for i in range(width)]
    return LaurentPoly([_plain(c) for c in coeffs], lo)


def _plain(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c
