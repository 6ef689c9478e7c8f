"""Finite Weyl groups: Cartan and Coxeter data, degrees, element enumeration."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .rings.laurent import LaurentPoly

MAX_ENUMERABLE = 1152


class TooLarge(ValueError):
    """The group is too big to enumerate element by element."""


class MissingAInvariant(ValueError):
    pass


@dataclass(frozen=True)
class WeylType:
    series: str
    rank: int
    cartan: tuple
    degrees: tuple
    bad_primes: frozenset

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def generators(self) -> list[int]:
        """Generator labels ``1..rank``."""
        return list(range(1, self.rank + 1))

    @property
    def order(self) -> int:
        return prod(self.degrees)

    def coxeter_entry(self, s: int, t: int) -> int:
        """Order of ``s*t`` for 1-based generator labels."""
        if s == t:
            return 1
        prodst = self.cartan[s - 1][t - 1] * self.cartan[t - 1][s - 1]
        return {0: 2, 1: 3, 2: 4, 3: 6}[prodst]

    def coxeter_matrix(self) -> list[list[int]]:
        return [[self.coxeter_entry(s, t) for t in self.generators] for s in self.generators]

    def is_good(self, ell: int) -> bool:
        return ell not in self.bad_primes

    def __str__(self):
        return self.name


def _chain(n: int) -> list[list[int]]:
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
        if i + 1 < n:
            A[i][i + 1] = A[i + 1][i] = -1
    return A


def _from_edges(n: int, edges) -> list[list[int]]:
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    for i, j in edges:
        A[i - 1][j - 1] = A[j - 1][i - 1] = -1
    return A


def _cartan(series: str, n: int) -> list[list[int]]:
    if series == "A":
        return _chain(n)
    if series in ("B", "C"):
        A = _chain(n)
        if n >= 2:
            # the last simple root is short in B and long in C
            if series == "B":
                A[n - 2][n - 1] = -2
            else:
                A[n - 1][n - 2] = -2
        return A
    if series == "D":
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        return _from_edges(n, edges)
    if series == "G":
        return [[2, -1], [-3, 2]]
    if series == "F":
        A = _chain(4)
        A[1][2] = -2
        return A
    if series == "E":
        edges = [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
        return _from_edges(n, edges)
    raise ValueError(f"unknown series {series}")


_EXCEPTIONAL_DEGREES = {
    ("G", 2): (2, 6),
    ("F", 4): (2, 6, 8, 12),
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
}


def _degrees(series: str, n: int) -> tuple:
    if series == "A":
        return tuple(range(2, n + 2))
    if series in ("B", "C"):
        return tuple(range(2, 2 * n + 1, 2))
    if series == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    return _EXCEPTIONAL_DEGREES[(series, n)]


def _bad_primes(series: str, n: int) -> frozenset:
    if series == "A":
        return frozenset()
    if series in ("B", "C", "D"):
        return frozenset({2})
    if series == "E" and n == 8:
        return frozenset({2, 3, 5})
    return frozenset({2, 3})


@lru_cache(maxsize=None)
def weyl_type(name: str) -> WeylType:
    """Parse names such as ``"G2"``, ``"E6"``, ``"B3"`` or ``"A_4"``."""
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", name)
    if not m:
        raise ValueError(f"cannot parse Weyl type {name!r}")
    series, n = m.group(1).upper(), int(m.group(2))
    valid = (
        (series == "A" and n >= 1)
        or (series in ("B", "C") and n >= 2)
        or (series == "D" and n >= 4)
        or (series, n) in _EXCEPTIONAL_DEGREES
    )
    if not valid:
        raise ValueError(f"no Weyl group of type {series}{n}")
    cartan = tuple(tuple(row) for row in _cartan(series, n))
    return WeylType(series, n, cartan, _degrees(series, n), _bad_primes(series, n))


def poincare_polynomial(t: WeylType) -> LaurentPoly:
    """Poincare polynomial as a polynomial in ``u``: product of ``(u^d - 1)/(u - 1)``."""
    out = LaurentPoly.const(1)
    for d in t.degrees:
        out = out * LaurentPoly([1] * d)
    return out


@dataclass
class GroupElements:
    weyl: WeylType
    words: list  # tuples of 1-based generator labels
    lengths: list = field(default_factory=list)

    def __len__(self):
        return len(self.words)

    def length_polynomial(self) -> LaurentPoly:
        counts: dict[int, int] = {}
        for l in self.lengths:
            counts[l] = counts.get(l, 0) + 1
        return LaurentPoly.from_terms(counts)


def _reflection(t: WeylType, s: int):
    """Matrix of ``s`` on simple-root coordinates: ``s(a_j) = a_j - A[s][j] a_s``."""
    n = t.rank
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(n):
        M[s - 1][j] -= t.cartan[s - 1][j]
    return tuple(tuple(r) for r in M)


def _mul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def enumerate_elements(t: WeylType) -> GroupElements:
    """All elements as lexicographically least reduced words, ordered by length then word."""
    if t.order > MAX_ENUMERABLE:
        raise TooLarge(f"{t.name} has {t.order} elements; enumeration is limited to {MAX_ENUMERABLE}")
    refl = {s: _reflection(t, s) for s in t.generators}
    ident = tuple(tuple(int(i == j) for j in range(t.rank)) for i in range(t.rank))
    seen = {ident}
    words: list[tuple] = [()]
    lengths = [0]
    level = [((), ident)]
    while level:
        nxt = []
        for word, mat in level:
            for s in t.generators:
                # l(ws) > l(w) iff w(a_s) is a positive root: column s of w
                col = [mat[i][s - 1] for i in range(t.rank)]
                if all(c >= 0 for c in col):
                    new = _mul(mat, refl[s])
                    if new not in seen:
                        seen.add(new)
                        nxt.append((word + (s,), new))
        level = nxt
        for word, _ in level:
            words.append(word)
            lengths.append(len(word))
    if len(words) != t.order:
        raise AssertionError("enumeration did not reach the group order")  # pragma: no cover
    return GroupElements(t, words, lengths)


def is_e_regular(t: WeylType, e: int, ell: int) -> bool:
    """``ell`` is good for ``t`` and ``e*ell`` divides none of the degrees."""
    if ell in t.bad_primes:
        return False
    return all(d % (e * ell) for d in t.degrees)


def e_regular_reason(t: WeylType, e: int, ell: int) -> str | None:
    """Human readable reason why ``(e, ell)`` is not e-regular, or ``None``."""
    if ell in t.bad_primes:
        return f"ell={ell} is a bad prime for {t.name}"
    hit = [d for d in t.degrees if d % (e * ell) == 0]
    if hit:
        return f"e*ell={e * ell} divides the degree {hit[0]} of {t.name}"
    return None


@dataclass(frozen=True)
class IrrLabel:
    name: str
    dim: int
    a: int | None = None
    f: int | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.a is not None and self.a < 0:
            raise ValueError("a-invariant must be nonnegative")
        if self.f is not None and self.f < 1:
            raise ValueError("f-invariant must be positive")


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal-label"
    INCOMPARABLE = "incomparable"


def a_order_compare(lam: IrrLabel, mu: IrrLabel) -> Order:
    """Partial order by decreasing a-value: ``lam < mu`` iff ``a(lam) > a(mu)``."""
    if lam.name == mu.name:
        return Order.EQUAL
    if lam.a is None or mu.a is None:
        raise MissingAInvariant(f"a-invariant missing for {lam.name if lam.a is None else mu.name}")
    if lam.a > mu.a:
        return Order.LESS
    if lam.a < mu.a:
        return Order.GREATER
    return Order.INCOMPARABLE
