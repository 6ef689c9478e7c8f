"""Dense univariate polynomials as plain lists, lowest degree first.

The helpers only rely on ``+ - * /`` and truthiness of the coefficients, so
they work unchanged for ``int``, ``Fraction``, finite field elements and
cyclotomic numbers.  The zero polynomial is the empty list.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1 if p else -1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    r = list(p)
    for i, c in enumerate(q):
        r[i] = r[i] + c
    return trim(r)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    if not c:
        return []
    return trim([a * c for a in p])


def mul(p, q):
    if not p or not q:
        return []
    r = [p[0] * 0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                r[i + j] = r[i + j] + a * b
    return trim(r)


def divmod_(p, q):
    """Euclidean division over a field; ``q`` must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = trim(p)
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return [], p
    lead_inv = _inv(q[-1])
    quo = [q[0] * 0] * (len(p) - dq)
    rem = list(p)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = rem[k + dq] * lead_inv
        quo[k] = c
        if c:
            for j in range(dq + 1):
                rem[k + j] = rem[k + j] - c * q[j]
    return trim(quo), trim(rem[:dq])


def exact_quo(p, q):
    quo, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quo


def monic(p):
    if not p:
        return []
    inv = _inv(p[-1])
    return [c * inv for c in p]


def gcd(p, q):
    """Monic gcd over a field."""
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def gcdex(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic."""
    one = _one_like(p, q)
    r0, r1 = trim(p), trim(q)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return [], s0, t0
    inv = _inv(r0[-1])
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def evaluate(p, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    if acc is None:
        return x * 0
    return acc


def derivative(p):
    return trim([c * i for i, c in enumerate(p)][1:])


def powmod(base, exp: int, mod):
    one = _one_like(base, mod)
    result = [one]
    base = divmod_(base, mod)[1]
    while exp:
        if exp & 1:
            result = divmod_(mul(result, base), mod)[1]
        exp >>= 1
        if exp:
            base = divmod_(mul(base, base), mod)[1]
    return result


def content_int(p: Sequence) -> int:
    """Gcd of the integer coefficients (0 for the zero polynomial)."""
    from math import gcd as igcd

    g = 0
    for c in p:
        g = igcd(g, int(c))
    return g


def to_fractions(p):
    return [Fraction(c) for c in p]


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def _one_like(*polys):
    for p in polys:
        for c in p:
            return c ** 0 if not isinstance(c, int) else 1
    return 1
