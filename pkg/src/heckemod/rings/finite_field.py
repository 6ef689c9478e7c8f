"""Finite fields GF(p^k) with deterministic construction.

``GF(p, k)`` is the quotient of ``GF(p)[x]`` by the lexicographically least
monic irreducible polynomial of degree ``k``, comparing the coefficient
tuples ``(c_0, ..., c_{k-1})`` with ``c_i`` in ``0..p-1``.  Elements are
encoded as integers ``sum c_i p^i``; the encoding gives the "least
representative" order used to pick canonical roots of unity.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from . import upoly


class FieldError(ValueError):
    pass


class NoRoot(FieldError):
    """The requested root of unity does not exist in the field."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in ``(Z/n)^*``."""
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
        if k > n:
            raise FieldError(f"{a} is not a unit mod {n}")
    return k


class FFElement:
    __slots__ = ("field", "val")

    def __init__(self, field: "GF", val: int):
        self.field = field
        self.val = val

    def _lift(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("elements of different fields")
            return other.val
        if isinstance(other, int):
            return self.field.encode_int(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._add(self.val, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._sub(self.val, o))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._sub(o, self.val))

    def __neg__(self):
        return FFElement(self.field, self.field._sub(0, self.val))

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._mul(self.val, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._mul(self.val, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field._mul(o, self.field._inv(self.val)))

    def __pow__(self, n: int):
        if n < 0:
            return FFElement(self.field, self.field._pow(self.field._inv(self.val), -n))
        return FFElement(self.field, self.field._pow(self.val, n))

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.val == o

    def __hash__(self):
        return hash((self.field.p, self.field.degree, self.val))

    def __repr__(self):
        return f"{self.field.name}({self.val})"

    def __int__(self):
        if self.field.degree != 1:
            raise FieldError("not a prime field element")
        return self.val

    def signed(self) -> int:
        """Prime field element as an integer in the symmetric range."""
        p = self.field.p
        v = int(self)
        return v - p if v > p // 2 else v

    def multiplicative_order(self) -> int:
        return self.field.element_order(self)


class GF:
    """The field with ``p**k`` elements."""

    TABLE_LIMIT = 1 << 16

    def __init__(self, p: int, k: int = 1, modulus: tuple | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        self.p = p
        self.degree = k
        self.order = p**k
        self.name = f"GF({p}^{k})" if k > 1 else f"GF({p})"
        if k == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = tuple(modulus) if modulus else lexleast_irreducible(p, k)
            if not _is_irreducible_prime_field(list(self.modulus), p):
                raise FieldError("defining polynomial is reducible")
        self._exp = self._log = None
        self._gen = None
        if k > 1 and self.order <= self.TABLE_LIMIT:
            self._build_tables()
        self.zero = FFElement(self, 0)
        self.one = FFElement(self, 1)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.degree, self.modulus) == (
            other.p,
            other.degree,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.degree, self.modulus))

    def __call__(self, x) -> FFElement:
        if isinstance(x, FFElement):
            if x.field == self:
                return FFElement(self, x.val)
            raise FieldError("element of another field")
        return FFElement(self, self.encode_int(x))

    def encode_int(self, n: int) -> int:
        return n % self.p

    def from_coeffs(self, coeffs) -> FFElement:
        val = 0
        for c in reversed(list(coeffs)):
            val = val * self.p + (int(c) % self.p)
        return FFElement(self, val)

    def to_coeffs(self, x: FFElement) -> list[int]:
        return _decode(x.val, self.p, self.degree)

    def element(self, code: int) -> FFElement:
        if not 0 <= code < self.order:
            raise FieldError("element code out of range")
        return FFElement(self, code)

    def elements(self):
        for code in range(self.order):
            yield FFElement(self, code)

    # -- raw arithmetic on integer codes --------------------------------------

    def _add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def _sub(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a - b) % self.p
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p - b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def _mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._polymul(a, b)

    def _polymul(self, a: int, b: int) -> int:
        p, k = self.p, self.degree
        pa, pb = _decode(a, p, k), _decode(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] += x * y
        mod = self.modulus
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        return _encode([c % p for c in prod[:k]], p)

    def _pow(self, a: int, n: int) -> int:
        if self.degree == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 0 if n else 1
        if self._log is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul(result, base)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.degree == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._pow(a, self.order - 2)

    def _build_tables(self):
        q = self.order
        for g in range(2, q):
            exp = [0] * (q - 1)
            x = 1
            seen_one = False
            for i in range(q - 1):
                exp[i] = x
                x = self._polymul(x, g)
                if x == 1 and i < q - 2:
                    seen_one = True
                    break
            if not seen_one:
                log = [0] * q
                for i, y in enumerate(exp):
                    log[y] = i
                self._exp, self._log = exp, log
                self._gen = g
                return
        raise FieldError("no primitive element found")

    # -- structure ------------------------------------------------------------

    def primitive_element(self) -> FFElement:
        """The primitive element with least integer code."""
        if self._gen is not None:
            return FFElement(self, self._gen)
        q1 = self.order - 1
        factors = prime_factors(q1)
        for code in range(1, self.order):
            if all(self._pow(code, q1 // r) != 1 for r in factors):
                self._gen = code
                return FFElement(self, code)
        raise FieldError("no primitive element")  # pragma: no cover

    def element_order(self, x: FFElement) -> int:
        if not x:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.order - 1
        for r in prime_factors(n):
            while n % r == 0 and self._pow(x.val, n // r) == 1:
                n //= r
        return n

    def roots_of_unity(self, n: int) -> list[FFElement]:
        """All primitive ``n``-th roots of unity, sorted by code."""
        if (self.order - 1) % n:
            raise NoRoot(f"{self.name} has no primitive {n}-th root of unity")
        g = self.primitive_element()
        w = g ** ((self.order - 1) // n)
        roots = [w**j for j in range(1, n + 1) if _gcd(j, n) == 1]
        return sorted(roots, key=lambda x: x.val)

    def canonical_root_of_unity(self, n: int) -> FFElement:
        """Least-coded primitive ``n``-th root of unity."""
        return self.roots_of_unity(n)[0]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _decode(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _encode(cs, p: int) -> int:
    val = 0
    for c in reversed(cs):
        val = val * p + c
    return val


# -- polynomials over the prime field (integer coefficient lists) ------------


def _pmod_trim(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b, p):
    a = _pmod_trim(a, p)
    b = _pmod_trim(b, p)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] * inv % p
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return _pmod_trim(q, p), _pmod_trim(a[:db], p)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _pmod_trim(out, p)


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def _pgcd(a, b, p):
    a, b = _pmod_trim(a, p), _pmod_trim(b, p)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _is_irreducible_prime_field(f, p) -> bool:
    """Rabin's test for a monic ``f`` over GF(p)."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, f, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), f, p), x, p)
        g = _pgcd(f, h, p)
        if len(g) > 1:
            return False
    return True


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _pmod_trim(out, p)


@lru_cache(maxsize=None)
def lexleast_irreducible(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible of degree ``k`` over GF(p)."""
    # a zero constant term means divisible by x, so those are never generated
    for tail in itertools.product(range(1, p), *[range(p)] * (k - 1)):
        f = list(tail) + [1]
        if _is_irreducible_prime_field(f, p):
            return tuple(f)
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    """Shared instance of GF(p^k)."""
    return GF(p, k)


# -- factorization over GF(q) -------------------------------------------------


def squarefree_factorization(f):
    """Return ``[(g, m)]`` with ``f = lc * prod g**m``, each ``g`` squarefree monic."""
    f = upoly.monic(f)
    F = f[0].field
    p = F.p
    out = []
    i = 1
    fp = upoly.derivative(f)
    if fp:
        c = upoly.gcd(f, fp)
        w = upoly.exact_quo(f, c)
        while len(w) > 1:
            y = upoly.gcd(w, c)
            z = upoly.exact_quo(w, y)
            if len(z) > 1:
                out.append((z, i))
            i += 1
            w = y
            c = upoly.exact_quo(c, y)
        if len(c) > 1:
            root = _pth_root(c, F)
            out.extend((g, m * p) for g, m in squarefree_factorization(root))
    else:
        root = _pth_root(f, F)
        out.extend((g, m * p) for g, m in squarefree_factorization(root))
    return out


def _pth_root(f, F: GF):
    p = F.p
    inv_frob = F.order // p
    return [f[i] ** inv_frob for i in range(0, len(f), p)]


def distinct_degree_factorization(f):
    F = f[0].field
    q = F.order
    x = [F.zero, F.one]
    out = []
    h = x
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = upoly.powmod(h, q, f)
        g = upoly.gcd(f, upoly.sub(h, x))
        if len(g) > 1:
            out.append((g, d))
            f = upoly.exact_quo(f, g)
            h = upoly.divmod_(h, f)[1]
    if len(f) > 1:
        out.append((upoly.monic(f), len(f) - 1))
    return out


def equal_degree_split(f, d: int, rng: random.Random):
    F = f[0].field
    q = F.order
    n = len(f) - 1
    if n == d:
        return [f]
    if q % 2 == 0:
        raise FieldError("characteristic 2 factorization is not supported")
    while True:
        a = upoly.trim([F.element(rng.randrange(q)) for _ in range(n)])
        if len(a) < 2:
            continue
        g = upoly.gcd(f, a)
        if 1 < len(g) < len(f):
            break
        b = upoly.powmod(a, (q**d - 1) // 2, f)
        g = upoly.gcd(f, upoly.sub(b, [F.one]))
        if 1 < len(g) < len(f):
            break
    h = upoly.exact_quo(f, g)
    return equal_degree_split(upoly.monic(g), d, rng) + equal_degree_split(upoly.monic(h), d, rng)


def factor(f, seed: int = 0):
    """Monic irreducible factors with multiplicities, sorted by (degree, codes)."""
    f = upoly.trim(f)
    if len(f) < 2:
        return []
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_factorization(f):
        for h, d in distinct_degree_factorization(g):
            for piece in equal_degree_split(h, d, rng):
                out.append((upoly.monic(piece), m))
    merged: dict[tuple, int] = {}
    for g, m in out:
        key = tuple(c.val for c in g)
        merged[key] = merged.get(key, 0) + m
    F = f[0].field
    result = [([F.element(c) for c in key], m) for key, m in merged.items()]
    result.sort(key=lambda gm: (len(gm[0]), [c.val for c in reversed(gm[0])]))
    return result
