"""Ranks of Gram matrices at roots of unity and over finite fields, and the
finite set of primes where the rank drops."""

from __future__ import annotations

from dataclasses import dataclass, field

from .gram import GramMatrix
from .rings import linalg
from .rings.cyclotomic import cyclotomic_field, cyclotomic_norm
from .rings.finite_field import NoRoot, field as finite_field, multiplicative_order, prime_factors
from .rings.laurent import LaurentPoly
from .weyl import WeylType, e_regular_reason, is_e_regular


class NotERegular(ValueError):
    pass


def _matrix(q):
    return q.Q if isinstance(q, GramMatrix) else q


def _label(q, label):
    if label:
        return label
    return q.label if isinstance(q, GramMatrix) else ""


@dataclass
class SpecializedRank:
    label: str
    e: int
    target: str
    rank: int
    dim: int
    pivot_rows: list = field(default_factory=list)
    pivot_cols: list = field(default_factory=list)
    matrix: list = field(default_factory=list, repr=False)

    @property
    def corank(self) -> int:
        return self.dim - self.rank

    @property
    def in_canonical_set(self) -> bool:
        return self.rank > 0


def _pivots(M, F):
    _, cols = linalg.rref(M, F)
    _, rows = linalg.rref(linalg.transpose(M), F)
    return rows, cols


def rank_at_zeta(q, e: int, label: str = "") -> SpecializedRank:
    """Rank after ``v -> exp(2 pi i / 2e)``, computed exactly in Q(zeta_2e)."""
    if e < 2:
        raise ValueError("e must be at least 2")
    Q = _matrix(q)
    K = cyclotomic_field(2 * e)
    M = [[K.evaluate(x) for x in row] for row in Q]
    rows, cols = _pivots(M, K)
    return SpecializedRank(_label(q, label), e, f"Q(zeta_{2 * e})", len(cols), len(Q), rows, cols, M)


def modular_root(e: int, ell: int, choice: int = 0):
    """``(field, theta)`` with ``theta`` a primitive ``2e``-th root of unity in GF(ell^k).

    ``choice = 0`` is the canonical root (least code); other values pick
    further primitive roots in increasing code order, for conjugacy checks.
    """
    if ell == 2 or (2 * e) % ell == 0:
        raise NoRoot(f"no primitive {2 * e}-th root of unity in characteristic {ell}")
    k = multiplicative_order(ell % (2 * e), 2 * e) if 2 * e > 1 else 1
    F = finite_field(ell, k)
    if choice == 0:
        return F, F.canonical_root_of_unity(2 * e)
    roots = [z for z in F.roots_of_unity(2 * e) if z.multiplicative_order() == 2 * e]
    return F, roots[choice % len(roots)]


def _eval_ff(p: LaurentPoly, theta, F):
    acc = F.zero
    for e, c in p.terms().items():
        acc = acc + F(int(c)) * theta**e
    return acc


def rank_at_modular(q, e: int, ell: int, weyl: WeylType | None = None, label: str = "", root_choice: int = 0) -> SpecializedRank:
    """Rank after ``v -> theta`` with ``theta`` a primitive ``2e``-th root of unity in GF(ell^k)."""
    if weyl is not None and not is_e_regular(weyl, e, ell):
        raise NotERegular(e_regular_reason(weyl, e, ell))
    F, theta = modular_root(e, ell, root_choice)
    Q = _matrix(q)
    M = [[_eval_ff(x, theta, F) for x in row] for row in Q]
    rows, cols = _pivots(M, F)
    target = f"GF({ell}^{F.degree})"
    return SpecializedRank(_label(q, label), e, target, len(cols), len(Q), rows, cols, M)


@dataclass
class BadPrimeSet:
    label: str
    e: int
    rank: int
    norm: int
    candidates: list
    excluded: dict  # prime -> reason
    verified: list

    def describe(self) -> str:
        parts = [f"{self.label} e={self.e}: rank {self.rank}, minor norm {self.norm}"]
        parts.append("candidates {" + ", ".join(map(str, self.candidates)) + "}")
        for p, why in sorted(self.excluded.items()):
            parts.append(f"{p}: {why}")
        parts.append("verified {" + ", ".join(map(str, self.verified)) + "}")
        return "; ".join(parts)


def bad_prime_set(q, e: int, t: WeylType, label: str = "") -> BadPrimeSet:
    """Primes where the rank of the specialized Gram matrix can drop.

    The candidates are the prime divisors of the norm of the pivot minor at
    ``zeta_2e``; the verified set keeps the good, e-regular candidates whose
    modular rank is actually smaller.
    """
    rz = rank_at_zeta(q, e, label)
    Q = _matrix(q)
    if rz.rank == 0:
        return BadPrimeSet(rz.label, e, 0, 1, [], {}, [])
    minor = [[Q[i][j] for j in rz.pivot_cols] for i in rz.pivot_rows]
    D = linalg.det_fraction_free(minor)
    D = D.shift(-D.low)
    N = cyclotomic_norm(D, 2 * e)
    candidates = prime_factors(abs(N)) if abs(N) > 1 else []
    excluded = {}
    verified = []
    for ell in candidates:
        if ell in t.bad_primes:
            excluded[ell] = "bad prime, excluded"
            continue
        if not is_e_regular(t, e, ell):
            excluded[ell] = "not e-regular, excluded"
            continue
        if (2 * e) % ell == 0:
            excluded[ell] = "divides 2e, not testable"
            continue
        if rank_at_modular(q, e, ell, t).rank < rz.rank:
            verified.append(ell)
        else:
            excluded[ell] = "no rank drop"
    return BadPrimeSet(rz.label, e, rz.rank, N, candidates, excluded, verified)


def dim_simple_table(grams: dict, e: int, a_values: dict) -> list[tuple]:
    """``(label, a, dim L)`` for the labels whose Gram matrix stays nonzero at ``zeta_2e``.

    Sorted by a-value, then label.
    """
    rows = []
    for lab, q in grams.items():
        r = rank_at_zeta(q, e, lab).rank
        if r > 0:
            rows.append((lab, a_values[lab], r))
    rows.sort(key=lambda x: (x[1], x[0]))
    return rows
