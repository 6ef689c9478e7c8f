"""Gram matrices of invariant bilinear forms on W-graph modules.

Three independent routes produce the same normalized matrix ``Q``:

* ``solve_gram_direct``: solve ``Q*S = S^T*Q`` for all generators over Q(v);
* ``standard_base_gram``: spin a seed vector and its dual partner, then solve
  ``Q e_i = v_i``;
* ``reconstruct_gram_modular``: run the standard base algorithm at many
  points modulo several large primes and rebuild ``Q`` by interpolation and
  Chinese remaindering.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .rings import linalg
from .rings import upoly
from .rings.finite_field import GF, is_prime, prime_factors
from .rings.laurent import LaurentPoly, cyclotomic_polynomial
from .rings.ratfunc import RatFunc
from .rings.reconstruct import NoReconstruction, rational_reconstruct
from .weyl import WeylType, poincare_polynomial
from .wgraph import U, GenMatrices, _LaurentRing, specialize_generators

log = logging.getLogger(__name__)

MAX_DIRECT_DIM = 128


class SolutionSpaceNotOneDim(ArithmeticError):
    pass


class TooLarge(ValueError):
    pass


class NoParabolicType(ArithmeticError):
    pass


class SpinStalled(ArithmeticError):
    pass


class DegenerateSpecialization(ArithmeticError):
    pass


class NotSymmetric(ArithmeticError):
    pass


class VerificationFailed(ArithmeticError):
    pass


@dataclass
class GramMatrix:
    label: str
    Q: list  # rows of LaurentPoly with nonnegative exponents
    certificate: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.Q)

    def __eq__(self, other):
        if not isinstance(other, GramMatrix):
            return NotImplemented
        return self.Q == other.Q

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.Q[i][j]


@dataclass
class ParabolicWitness:
    subset: tuple
    kind: str  # "sign" (kernels of S+1) or "trivial" (kernels of S-u)
    node: int | None  # index of the standard basis vector spanning the kernel
    seed: list = field(default_factory=list, repr=False)
    words: list = field(default_factory=list)


# -- normalization ------------------------------------------------------------


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.from_laurent(x)
    return RatFunc((x,))


def normalize_gram(raw, label: str = "") -> GramMatrix:
    """Scale a nonzero solution of the invariance system to the canonical integral form.

    Denominators are cleared, the common polynomial factor (including any power
    of ``v`` and the integer content) is divided out, and the first nonzero
    entry in row-major order gets a positive leading coefficient.
    """
    d = len(raw)
    R = [[_as_ratfunc(x) for x in row] for row in raw]
    nonzero = [x for row in R for x in row if x]
    if not nonzero:
        raise ValueError("cannot normalize the zero matrix")
    # common denominator
    den = [Fraction(1)]
    for x in nonzero:
        if len(x.den) > 1:
            g = upoly.gcd(den, list(x.den))
            den = upoly.mul(den, upoly.exact_quo(list(x.den), g))
    polys = [[upoly.trim(upoly.exact_quo(upoly.mul(list(x.num), den), list(x.den))) if x else [] for x in row] for row in R]
    # common polynomial factor over Q (covers powers of v)
    g = []
    for row in polys:
        for p in row:
            if p:
                g = upoly.gcd(g, p) if g else upoly.monic(p)
    polys = [[upoly.exact_quo(p, g) if p else [] for p in row] for row in polys]
    # integer content
    num_g, den_l = 0, 1
    for row in polys:
        for p in row:
            for c in p:
                c = Fraction(c)
                num_g = gcd(num_g, c.numerator)
                den_l = den_l * c.denominator // gcd(den_l, c.denominator)
    scale = Fraction(den_l, num_g)
    Q = [[LaurentPoly([c * scale for c in p]) for p in row] for row in polys]
    first = next(x for row in Q for x in row if x)
    if first.leading_coeff() < 0:
        Q = [[-x for x in row] for row in Q]
    for i in range(d):
        for j in range(i + 1, d):
            if Q[i][j] != Q[j][i]:
                raise NotSymmetric(f"normalized form is not symmetric at ({i + 1}, {j + 1})")
    cert = {"content": 1, "sign": "+", "gcd": 1}
    return GramMatrix(label, Q, cert)


def verify_invariance(Q, m: GenMatrices) -> bool:
    """``Q S = S^T Q`` for every generator matrix ``S``."""
    Qm = Q.Q if isinstance(Q, GramMatrix) else Q
    for s, S in m.mats.items():
        if linalg.matmul(Qm, S) != linalg.matmul(linalg.transpose(S), Qm):
            return False
    return True


def check_gram(q: GramMatrix, m: GenMatrices) -> list[str]:
    """All violated normal-form conditions (empty list when ``q`` is fine)."""
    problems = []
    Q = q.Q
    d = len(Q)
    if not verify_invariance(Q, m):
        problems.append("invariance")
    if any(Q[i][j] != Q[j][i] for i in range(d) for j in range(d)):
        problems.append("symmetry")
    entries = [x for row in Q for x in row if x]
    if any(not x.is_integral() or x.low < 0 for x in entries):
        problems.append("integrality")
    g = []
    content = 0
    for x in entries:
        p = x.to_poly()
        g = upoly.gcd(g, upoly.to_fractions(p)) if g else upoly.monic(upoly.to_fractions(p))
        content = gcd(content, x.content())
    if len(g) > 1 or content != 1:
        problems.append("content")
    if entries and entries[0].leading_coeff() < 0:
        problems.append("sign")
    return problems


# -- direct solve -------------------------------------------------------------


def _ratfunc_cost(x: RatFunc) -> tuple:
    return x.complexity()


def solve_gram_direct(m: GenMatrices) -> GramMatrix:
    """Solve the invariance system for all ``d^2`` entries over Q(v)."""
    d = m.dim
    if d > MAX_DIRECT_DIM:
        raise TooLarge(f"dimension {d} exceeds the direct-solve limit {MAX_DIRECT_DIM}")
    K = linalg.rational_function_field()

    def var(i, j):
        return i * d + j

    equations = []
    for s in m.weyl.generators:
        S = m.mats[s]
        cols = [[S[k][j] for k in range(d)] for j in range(d)]
        for i in range(d):
            for j in range(d):
                # (Q S)_{ij} - (S^T Q)_{ij} = sum_k Q_ik S_kj - sum_k S_ki Q_kj
                eq: dict[int, LaurentPoly] = {}
                for k, a in enumerate(cols[j]):
                    if a:
                        eq[var(i, k)] = eq.get(var(i, k), LaurentPoly()) + a
                for k, a in enumerate(cols[i]):
                    if a:
                        eq[var(k, j)] = eq.get(var(k, j), LaurentPoly()) - a
                eq = {c: K(a) for c, a in eq.items() if a}
                if eq:
                    equations.append(eq)
    rank, basis = linalg.sparse_kernel(equations, d * d, K, pivot_key=_ratfunc_cost)
    if len(basis) != 1:
        raise SolutionSpaceNotOneDim(f"invariant forms span a space of dimension {len(basis)}")
    vec = basis[0]
    raw = [[vec[var(i, j)] for j in range(d)] for i in range(d)]
    return normalize_gram(raw, m.label)


# -- standard base --------------------------------------------------------------


def _field_mats(m: GenMatrices, F, theta=None):
    if theta is None:
        return {s: [[F(x) for x in row] for row in M] for s, M in m.mats.items()}
    return specialize_generators(m, theta, F)


def _eigen_shift(kind: str, F, theta=None):
    """Eigenvalue whose eigenspaces are intersected: -1 or ``u``."""
    if kind == "sign":
        return -F.one
    if theta is None:
        return F(U)
    return theta * theta


def _kernel_intersection(mats: dict, subset, lam, F, transpose=False):
    d = len(next(iter(mats.values())))
    rows = []
    for s in subset:
        M = mats[s]
        if transpose:
            M = linalg.transpose(M)
        for i in range(d):
            rows.append([M[i][j] - lam if i == j else M[i][j] for j in range(d)])
    return linalg.kernel(rows, F)


def _standard_node(vec) -> int | None:
    nz = [i for i, a in enumerate(vec) if a]
    return nz[0] if len(nz) == 1 else None


def find_parabolic_witness(m: GenMatrices) -> ParabolicWitness:
    """First subset (by decreasing size, then lexicographic) with a one-dimensional
    common eigenspace; sign type is tried before trivial type."""
    K = linalg.rational_function_field()
    mats = _field_mats(m, K)
    gens = m.weyl.generators
    for kind in ("sign", "trivial"):
        lam = _eigen_shift(kind, K)
        for size in range(len(gens), 0, -1):
            for subset in itertools.combinations(gens, size):
                ker = _kernel_intersection(mats, subset, lam, K)
                if len(ker) == 1:
                    seed = ker[0]
                    node = _standard_node(seed)
                    w = ParabolicWitness(subset, kind, node, seed)
                    w.words = spin_standard_basis(mats, seed, K)[0]
                    return w
    raise NoParabolicType("no subset of generators has a one-dimensional common eigenspace")


def spin_standard_basis(mats, seed, F):
    """Breadth-first spin of ``seed``; returns ``(words, vectors)`` with ``vectors[i] = T_{words[i]} seed``."""
    if isinstance(mats, GenMatrices):
        mats = _field_mats(mats, F)
    d = len(seed)
    gens = sorted(mats)
    if not any(seed):
        raise ValueError("seed vector must be nonzero")
    ech = linalg.EchelonBasis(F)
    ech.add(seed)
    words, vecs = [()], [list(seed)]
    queue = deque([((), list(seed))])
    while queue and len(words) < d:
        word, vec = queue.popleft()
        for s in gens:
            cand = linalg.matvec(mats[s], vec)
            if ech.add(cand):
                w = (s,) + word
                words.append(w)
                vecs.append(cand)
                queue.append((w, cand))
                if len(words) == d:
                    break
    if len(words) < d:
        raise SpinStalled(f"spin closed at rank {len(words)} < {d}")
    return words, vecs


def _apply_transposed(mats, word, vec):
    for s in reversed(word):
        M = mats[s]
        vec = [sum((M[k][i] * vec[k] for k in range(len(vec)) if M[k][i] and vec[k]), vec[0] * 0) for i in range(len(vec))]
    return vec


def standard_base_gram(m: GenMatrices, witness: ParabolicWitness, F=None, theta=None):
    """The matrix ``Q~`` with ``Q~ e_i = v_i`` over ``F`` (default Q(v)).

    With ``theta`` the generators are first specialized at ``v = theta``; the
    witness subset must still give one-dimensional kernels there.
    """
    if F is None:
        F = linalg.rational_function_field()
    mats = _field_mats(m, F, theta)
    lam = _eigen_shift(witness.kind, F, theta)
    ker = _kernel_intersection(mats, witness.subset, lam, F)
    ker_t = _kernel_intersection(mats, witness.subset, lam, F, transpose=True)
    if len(ker) != 1 or len(ker_t) != 1:
        raise DegenerateSpecialization(f"kernel dimensions {len(ker)}, {len(ker_t)} after specialization")
    e1, v1 = ker[0], ker_t[0]
    words = witness.words
    if len(words) == m.dim:
        es = [_apply_words(mats, w, e1) for w in words]
        E = linalg.transpose(es)
        try:
            Einv = linalg.inverse(E, F)
        except linalg.SingularMatrix:
            words = None
    else:
        words = None
    if words is None:
        # the recorded words no longer give a basis here: spin afresh
        words, es = spin_standard_basis(mats, e1, F)
        Einv = linalg.inverse(linalg.transpose(es), F)
    vs = [_apply_transposed(mats, w, v1) for w in words]
    return linalg.matmul(linalg.transpose(vs), Einv)


def _apply_words(mats, word, vec):
    for s in reversed(word):
        vec = linalg.matvec(mats[s], vec)
    return vec


def gram_standard_base(m: GenMatrices, witness: ParabolicWitness | None = None) -> GramMatrix:
    """Normalized Gram matrix from the standard base algorithm over Q(v)."""
    if witness is None:
        witness = find_parabolic_witness(m)
    return normalize_gram(standard_base_gram(m, witness), m.label)


# -- modular reconstruction -----------------------------------------------------


def default_primes(count: int, start: int = 2**31 - 1):
    p = start
    out = []
    while len(out) < count:
        if is_prime(p):
            out.append(p)
        p -= 2 if p % 2 else 1
    return out


def _poly_mod(p: LaurentPoly, x: int, q: int) -> int:
    acc = 0
    for e, c in p.terms().items():
        acc = (acc + int(c) * pow(x, e, q)) % q
    return acc


def _interp_mod(xs, ys, q):
    """Coefficients (low first) of the interpolating polynomial over GF(q)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, q) % q
    # Newton form to monomial form
    out = [0] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        new = [0] * n
        for k in range(n - 1):
            if out[k]:
                new[k + 1] = (new[k + 1] + out[k]) % q
                new[k] = (new[k] - out[k] * xs[i]) % q
        new[0] = (new[0] + coef[i]) % q
        out = new
    return out


def _trim_mod(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_mod(a, b, q):
    a = _trim_mod(a)
    b = _trim_mod(b)
    inv = pow(b[-1], -1, q)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv % q
        quo[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] = (rem[k + j] - c * bj) % q
    return _trim_mod(quo), _trim_mod(rem[: len(b) - 1])


def _mul_mod(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _trim_mod(out)


def _sub_mod(a, b, q):
    n = max(len(a), len(b))
    return _trim_mod([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)])


def _rational_interp_mod(xs, ys, q):
    """``(num, den)`` over GF(q) with ``den`` monic and ``deg num + deg den < len(xs)``."""
    n = len(xs)
    P = _interp_mod(xs, ys, q)
    Mpoly = [1]
    for x in xs:
        Mpoly = _mul_mod(Mpoly, [(-x) % q, 1], q)
    r0, r1 = Mpoly, _trim_mod(P)
    t0, t1 = [], [1]
    if not r1:
        return [], [1]
    while len(r1) - 1 >= (n + 1) // 2:
        quo, rem = _divmod_mod(r0, r1, q)
        r0, r1 = r1, rem
        t0, t1 = t1, _sub_mod(t0, _mul_mod(quo, t1, q), q)
        if not r1:
            break
    num, den = r1, t1
    if not den:
        raise NoReconstruction("rational interpolation failed")
    inv = pow(den[-1], -1, q)
    return [c * inv % q for c in num], [c * inv % q for c in den]


def _eval_mod(p, x, q):
    acc = 0
    for c in reversed(p):
        acc = (acc * x + c) % q
    return acc


def _lcm_mod(a, b, q):
    # monic lcm over GF(q)
    g0, g1 = a, b
    while g1:
        g0, g1 = g1, _divmod_mod(g0, g1, q)[1]
    g0 = [c * pow(g0[-1], -1, q) % q for c in g0]
    return _divmod_mod(_mul_mod(a, b, q), g0, q)[0]


@dataclass
class ModularRun:
    prime: int
    points: list
    ratios: dict = field(default_factory=dict)  # point -> matrix of ints (Q~ / anchor)


def _specialized_ratio(m, witness, Fp, a, pw, anchor):
    q = Fp.p
    if (1 + a * a) % q == 0 or _poly_mod(pw, a * a % q, q) == 0:
        return None
    try:
        Qt = standard_base_gram(m, witness, Fp, Fp(a))
    except (DegenerateSpecialization, linalg.SingularMatrix, SpinStalled):
        return None
    an = Qt[anchor][anchor]
    if not an:
        return None
    inv = 1 / an
    return [[int(x * inv) for x in row] for row in Qt]


def _reconstruct_one_prime(samples: dict, d: int, q: int, check: int):
    """Rational functions per entry mod ``q`` from ``samples`` (point -> matrix)."""
    pts = sorted(samples)
    fit, extra = pts[: len(pts) - check], pts[len(pts) - check :]
    fracs = {}
    den = [1]
    for i in range(d):
        for j in range(d):
            ys = [samples[a][i][j] for a in fit]
            num, dn = _rational_interp_mod(fit, ys, q)
            for a in extra:
                lhs = _eval_mod(num, a, q)
                rhs = _eval_mod(dn, a, q) * samples[a][i][j] % q
                if lhs != rhs:
                    raise NoReconstruction("rational interpolation not yet stable")
            fracs[i, j] = (num, dn)
            den = _lcm_mod(den, dn, q)
    polys = {}
    for (i, j), (num, dn) in fracs.items():
        polys[i, j] = _mul_mod(num, _divmod_mod(den, dn, q)[0], q)
    return den, polys


def _combine(per_prime, d):
    """CRT + rational reconstruction of the denominator and numerators."""
    deg = max(len(den) for den, _ in per_prime.values())
    usable = {q: v for q, v in per_prime.items() if len(v[0]) == deg}
    primes = sorted(usable)
    M = 1
    for q in primes:
        M *= q

    def lift(vals):
        x = 0
        Mi = 1
        for q, r in zip(primes, vals):
            t = ((r - x) * pow(Mi, -1, q)) % q
            x += Mi * t
            Mi *= q
        return rational_reconstruct(x % M, M)

    den = [lift([usable[q][0][k] for q in primes]) for k in range(deg)]
    out = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            n = max(len(usable[q][1][i, j]) for q in primes)
            coeffs = []
            for k in range(n):
                vals = [(usable[q][1][i, j][k] if k < len(usable[q][1][i, j]) else 0) for q in primes]
                coeffs.append(lift(vals))
            out[i][j] = RatFunc(coeffs, den)
    return out


def reconstruct_gram_modular(
    m: GenMatrices,
    plan=None,
    witness: ParabolicWitness | None = None,
    max_primes: int = 8,
    max_points: int = 512,
    initial_points: int = 16,
) -> GramMatrix:
    """Rebuild ``Q`` from standard base runs over prime fields.

    ``plan`` is an optional explicit list of ``(prime, [points])``; when it is
    omitted the number of points and primes grows until two consecutive rounds
    agree.  The result is always checked against the invariance system exactly.
    """
    if witness is None:
        witness = find_parabolic_witness(m)
    anchor = witness.node if witness.node is not None else _first_nonzero(witness.seed)
    pw = poincare_polynomial(m.weyl)
    d = m.dim
    check = 3
    if plan is not None:
        per_prime = {}
        for q, points in plan:
            Fp = GF(q)
            samples = {}
            for a in points:
                r = _specialized_ratio(m, witness, Fp, a, pw, anchor)
                if r is not None:
                    samples[a] = r
            if len(samples) <= check:
                raise NoReconstruction(f"plan gives only {len(samples)} usable points for prime {q}")
            per_prime[q] = _reconstruct_one_prime(samples, d, q, check)
        try:
            result = normalize_gram(_combine(per_prime, d), m.label)
        except (NoReconstruction, ArithmeticError) as exc:
            raise NoReconstruction(f"plan too small: {exc}") from exc
        if not verify_invariance(result, m):
            raise NoReconstruction("plan too small: reconstructed matrix fails the invariance check")
        return result

    primes = default_primes(max_primes)
    npoints = initial_points
    samples_by_prime: dict[int, dict] = {}
    per_prime: dict = {}
    previous = None
    used = 1
    while True:
        try:
            for q in primes[:used]:
                Fp = GF(q)
                samples = samples_by_prime.setdefault(q, {})
                a = max(samples, default=1) + 1
                while len(samples) < npoints + check:
                    if a >= q:
                        raise NoReconstruction("ran out of evaluation points")
                    r = _specialized_ratio(m, witness, Fp, a, pw, anchor)
                    if r is not None:
                        samples[a] = r
                    a += 1
                per_prime[q] = _reconstruct_one_prime(samples, d, q, check)
            current = normalize_gram(_combine({q: per_prime[q] for q in primes[:used]}, d), m.label)
        except (NoReconstruction, ZeroDivisionError, ArithmeticError) as exc:
            log.debug("round with %d points, %d primes failed: %s", npoints, used, exc)
            current = None
            if npoints * 2 > max_points:
                if used >= max_primes:
                    raise NoReconstruction(
                        f"no stable reconstruction within {max_points} points and {max_primes} primes"
                    ) from exc
                used += 1
            else:
                npoints *= 2
            previous = None
            continue
        if previous is not None and current == previous:
            if verify_invariance(current, m):
                current.certificate["method"] = "modular"
                current.certificate["primes"] = used
                current.certificate["points"] = npoints
                return current
            raise VerificationFailed("stable reconstruction fails the invariance system")
        previous = current
        if used < max_primes:
            used += 1
        elif npoints * 2 <= max_points:
            npoints *= 2
        else:
            raise NoReconstruction("reconstruction did not stabilize within the budget")


def _first_nonzero(vec) -> int:
    return next(i for i, a in enumerate(vec) if a)


# -- determinant factor check -----------------------------------------------------


@dataclass
class DetFactorReport:
    ok: bool
    determinant: LaurentPoly
    content: int
    content_primes: list
    cyclotomic_factors: dict  # k -> multiplicity of Phi_k(v)
    leftover: LaurentPoly
    violations: list

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(self.violations)


def det_factor_check(q, t: WeylType) -> DetFactorReport:
    """Every prime in the content of ``det Q`` is bad and the rest divides a power of ``P_W(v^2)``."""
    Q = q.Q if isinstance(q, GramMatrix) else q
    D = linalg.det_fraction_free(Q)
    violations = []
    if not D:
        return DetFactorReport(False, D, 0, [], {}, D, ["determinant vanishes"])
    p = D.shift(-D.low)
    content = abs(p.content()) if p.is_integral() else p.content()
    content_int = int(content) if Fraction(content).denominator == 1 else None
    if content_int is None:
        violations.append("determinant is not integral")
        return DetFactorReport(False, D, 0, [], {}, p, violations)
    primes = prime_factors(content_int) if content_int > 1 else []
    for ell in primes:
        if ell not in t.bad_primes:
            violations.append(f"prime {ell} divides the content but is good for {t.name}")
    rest = p.scale(Fraction(1, content_int))
    pw2 = poincare_polynomial(t).substitute_power(2)
    factors = {}
    maxk = 2 * max(t.degrees)
    for k in range(1, maxk + 1):
        phi = cyclotomic_polynomial(k)
        if not phi.divides(pw2):
            continue
        n = 0
        while rest.high > 0 and phi.divides(rest):
            rest = rest.exact_div(phi)
            n += 1
        if n:
            factors[k] = n
    if rest.high != 0 or rest.low != 0 or abs(rest.coeff(0)) != 1:
        violations.append(f"factor {rest} does not divide a power of P_W(v^2)")
    return DetFactorReport(not violations, D, content_int, primes, factors, rest, violations)
