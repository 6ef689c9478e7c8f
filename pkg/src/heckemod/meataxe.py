"""A small MeatAxe: chop modules over finite fields into composition factors,
certify irreducibility with Norton's criterion, and compare modules via
homomorphism spaces."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .rings import linalg
from .rings.finite_field import GF, factor
from .wgraph import GenMatrices, specialize_generators

MAX_WORD = 4
DEFAULT_BUDGET = 200


class Stalled(RuntimeError):
    """No decision after the configured number of random algebra elements."""


class NonSplit(ArithmeticError):
    pass


@dataclass
class FModule:
    field: GF
    gens: dict  # generator label -> square matrix over the field
    name: str = ""

    @property
    def dim(self) -> int:
        return len(next(iter(self.gens.values())))

    def transpose(self) -> "FModule":
        return FModule(self.field, {s: linalg.transpose(M) for s, M in self.gens.items()}, self.name + "*")


def fmodule_from_generators(m: GenMatrices, F: GF, theta, name: str = "") -> FModule:
    return FModule(F, specialize_generators(m, theta, F), name or m.label)


# -- random algebra elements ----------------------------------------------------


def _word_matrix(mod: FModule, word):
    F = mod.field
    M = linalg.identity(mod.dim, F)
    for s in word:
        M = linalg.matmul(M, mod.gens[s])
    return M


def _random_element(mod: FModule, rng: random.Random):
    """A random combination of products of at most ``MAX_WORD`` generators."""
    F = mod.field
    gens = sorted(mod.gens)
    out = linalg.zeros(mod.dim, mod.dim, F)
    terms = []
    for _ in range(rng.randint(2, 4)):
        word = tuple(rng.choice(gens) for _ in range(rng.randint(1, MAX_WORD)))
        c = F.element(rng.randrange(1, F.order))
        terms.append((word, c.val))
        out = linalg.madd(out, linalg.mscale(_word_matrix(mod, word), c))
    return out, terms


def spin(mats, vectors, F):
    """Echelon basis of the smallest subspace containing ``vectors`` and stable under ``mats``."""
    ech = linalg.EchelonBasis(F)
    queue = []
    for v in vectors:
        if ech.add(v):
            queue.append(v)
    n = len(vectors[0]) if vectors else 0
    while queue and len(ech) < n:
        v = queue.pop(0)
        for M in mats:
            w = linalg.matvec(M, v)
            if ech.add(w):
                queue.append(w)
    return [row for _, row in ech.rows]


def _annihilator(vectors, n, F):
    """Basis of ``{x : w . x = 0 for all w in vectors}``."""
    return linalg.kernel(vectors, F) if vectors else linalg.identity(n, F)


@dataclass
class NortonWitness:
    element: list  # (word, coefficient code) terms of the random element
    factor: list  # coefficient codes of the irreducible factor, low degree first
    nullity: int


@dataclass
class IrreducibilityResult:
    irreducible: bool
    witness: NortonWitness | None = None
    submodule: list | None = None  # basis of a proper submodule when reducible

    def __bool__(self):
        return self.irreducible


def _norton(mod: FModule, rng: random.Random, budget: int) -> IrreducibilityResult:
    F = mod.field
    n = mod.dim
    if n == 1:
        return IrreducibilityResult(True, NortonWitness([], [], 1))
    mats = [mod.gens[s] for s in sorted(mod.gens)]
    mats_t = [linalg.transpose(M) for M in mats]
    for _ in range(budget):
        A, terms = _random_element(mod, rng)
        cp = linalg.charpoly(A, F)
        for f, _mult in factor(cp, seed=rng.randrange(1 << 30)):
            deg = len(f) - 1
            N = linalg.poly_of_matrix(f, A, F)
            ker = linalg.kernel(N, F)
            if not ker:
                continue
            sub = spin(mats, [ker[0]], F)
            if len(sub) < n:
                return IrreducibilityResult(False, submodule=sub)
            if len(ker) != deg:
                continue
            ker_t = linalg.kernel(linalg.transpose(N), F)
            dual = spin(mats_t, [ker_t[0]], F)
            if len(dual) < n:
                return IrreducibilityResult(False, submodule=_annihilator(dual, n, F))
            return IrreducibilityResult(True, NortonWitness(terms, [c.val for c in f], deg))
    raise Stalled(f"no decision after {budget} random elements")


def is_irreducible(mod: FModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> IrreducibilityResult:
    return _norton(mod, random.Random(seed), budget)


def _complement(basis, n, F):
    """Standard basis vectors completing an echelon ``basis`` of a subspace."""
    R, pivots = linalg.rref(basis, F)
    return [[F.one if j == i else F.zero for j in range(n)] for i in range(n) if i not in pivots]


def split(mod: FModule, sub_basis) -> tuple[FModule, FModule]:
    """Submodule and quotient module for an invariant subspace."""
    F = mod.field
    n = mod.dim
    k = len(sub_basis)
    basis = list(sub_basis) + _complement(sub_basis, n, F)
    P = linalg.transpose(basis)  # columns are basis vectors
    Pinv = linalg.inverse(P, F)
    sub, quo = {}, {}
    for s, M in mod.gens.items():
        C = linalg.matmul(Pinv, linalg.matmul(M, P))
        if any(C[i][j] for i in range(k, n) for j in range(k)):
            raise ArithmeticError("subspace is not invariant")  # pragma: no cover
        sub[s] = [row[:k] for row in C[:k]]
        quo[s] = [row[k:] for row in C[k:]]
    return FModule(F, sub, mod.name + "/sub"), FModule(F, quo, mod.name + "/quo")


# -- fingerprints and homomorphisms ---------------------------------------------


def fingerprint_words(gens) -> list[tuple]:
    gens = sorted(gens)
    words = [()]
    for length in range(1, 4):
        words.extend(itertools.product(gens, repeat=length))
    return words


def fingerprint(mod: FModule) -> tuple:
    """Dimension plus traces of all words of length at most 3."""
    out = [mod.dim]
    for w in fingerprint_words(mod.gens):
        M = _word_matrix(mod, w)
        out.append(sum((M[i][i] for i in range(mod.dim)), mod.field.zero).val)
    return tuple(out)


def hom_space_dim(m: FModule, n: FModule) -> int:
    """Dimension of the space of module maps ``X`` with ``X m(s) = n(s) X``."""
    if m.field != n.field:
        raise ValueError("modules over different fields")
    F = m.field
    dm, dn = m.dim, n.dim

    def var(i, j):  # X is dn x dm
        return i * dm + j

    equations = []
    for s in sorted(m.gens):
        A, B = m.gens[s], n.gens[s]
        for i in range(dn):
            for j in range(dm):
                eq = {}
                for k in range(dm):
                    a = A[k][j]
                    if a:
                        eq[var(i, k)] = eq.get(var(i, k), F.zero) + a
                for k in range(dn):
                    b = B[i][k]
                    if b:
                        eq[var(k, j)] = eq.get(var(k, j), F.zero) - b
                eq = {c: x for c, x in eq.items() if x}
                if eq:
                    equations.append(eq)
    _, basis = linalg.sparse_kernel(equations, dm * dn, F)
    return len(basis)


# -- chopping -------------------------------------------------------------------


@dataclass
class Constituent:
    id: int
    module: FModule
    multiplicity: int
    fingerprint: tuple
    witness: NortonWitness | None = None

    @property
    def dim(self) -> int:
        return self.module.dim


def isomorphic_simples(a: FModule, b: FModule, fa=None, fb=None) -> bool:
    if a.dim != b.dim:
        return False
    if (fa or fingerprint(a)) != (fb or fingerprint(b)):
        return False
    return hom_space_dim(a, b) > 0


def chop(mod: FModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[Constituent]:
    """Composition factors of ``mod`` with multiplicities (isomorphic factors merged)."""
    rng = random.Random(seed)
    factors: list[tuple[FModule, NortonWitness]] = []
    stack = [mod]
    while stack:
        cur = stack.pop()
        res = _norton(cur, rng, budget)
        if res.irreducible:
            factors.append((cur, res.witness))
        else:
            sub, quo = split(cur, res.submodule)
            stack.append(quo)
            stack.append(sub)
    out: list[Constituent] = []
    for fm, wit in factors:
        fp = fingerprint(fm)
        for c in out:
            if isomorphic_simples(c.module, fm, c.fingerprint, fp):
                c.multiplicity += 1
                break
        else:
            out.append(Constituent(len(out), fm, 1, fp, wit))
    for c in out:
        if hom_space_dim(c.module, c.module) != 1:
            raise NonSplit(f"constituent of dimension {c.dim} has a larger endomorphism ring")
    return out


def constituent_multiset(constituents) -> list[tuple]:
    """Seed-independent summary: sorted ``(fingerprint, multiplicity)``."""
    return sorted((c.fingerprint, c.multiplicity) for c in constituents)


def head_is_simple(mod: FModule, simples) -> tuple[bool, int | None]:
    """Whether ``mod`` has a unique maximal submodule; returns the head's constituent id."""
    total = 0
    head = None
    for c in simples:
        S = c.module if isinstance(c, Constituent) else c
        h = hom_space_dim(mod, S)
        if h:
            head = c.id if isinstance(c, Constituent) else S
        total += h
    return total == 1, head if total == 1 else None


# -- decomposition matrices -------------------------------------------------------


class IdentificationAmbiguous(ArithmeticError):
    pass


class DeltaViolation(ArithmeticError):
    pass


@dataclass
class DecompMatrix:
    rows: list  # labels of all irreducible modules
    cols: list  # labels identified with the simple modules
    entries: list  # entries[i][j] = multiplicity of simple cols[j] in module rows[i]
    a_values: dict
    simple_dims: dict  # column label -> dimension of the simple module
    e: int
    ell: int | None = None
    simples: list = field(default_factory=list, repr=False)

    def get(self, lam: str, mu: str) -> int:
        if mu not in self.cols:
            return 0
        return self.entries[self.rows.index(lam)][self.cols.index(mu)]

    def row_dims(self) -> dict:
        return {
            lam: sum(self.entries[i][j] * self.simple_dims[mu] for j, mu in enumerate(self.cols))
            for i, lam in enumerate(self.rows)
        }

    def table(self) -> list[tuple]:
        """``(label, a, dim L)`` over the columns, sorted by a-value then label."""
        return sorted(((mu, self.a_values[mu], self.simple_dims[mu]) for mu in self.cols), key=lambda x: (x[1], x[0]))


def check_delta(D: DecompMatrix) -> list[str]:
    """Violations of unitriangularity: unit diagonal on the columns, and
    ``(lam, mu)`` nonzero only if ``lam == mu`` or ``a(mu) < a(lam)``."""
    problems = []
    for mu in D.cols:
        if D.get(mu, mu) != 1:
            problems.append(f"diagonal entry at {mu} is {D.get(mu, mu)}")
    for i, lam in enumerate(D.rows):
        for j, mu in enumerate(D.cols):
            if D.entries[i][j] and lam != mu and not D.a_values[mu] < D.a_values[lam]:
                problems.append(f"entry ({lam}, {mu}) is nonzero but a({mu}) >= a({lam})")
    return problems


def identity_decomposition(labels, a_values: dict, dims: dict, e: int, ell=None) -> DecompMatrix:
    n = len(labels)
    entries = [[int(i == j) for j in range(n)] for i in range(n)]
    return DecompMatrix(list(labels), list(labels), entries, dict(a_values), dict(dims), e, ell)


def decomposition_matrix(modules: dict, a_values: dict, e: int, ell: int | None = None, seed: int = 0) -> DecompMatrix:
    """Chop every module, merge isomorphic simples and label each simple by the
    unique module of least a-value that contains it exactly once."""
    labels = list(modules)
    simples: list[tuple[FModule, tuple]] = []
    counts: dict[tuple[str, int], int] = {}
    for idx, lam in enumerate(labels):
        for c in chop(modules[lam], seed=(seed + 7919 * idx) & (2**64 - 1)):
            for k, (S, fp) in enumerate(simples):
                if isomorphic_simples(S, c.module, fp, c.fingerprint):
                    break
            else:
                simples.append((c.module, c.fingerprint))
                k = len(simples) - 1
            counts[lam, k] = counts.get((lam, k), 0) + c.multiplicity
    names = []
    for k, (S, _) in enumerate(simples):
        hits = [lam for lam in labels if counts.get((lam, k))]
        amin = min(a_values[lam] for lam in hits)
        cands = [lam for lam in hits if a_values[lam] == amin]
        if len(cands) != 1 or counts[cands[0], k] != 1:
            raise IdentificationAmbiguous(
                f"simple of dimension {S.dim}: candidates {cands} with least a-value {amin}"
            )
        names.append(cands[0])
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise IdentificationAmbiguous(f"two simples are both labelled {dup}")
    order = sorted(range(len(simples)), key=lambda k: labels.index(names[k]))
    cols = [names[k] for k in order]
    entries = [[counts.get((lam, k), 0) for k in order] for lam in labels]
    dims = {names[k]: simples[k][0].dim for k in order}
    D = DecompMatrix(labels, cols, entries, dict(a_values), dims, e, ell, [simples[k][0] for k in order])
    problems = check_delta(D)
    if problems:
        raise DeltaViolation("; ".join(problems))
    for lam, m in modules.items():
        if D.row_dims()[lam] != m.dim:
            raise DeltaViolation(f"row {lam} does not add up to the module dimension")  # pragma: no cover
    return D
