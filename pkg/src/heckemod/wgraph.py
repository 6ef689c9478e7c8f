"""W-graphs and the generator matrices of the Hecke algebra module they define."""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import linalg
from .rings.laurent import V, LaurentPoly
from .weyl import IrrLabel, WeylType

ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
U = V * V


class MalformedWGraph(ValueError):
    pass


@dataclass
class WGraph:
    weyl: WeylType
    label: IrrLabel
    nodes: list  # (node id, frozenset of generator labels)
    edges: list  # directed (x, y, mu)

    def __post_init__(self):
        self.nodes = [(x, frozenset(I)) for x, I in self.nodes]
        self.edges = [tuple(e) for e in self.edges]
        self.validate()

    def validate(self):
        ids = [x for x, _ in self.nodes]
        if len(set(ids)) != len(ids):
            raise MalformedWGraph("duplicate node id")
        gens = set(self.weyl.generators)
        for x, I in self.nodes:
            if not I <= gens:
                raise MalformedWGraph(f"node {x}: generators {sorted(I - gens)} not in S")
        if len(ids) != self.label.dim:
            raise MalformedWGraph(f"{len(ids)} nodes but {self.label.name} has dimension {self.label.dim}")
        known = set(ids)
        seen = set()
        for x, y, mu in self.edges:
            if x not in known or y not in known:
                raise MalformedWGraph(f"edge ({x}, {y}) references an unknown node")
            if x == y:
                raise MalformedWGraph(f"self-edge at {x}")
            if not isinstance(mu, int) or mu == 0:
                raise MalformedWGraph(f"edge ({x}, {y}) needs a nonzero integer weight")
            if (x, y) in seen:
                raise MalformedWGraph(f"edge ({x}, {y}) listed twice")
            seen.add((x, y))

    @property
    def dim(self) -> int:
        return len(self.nodes)

    def index(self, node) -> int:
        for i, (x, _) in enumerate(self.nodes):
            if x == node:
                return i
        raise KeyError(node)

    def tau(self, i: int) -> frozenset:
        return self.nodes[i][1]

    def mu(self, x, y) -> int:
        for a, b, m in self.edges:
            if a == x and b == y:
                return m
        return 0


@dataclass
class GenMatrices:
    weyl: WeylType
    dim: int
    mats: dict  # generator label -> matrix over Z[v]
    label: str = ""
    taus: list = field(default_factory=list)

    def __getitem__(self, s: int):
        return self.mats[s]


def build_generator_matrices(g: WGraph) -> GenMatrices:
    """Matrices of ``T_s``: column ``y`` is ``-e_y`` if ``s`` is in ``I(y)``,
    otherwise ``u*e_y`` plus ``v*mu(x, y)*e_x`` over the nodes ``x`` with ``s`` in ``I(x)``."""
    d = g.dim
    pos = {x: i for i, (x, _) in enumerate(g.nodes)}
    mats = {}
    for s in g.weyl.generators:
        M = [[ZERO] * d for _ in range(d)]
        for j in range(d):
            M[j][j] = -ONE if s in g.tau(j) else U
        for x, y, mu in g.edges:
            i, j = pos[x], pos[y]
            if s in g.tau(i) and s not in g.tau(j):
                M[i][j] = V * mu
        mats[s] = M
    return GenMatrices(g.weyl, d, mats, g.label.name, [g.tau(i) for i in range(d)])


@dataclass
class RelationReport:
    ok: bool
    relation: str = ""
    generators: tuple = ()

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.relation} relation fails for generators {self.generators}"


def _alternating(ms, s, t, m, d):
    out = linalg.identity(d, _LaurentRing)
    for k in range(m):
        out = linalg.matmul(out, ms[s] if k % 2 == 0 else ms[t])
    return out


class _Ring:
    zero = ZERO
    one = ONE

    def __call__(self, x):
        return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


_LaurentRing = _Ring()


def quadratic_holds(M, d: int) -> bool:
    """``(M - u)(M + 1) = 0``."""
    I = linalg.identity(d, _LaurentRing)
    A = linalg.msub(M, linalg.mscale(I, U))
    B = linalg.madd(M, I)
    return linalg.is_zero_matrix(linalg.matmul(A, B))


def verify_representation(m: GenMatrices) -> RelationReport:
    """Check the quadratic and braid relations exactly over ``Z[v]``."""
    gens = m.weyl.generators
    for s in gens:
        if not quadratic_holds(m.mats[s], m.dim):
            return RelationReport(False, "quadratic", (s,))
    for i, s in enumerate(gens):
        for t in gens[i + 1 :]:
            mst = m.weyl.coxeter_entry(s, t)
            lhs = _alternating(m.mats, s, t, mst, m.dim)
            rhs = _alternating(m.mats, t, s, mst, m.dim)
            if lhs != rhs:
                return RelationReport(False, "braid", (s, t))
    return RelationReport(True)


def apply_word(mats, word, target):
    """``sigma(s_1) ... sigma(s_k) * target`` for a word ``(s_1, ..., s_k)``.

    ``mats`` maps generators to matrices; ``target`` is a matrix or a vector.
    """
    if isinstance(mats, GenMatrices):
        mats = mats.mats
    is_vec = bool(target) and not isinstance(target[0], list)
    for s in reversed(word):
        M = mats[s]
        n = len(target) if is_vec else len(target)
        if len(M[0]) != n:
            raise linalg.DimensionMismatch("word application on a target of the wrong size")
        target = linalg.matvec(M, target) if is_vec else linalg.matmul(M, target)
    return target


def word_matrix(mats, word, F=None):
    """Matrix of ``T_w`` for the word ``w``."""
    if isinstance(mats, GenMatrices):
        mats = mats.mats
    d = len(next(iter(mats.values())))
    return apply_word(mats, word, linalg.identity(d, F or _LaurentRing))


def specialize_generators(m: GenMatrices, theta, F) -> dict:
    """Evaluate every generator matrix at ``v = theta`` in the field ``F``."""
    theta = F(theta) if isinstance(theta, int) else theta
    vals = {}

    def ev(p: LaurentPoly):
        if p in vals:
            return vals[p]
        if not p:
            out = F.zero
        else:
            out = F.zero
            for e, c in p.terms().items():
                out = out + F(c) * theta**e
        vals[p] = out
        return out

    return {s: [[ev(p) for p in row] for row in M] for s, M in m.mats.items()}


def specialized_relations_hold(mats: dict, weyl: WeylType, xi, F) -> bool:
    """Quadratic relations with parameter ``xi`` and all braid relations."""
    d = len(next(iter(mats.values())))
    I = linalg.identity(d, F)
    for s, M in mats.items():
        A = linalg.msub(M, linalg.mscale(I, xi))
        if not linalg.is_zero_matrix(linalg.matmul(A, linalg.madd(M, I))):
            return False
    gens = weyl.generators
    for i, s in enumerate(gens):
        for t in gens[i + 1 :]:
            m = weyl.coxeter_entry(s, t)
            lhs = I
            rhs = I
            for k in range(m):
                lhs = linalg.matmul(lhs, mats[s] if k % 2 == 0 else mats[t])
                rhs = linalg.matmul(rhs, mats[t] if k % 2 == 0 else mats[s])
            if lhs != rhs:
                return False
    return True


def trace(M):
    acc = M[0][0] * 0
    for i in range(len(M)):
        acc = acc + M[i][i]
    return acc
