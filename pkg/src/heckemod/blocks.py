"""Blocks of decomposition matrices, cyclotomic defects, adjustment matrices
and the radical-dimension comparison behind James' conjecture."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .meataxe import DecompMatrix
from .rings import linalg
from .schur import SchurElement, phi_e_defect
from .specrank import NotERegular, rank_at_modular, rank_at_zeta
from .weyl import WeylType, e_regular_reason, is_e_regular


class DefectMismatch(ArithmeticError):
    pass


class NoSolution(ArithmeticError):
    pass


class NegativeEntry(ArithmeticError):
    pass


class ShapeViolation(ArithmeticError):
    pass


# -- blocks ---------------------------------------------------------------------


@dataclass
class Block:
    labels: list  # ordered by a-value, then label
    defect: int | None = None

    def __len__(self):
        return len(self.labels)

    def __contains__(self, lam):
        return lam in self.labels


@dataclass
class BlockPartition:
    e: int
    ell: int | None  # None stands for the complex root of unity
    blocks: list = field(default_factory=list)
    a_values: dict = field(default_factory=dict)

    def block_of(self, lam: str) -> Block:
        for b in self.blocks:
            if lam in b:
                return b
        raise KeyError(lam)

    def singletons(self) -> list[str]:
        return [b.labels[0] for b in self.blocks if len(b) == 1]

    def report(self) -> list[str]:
        lines = []
        for i, b in enumerate(self.blocks, 1):
            d = "-" if b.defect is None else str(b.defect)
            lines.append(f"block {i} (defect {d}): " + ", ".join(b.labels))
        return lines


def _order_key(a_values):
    return lambda lam: (a_values[lam], lam)


def brauer_blocks(d: DecompMatrix) -> BlockPartition:
    """Connected components of the rows, two rows being joined when they share a column."""
    parent = {lam: lam for lam in d.rows}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(len(d.cols)):
        hit = [lam for i, lam in enumerate(d.rows) if d.entries[i][j]]
        for lam in hit[1:]:
            ra, rb = find(hit[0]), find(lam)
            if ra != rb:
                parent[rb] = ra
    comps: dict[str, list] = {}
    for lam in d.rows:
        comps.setdefault(find(lam), []).append(lam)
    key = _order_key(d.a_values)
    blocks = [Block(sorted(c, key=key)) for c in comps.values()]
    blocks.sort(key=lambda b: key(b.labels[0]))
    return BlockPartition(d.e, d.ell, blocks, dict(d.a_values))


def block_defects(p: BlockPartition, schur, e: int | None = None) -> BlockPartition:
    """Fill in the Phi_e-defect of every block; it must be constant on each block."""
    e = p.e if e is None else e
    if isinstance(schur, dict):
        schur = list(schur.values())
    by_label = {s.label: s for s in schur}
    out = []
    for b in p.blocks:
        missing = [lam for lam in b.labels if lam not in by_label]
        if missing:
            raise KeyError(f"no Schur element for {missing[0]}")
        ds = {lam: phi_e_defect(by_label[lam], e) for lam in b.labels}
        if len(set(ds.values())) != 1:
            raise DefectMismatch(
                "defects differ inside a block: " + ", ".join(f"{lam}:{d}" for lam, d in ds.items())
            )
        out.append(Block(list(b.labels), next(iter(ds.values()))))
    return BlockPartition(p.e, p.ell, out, dict(p.a_values))


def block_structure_problems(p: BlockPartition, d: DecompMatrix) -> list[str]:
    """Deviations from the expected shape of defect 0 and defect 1 blocks.

    Defect 0 blocks are singletons.  In a defect 1 block with labels
    ``l1, ..., ln`` in increasing a-order, the a-values are distinct, the
    columns are ``l1, ..., l(n-1)`` and ``(l_i : l_j) = 1`` exactly when
    ``i = j`` or ``i = j + 1``.
    """
    problems = []
    for b in p.blocks:
        if b.defect is None:
            problems.append(f"block {b.labels} has no defect")
            continue
        if b.defect == 0 and len(b) != 1:
            problems.append(f"defect 0 block {b.labels} is not a singleton")
        if b.defect != 1:
            continue
        avals = [p.a_values[lam] for lam in b.labels]
        if len(set(avals)) != len(avals):
            problems.append(f"defect 1 block {b.labels} has repeated a-values {avals}")
            continue
        n = len(b)
        cols = [mu for mu in d.cols if mu in b]
        if cols != b.labels[: n - 1]:
            problems.append(f"defect 1 block {b.labels} has columns {cols}")
            continue
        for i, lam in enumerate(b.labels):
            for j, mu in enumerate(cols):
                want = 1 if i in (j, j + 1) else 0
                if d.get(lam, mu) != want:
                    problems.append(f"defect 1 block entry ({lam}, {mu}) is {d.get(lam, mu)}, expected {want}")
    return problems


# -- adjustment matrices --------------------------------------------------------


@dataclass
class AdjustmentMatrix:
    rows: list  # simples at the complex root of unity
    cols: list  # simples at the specialization under study
    entries: list

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self.entries[i][j] == int(i == j) for i in range(len(self.rows)) for j in range(len(self.cols)))

    def get(self, nu: str, mu: str) -> int:
        return self.entries[self.rows.index(nu)][self.cols.index(mu)]


def adjustment_shape_problems(A: AdjustmentMatrix, a_values: dict) -> list[str]:
    problems = []
    for mu in A.cols:
        if mu not in A.rows:
            problems.append(f"{mu} is simple at the specialization but not at the root of unity")
        elif A.get(mu, mu) != 1:
            problems.append(f"diagonal entry at {mu} is {A.get(mu, mu)}")
    for i, nu in enumerate(A.rows):
        for j, mu in enumerate(A.cols):
            x = A.entries[i][j]
            if x < 0:
                problems.append(f"entry ({nu}, {mu}) is negative")
            if x and nu != mu and not a_values[mu] < a_values[nu]:
                problems.append(f"entry ({nu}, {mu}) is nonzero but a({mu}) >= a({nu})")
    return problems


def adjustment_matrix(d_xi: DecompMatrix, d_zeta: DecompMatrix) -> AdjustmentMatrix:
    """Solve ``D_xi = D_zeta A`` column by column over the rationals."""
    if sorted(d_xi.rows) != sorted(d_zeta.rows):
        raise NoSolution("decomposition matrices have different row labels")
    Q = linalg.QQ
    Z = [[Fraction(x) for x in row] for row in d_zeta.entries]
    if linalg.rank(Z, Q) != len(d_zeta.cols):
        raise NoSolution("the root-of-unity decomposition matrix lacks full column rank")
    cols_out = []
    for mu in d_xi.cols:
        b = [Fraction(d_xi.get(lam, mu)) for lam in d_zeta.rows]
        try:
            x = linalg.solve(Z, b, Q)
        except linalg.SingularMatrix:
            raise NoSolution(f"column {mu} is not in the span of the root-of-unity matrix") from None
        if any(c.denominator != 1 for c in x):
            raise NoSolution(f"column {mu} has a non-integral solution")
        cols_out.append([int(c) for c in x])
    entries = [[cols_out[j][i] for j in range(len(d_xi.cols))] for i in range(len(d_zeta.cols))]
    A = AdjustmentMatrix(list(d_zeta.cols), list(d_xi.cols), entries)
    neg = [(nu, mu) for i, nu in enumerate(A.rows) for j, mu in enumerate(A.cols) if entries[i][j] < 0]
    if neg:
        raise NegativeEntry(f"negative adjustment entry at {neg[0]}")
    a_values = {**d_zeta.a_values, **d_xi.a_values}
    problems = adjustment_shape_problems(A, a_values)
    if problems:
        raise ShapeViolation("; ".join(problems))
    return A


# -- verdict --------------------------------------------------------------------


@dataclass
class RadicalComparison:
    label: str
    dim: int
    corank_xi: int
    corank_zeta: int

    @property
    def equal(self) -> bool:
        return self.corank_xi == self.corank_zeta


@dataclass
class JamesVerdict:
    e: int
    ell: int
    rows: list
    holds: bool

    def report(self) -> list[str]:
        lines = [f"{'label':<8} {'dim':>4} {'rad xi':>7} {'rad zeta':>9}"]
        for r in self.rows:
            flag = "" if r.equal else "  differs"
            lines.append(f"{r.label:<8} {r.dim:>4} {r.corank_xi:>7} {r.corank_zeta:>9}{flag}")
        lines.append(f"verdict: {'true' if self.holds else 'false'}")
        return lines


def james_verdict(grams: dict, e: int, ell: int, t: WeylType) -> JamesVerdict:
    """Compare radical dimensions over GF(ell^k) and over Q(zeta_2e) for every label."""
    if not is_e_regular(t, e, ell):
        raise NotERegular(e_regular_reason(t, e, ell))
    rows = []
    for lab, q in grams.items():
        rz = rank_at_zeta(q, e, lab)
        rm = rank_at_modular(q, e, ell, t, lab)
        rows.append(RadicalComparison(lab, rz.dim, rm.corank, rz.corank))
    return JamesVerdict(e, ell, rows, all(r.equal for r in rows))
