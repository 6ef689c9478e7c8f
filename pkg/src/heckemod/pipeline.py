"""The full James pipeline for a bundled type: Gram matrices, specialized
ranks, chopped modules, decomposition and adjustment matrices, blocks and
the final verdict."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import data
from .blocks import (
    AdjustmentMatrix,
    BlockPartition,
    JamesVerdict,
    adjustment_matrix,
    block_defects,
    block_structure_problems,
    brauer_blocks,
    james_verdict,
)
from .cache import GramCache
from .gram import GramMatrix, gram_standard_base, reconstruct_gram_modular, solve_gram_direct
from .meataxe import DecompMatrix, decomposition_matrix, fmodule_from_generators, head_is_simple, identity_decomposition
from .rings.finite_field import is_prime
from .schur import schur_elements, semisimple_at
from .specrank import NotERegular, bad_prime_set, dim_simple_table, modular_root, rank_at_modular, rank_at_zeta
from .weyl import e_regular_reason, is_e_regular, weyl_type
from .wgraph import WGraph, build_generator_matrices

log = logging.getLogger(__name__)

METHODS = {
    "direct": solve_gram_direct,
    "standard-base": gram_standard_base,
    "modular": reconstruct_gram_modular,
}

SURROGATE_START = 50


class InconsistentInvariants(ArithmeticError):
    pass


def compute_gram(g: WGraph, method: str = "direct", cache: GramCache | None = None) -> GramMatrix:
    m = build_generator_matrices(g)
    if cache is not None:
        hit = cache.load(g, m)
        if hit is not None:
            return hit
    q = METHODS[method](m)
    if cache is not None:
        cache.store(g, q)
    return q


def _gram_task(args):
    g, method, cache_dir = args
    return compute_gram(g, method, GramCache(cache_dir) if cache_dir else None)


def compute_grams(wgraphs: dict, method: str = "direct", cache: GramCache | None = None, jobs: int = 1) -> dict:
    """Gram matrices for every label; ``jobs > 1`` spreads the labels over worker processes."""
    labels = list(wgraphs)
    cache_dir = str(cache.directory) if cache is not None else None
    tasks = [(wgraphs[lab], method, cache_dir) for lab in labels]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_gram_task, tasks))
    else:
        results = [_gram_task(t) for t in tasks]
    return dict(zip(labels, results))


def surrogate_prime(grams: dict, e: int, t, start: int = SURROGATE_START) -> int:
    """Least prime above ``start``, congruent to 1 mod 2e, e-regular and outside every candidate set."""
    avoid = set()
    for lab, q in grams.items():
        avoid.update(bad_prime_set(q, e, t, lab).candidates)
    p = start + 1
    while True:
        if is_prime(p) and p % (2 * e) == 1 and is_e_regular(t, e, p) and p not in avoid:
            return p
        p += 1


def modules_at(gens: dict, e: int, ell: int) -> dict:
    F, theta = modular_root(e, ell)
    return {lab: fmodule_from_generators(m, F, theta, lab) for lab, m in gens.items()}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class JamesRun:
    type_name: str
    e: int
    ell: int
    seed: int
    semisimple: bool
    d_xi: DecompMatrix
    d_zeta: DecompMatrix | None
    ell0: int | None
    adjustment: AdjustmentMatrix
    blocks: BlockPartition
    verdict: JamesVerdict | None
    checks: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.ok for c in self.checks) and (self.verdict is None or self.verdict.holds)

    def report(self) -> str:
        out = [f"type {self.type_name}  e={self.e}  ell={self.ell}  seed={self.seed}"]
        if self.semisimple:
            out.append("semisimple: Phi_e does not divide the Poincare polynomial, D is the identity")
        out.append("")
        out.append(f"{'simple':<8} {'a':>3} {'dim L':>6}")
        for lab, a, d in self.d_xi.table():
            out.append(f"{lab:<8} {a:>3} {d:>6}")
        out.append("")
        out.append("decomposition matrix (rows W, columns L):")
        out.append(" " * 9 + " ".join(f"{c:>5}" for c in self.d_xi.cols))
        for lam, row in zip(self.d_xi.rows, self.d_xi.entries):
            out.append(f"{lam:<8} " + " ".join(f"{x:>5}" for x in row))
        out.append("")
        if self.ell0 is not None:
            out.append(f"root-of-unity surrogate: ell0={self.ell0}")
        out.append("adjustment matrix: " + ("identity" if self.adjustment.is_identity() else "NOT the identity"))
        if not self.adjustment.is_identity():
            for nu, row in zip(self.adjustment.rows, self.adjustment.entries):
                out.append(f"  {nu:<8} " + " ".join(str(x) for x in row))
        out.append("")
        out.extend(self.blocks.report())
        out.append("")
        if self.verdict is not None:
            out.extend(self.verdict.report()[:-1])
            out.append("")
        for c in self.checks:
            line = f"check {c.name}: {'ok' if c.ok else 'FAILED'}"
            if c.detail:
                line += f" ({c.detail})"
            out.append(line)
        out.append(f"verdict: {'true' if self.holds else 'false'}")
        return "\n".join(out) + "\n"


def invariants(gens: dict, t, irr: dict):
    """Schur elements, cross-checked against the bundled invariant table."""
    schur = schur_elements(gens, t)
    for lab, s in schur.items():
        ref = irr.get(lab)
        if ref is None:
            continue
        if (ref.a is not None and ref.a != s.a) or (ref.f is not None and ref.f != s.f):
            raise InconsistentInvariants(f"{lab}: computed a={s.a}, f={s.f}; table has a={ref.a}, f={ref.f}")
    return schur


def run_james(
    type_name: str,
    e: int,
    ell: int,
    seed: int = 0,
    method: str = "direct",
    cache: GramCache | None = None,
    jobs: int = 1,
) -> JamesRun:
    t = weyl_type(type_name)
    if not is_e_regular(t, e, ell):
        raise NotERegular(e_regular_reason(t, e, ell))
    wgraphs = data.type_dataset(t.name)
    gens = {lab: build_generator_matrices(g) for lab, g in wgraphs.items()}
    schur = invariants(gens, t, data.irr_table(t.name))
    a_values = {lab: s.a for lab, s in schur.items()}
    checks = []

    if semisimple_at(t, e):
        dims = {lab: m.dim for lab, m in gens.items()}
        D = identity_decomposition(list(gens), a_values, dims, e, ell)
        A = AdjustmentMatrix(list(D.cols), list(D.cols), [row[:] for row in D.entries])
        blocks = block_defects(brauer_blocks(D), schur, e)
        checks.append(_structure_check(blocks, D))
        return JamesRun(t.name, e, ell, seed, True, D, None, None, A, blocks, None, checks)

    grams = compute_grams(wgraphs, method, cache, jobs)
    d_xi = decomposition_matrix(modules_at(gens, e, ell), a_values, e, ell, seed)
    ell0 = surrogate_prime(grams, e, t)
    d_zeta = decomposition_matrix(modules_at(gens, e, ell0), a_values, e, ell0, seed)
    A = adjustment_matrix(d_xi, d_zeta)
    blocks = block_defects(brauer_blocks(d_xi), schur, e)
    verdict = james_verdict(grams, e, ell, t)

    checks.append(
        Check(
            "simple count",
            len(d_xi.cols) == len(d_zeta.cols),
            f"{len(d_xi.cols)} simples at ell={ell}, {len(d_zeta.cols)} at the root of unity",
        )
    )
    bad = [mu for mu in d_xi.cols if rank_at_modular(grams[mu], e, ell, t, mu).rank != d_xi.simple_dims[mu]]
    checks.append(Check("dim L equals modular Gram rank", not bad, ", ".join(bad)))
    bad = [mu for mu in d_zeta.cols if rank_at_zeta(grams[mu], e, mu).rank != d_zeta.simple_dims[mu]]
    checks.append(Check("surrogate dim L equals exact Gram rank", not bad, ", ".join(bad)))
    checks.append(_head_check(d_xi, modules_at(gens, e, ell)))
    checks.append(_structure_check(blocks, d_xi))
    checks.append(Check("adjustment matrix is the identity", A.is_identity()))
    cellular = _cellular_table(t.name, e, a_values)
    if cellular is not None:
        checks.append(Check("table matches the cellular Gram ranks", cellular == d_xi.table()))
    return JamesRun(t.name, e, ell, seed, False, d_xi, d_zeta, ell0, A, blocks, verdict, checks)


def _structure_check(blocks: BlockPartition, d: DecompMatrix) -> Check:
    problems = block_structure_problems(blocks, d)
    return Check("block structure", not problems, "; ".join(problems))


def _head_check(d: DecompMatrix, modules: dict) -> Check:
    bad = []
    for j, mu in enumerate(d.cols):
        ok, head = head_is_simple(modules[mu], d.simples)
        if not ok or head is not d.simples[j]:
            bad.append(mu)
    return Check("cell modules of simple labels have simple head", not bad, ", ".join(bad))


def _cellular_table(type_name: str, e: int, a_values: dict):
    if type_name != "G2":
        return None
    return dim_simple_table(data.g2_cellular_grams(), e, a_values)
