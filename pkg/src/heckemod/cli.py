"""Command line interface.

Exit codes: 0 success, 1 mathematical failure (a relation, check or verdict
is false), 2 usage or input error, 3 a resource budget was exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, data
from .blocks import block_defects, block_structure_problems, brauer_blocks
from .cache import GramCache
from .formats import FormatError, format_gram, format_laurent, parse_gram, parse_wgraph
from .gram import (
    GramMatrix,
    NoParabolicType,
    SolutionSpaceNotOneDim,
    TooLarge,
    VerificationFailed,
    check_gram,
    default_primes,
    reconstruct_gram_modular,
)
from .meataxe import NonSplit, Stalled, chop, decomposition_matrix, fmodule_from_generators
from .pipeline import METHODS, compute_gram, invariants, modules_at, run_james
from .rings.finite_field import NoRoot
from .rings.reconstruct import NoReconstruction
from .specrank import NotERegular, bad_prime_set, modular_root, rank_at_modular, rank_at_zeta
from .weyl import MissingAInvariant, TooLarge as TooManyElements, e_regular_reason, is_e_regular, weyl_type
from .wgraph import MalformedWGraph, build_generator_matrices, verify_representation

OK, MATH_FAILURE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_wgraph(name: str):
    try:
        path = data.resolve_input(name, ".wg")
    except FileNotFoundError:
        raise UsageError(f"no such file or bundled W-graph: {name}") from None
    g = parse_wgraph(path.read_text())
    irr = data.irr_table(g.weyl.name)
    if g.label.name in irr:
        g.label = irr[g.label.name]
    return g


def _load_gram(name: str, cache, method: str = "direct"):
    """A Gram matrix from a gram file, or computed from a W-graph file or fixture."""
    p = Path(name)
    if p.suffix == ".gram" and p.exists():
        type_name, label, Q = parse_gram(p.read_text())
        return weyl_type(type_name), GramMatrix(label, Q, {"method": "file"})
    g = _load_wgraph(name)
    return g.weyl, compute_gram(g, method, cache)


def _cache(args):
    return None if args.no_cache else GramCache.from_env()


def cmd_verify_wgraph(args) -> int:
    g = _load_wgraph(args.path)
    rep = verify_representation(build_generator_matrices(g))
    print(f"{g.weyl.name} {g.label.name} (dimension {g.dim}): {rep.describe()}")
    return OK if rep.ok else MATH_FAILURE


def cmd_gram(args) -> int:
    g = _load_wgraph(args.path)
    m = build_generator_matrices(g)
    if args.method == "modular":
        kw = {"max_primes": args.max_primes, "max_points": args.max_points}
        kw["initial_points"] = min(16, args.max_points)
        if args.plan_primes:
            pts = list(range(2, 2 + args.max_points))
            kw = {"plan": [(q, pts) for q in default_primes(args.plan_primes)]}
        cache = _cache(args)
        q = cache.load(g, m) if cache else None
        if q is None:
            q = reconstruct_gram_modular(m, **kw)
            if cache:
                cache.store(g, q)
    else:
        q = compute_gram(g, args.method, _cache(args))
    problems = check_gram(q, m)
    text = format_gram(q.Q, g.weyl.name, g.label.name)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    if problems:
        for p in problems:
            print(f"check failed: {p}", file=sys.stderr)
        return MATH_FAILURE
    return OK


def cmd_rank(args) -> int:
    t, q = _load_gram(args.path, _cache(args))
    if args.ell is None:
        r = rank_at_zeta(q, args.e)
    else:
        r = rank_at_modular(q, args.e, args.ell, t)
    print(f"{q.label} e={args.e} over {r.target}: rank {r.rank} of {r.dim}, corank {r.corank}")
    if r.rank and args.show_rows:
        for i in r.pivot_rows:
            print("row " + str(i + 1) + ": " + ", ".join(str(x) for x in r.matrix[i]))
    return OK


def cmd_badprimes(args) -> int:
    t, q = _load_gram(args.path, _cache(args))
    print(bad_prime_set(q, args.e, t).describe())
    return OK


def _check_regular(t, e, ell):
    if not is_e_regular(t, e, ell):
        raise NotERegular(e_regular_reason(t, e, ell))


def cmd_chop(args) -> int:
    g = _load_wgraph(args.path)
    m = build_generator_matrices(g)
    _check_regular(g.weyl, args.e, args.ell)
    F, theta = modular_root(args.e, args.ell)
    mod = fmodule_from_generators(m, F, theta)
    cs = chop(mod, seed=args.seed)
    print(f"{g.label.name} at e={args.e} over {F.name}: {len(cs)} distinct constituents")
    for c in cs:
        print(f"  constituent {c.id}: dimension {c.dim}, multiplicity {c.multiplicity}")
    return OK


def cmd_blocks(args) -> int:
    t = weyl_type(args.type)
    _check_regular(t, args.e, args.ell)
    wgraphs = data.type_dataset(t.name)
    gens = {lab: build_generator_matrices(g) for lab, g in wgraphs.items()}
    schur = invariants(gens, t, data.irr_table(t.name))
    a_values = {lab: s.a for lab, s in schur.items()}
    D = decomposition_matrix(modules_at(gens, args.e, args.ell), a_values, args.e, args.ell, args.seed)
    P = block_defects(brauer_blocks(D), schur, args.e)
    print(f"{t.name} e={args.e} ell={args.ell}")
    for line in P.report():
        print(line)
    for i, b in enumerate(P.blocks, 1):
        print(f"block {i}:")
        for lab, a, d in D.table():
            if lab in b:
                print(f"  {lab:<8} {a:>3} {d:>4}")
    problems = block_structure_problems(P, D)
    for p in problems:
        print(f"check failed: {p}")
    return MATH_FAILURE if problems else OK


def cmd_schur(args) -> int:
    t = weyl_type(args.type)
    wgraphs = data.type_dataset(t.name)
    gens = {lab: build_generator_matrices(g) for lab, g in wgraphs.items()}
    schur = invariants(gens, t, data.irr_table(t.name))
    print(f"{'label':<8} {'a':>3} {'f':>4}  c (in u)")
    for lab, s in schur.items():
        print(f"{lab:<8} {s.a:>3} {str(s.f):>4}  {format_laurent(s.c)}")
    return OK


def cmd_james(args) -> int:
    run = run_james(args.type, args.e, args.ell, args.seed, args.method, _cache(args), args.jobs)
    sys.stdout.write(run.report())
    return OK if run.holds else MATH_FAILURE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckemod", description="Decomposition numbers of Hecke algebras from W-graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="maximum number of worker processes")
    p.add_argument("--no-cache", action="store_true", help="ignore the cache directory")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-wgraph", help="check that a W-graph defines a representation")
    s.add_argument("path", help="W-graph file or bundled fixture name")
    s.set_defaults(func=cmd_verify_wgraph)

    s = sub.add_parser("gram", help="compute the invariant Gram matrix of a W-graph")
    s.add_argument("path")
    s.add_argument("--method", choices=sorted(METHODS), default="direct")
    s.add_argument("--out")
    s.add_argument("--max-primes", type=int, default=8)
    s.add_argument("--max-points", type=int, default=512)
    s.add_argument("--plan-primes", type=int, default=0, help="use a fixed plan with this many primes and --max-points points")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("rank", help="rank of a Gram matrix at a root of unity")
    s.add_argument("path", help="gram file, W-graph file or fixture name")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--ell", type=int, help="work over a finite field of this characteristic")
    s.add_argument("--show-rows", action="store_true")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("badprimes", help="primes where the specialized rank can drop")
    s.add_argument("path")
    s.add_argument("--e", type=int, required=True)
    s.set_defaults(func=cmd_badprimes)

    s = sub.add_parser("chop", help="composition factors of a specialized module")
    s.add_argument("path")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_chop)

    for name, func, help_ in [
        ("james", cmd_james, "full pipeline and verdict for a bundled type"),
        ("blocks", cmd_blocks, "blocks and defects of the decomposition matrix"),
    ]:
        s = sub.add_parser(name, help=help_)
        s.add_argument("--type", required=True)
        s.add_argument("--e", type=int, required=True)
        s.add_argument("--ell", type=int, required=True)
        s.add_argument("--seed", type=int, default=0)
        if name == "james":
            s.add_argument("--method", choices=sorted(METHODS), default="direct")
        s.set_defaults(func=func)

    s = sub.add_parser("schur", help="Schur elements and invariants of a bundled type")
    s.add_argument("--type", required=True)
    s.set_defaults(func=cmd_schur)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except NotERegular as exc:
        print(f"refused: not e-regular: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, FormatError, MalformedWGraph, FileNotFoundError, NoRoot, MissingAInvariant) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except NoReconstruction as exc:
        print(f"budget exhausted: {exc}; raise --max-points or --max-primes", file=sys.stderr)
        return BUDGET
    except (Stalled, TooLarge, TooManyElements) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except (SolutionSpaceNotOneDim, NoParabolicType, VerificationFailed, NonSplit, ArithmeticError) as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return MATH_FAILURE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
