"""Line-based, versioned text formats for W-graphs, Gram matrices and invariant tables.

Every file starts with ``format <kind> <version>``.  Blank lines and text after
``#`` are ignored.  See ``docs/formats.md`` for the grammar.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .rings.laurent import LaurentPoly
from .weyl import IrrLabel, weyl_type
from .wgraph import WGraph

WGRAPH_KIND = "heckemod-wgraph"
GRAM_KIND = "heckemod-gram"
IRR_KIND = "heckemod-irr"
VERSION = 1


class FormatError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _check_header(lines, kind: str):
    try:
        lineno, toks = next(lines)
    except StopIteration:
        raise FormatError("empty file") from None
    if len(toks) != 3 or toks[0] != "format":
        raise FormatError(f"line {lineno}: expected 'format {kind} {VERSION}'")
    if toks[1] != kind:
        raise FormatError(f"line {lineno}: expected a {kind} file, got {toks[1]}")
    if toks[2] != str(VERSION):
        raise FormatError(f"line {lineno}: unsupported {kind} version {toks[2]} (this build reads {VERSION})")


def _header_fields(lines, names):
    out = {}
    for name in names:
        try:
            lineno, toks = next(lines)
        except StopIteration:
            raise FormatError(f"missing header field {name!r}") from None
        if toks[0] != name or len(toks) < 2:
            raise FormatError(f"line {lineno}: expected '{name} <value>'")
        out[name] = toks[1:]
    return out


# -- W-graphs -----------------------------------------------------------------


def parse_wgraph(text: str) -> WGraph:
    lines = _lines(text)
    _check_header(lines, WGRAPH_KIND)
    hdr = _header_fields(lines, ["type", "rank", "label", "dimension"])
    t = weyl_type(hdr["type"][0])
    if int(hdr["rank"][0]) != t.rank:
        raise FormatError(f"rank {hdr['rank'][0]} does not match type {t.name}")
    label = IrrLabel(hdr["label"][0], int(hdr["dimension"][0]))
    nodes, edges = [], []
    for lineno, toks in lines:
        kind = toks[0]
        if kind == "node":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: expected 'node <id> <generators|->'")
            gens = set() if toks[2] == "-" else {int(c) for c in toks[2].split(",")}
            nodes.append((toks[1], gens))
        elif kind == "edge":
            undirected = toks[4:] == ["undirected:", "true"]
            if len(toks) != 4 and not undirected:
                raise FormatError(f"line {lineno}: expected 'edge <x> <y> <mu> [undirected: true]'")
            x, y, mu = toks[1], toks[2], int(toks[3])
            edges.append((x, y, mu))
            if undirected:
                edges.append((y, x, mu))
        else:
            raise FormatError(f"line {lineno}: unknown record {kind!r}")
    try:
        return WGraph(t, label, nodes, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_wgraph(g: WGraph) -> str:
    out = [
        f"format {WGRAPH_KIND} {VERSION}",
        f"type {g.weyl.name}",
        f"rank {g.weyl.rank}",
        f"label {g.label.name}",
        f"dimension {g.dim}",
    ]
    for x, I in g.nodes:
        gens = ",".join(str(s) for s in sorted(I)) if I else "-"
        out.append(f"node {x} {gens}")
    weights = {(x, y): mu for x, y, mu in g.edges}
    done = set()
    for x, y, mu in g.edges:
        if (x, y) in done:
            continue
        if weights.get((y, x)) == mu:
            out.append(f"edge {x} {y} {mu} undirected: true")
            done.add((y, x))
        else:
            out.append(f"edge {x} {y} {mu}")
        done.add((x, y))
    return "\n".join(out) + "\n"


# -- Gram matrices ------------------------------------------------------------


def format_laurent(p: LaurentPoly) -> str:
    if not p:
        return "-"
    return " ".join(f"{e}:{c}" for e, c in sorted(p.terms().items()))


def parse_laurent(tokens) -> LaurentPoly:
    if tokens == ["-"]:
        return LaurentPoly()
    terms = {}
    last = None
    for tok in tokens:
        e, _, c = tok.partition(":")
        e = int(e)
        if last is not None and e <= last:
            raise FormatError("exponents must be strictly ascending")
        last = e
        coeff = Fraction(c)
        terms[e] = int(coeff) if coeff.denominator == 1 else coeff
    return LaurentPoly.from_terms(terms)


def format_gram(Q, type_name: str, label: str) -> str:
    d = len(Q)
    out = [
        f"format {GRAM_KIND} {VERSION}",
        f"type {type_name}",
        f"label {label}",
        f"dimension {d}",
        "normalization content=1 sign=+",
    ]
    for i in range(d):
        for j in range(d):
            out.append(f"{i + 1} {j + 1} {format_laurent(Q[i][j])}")
    return "\n".join(out) + "\n"


def parse_gram(text: str):
    """Returns ``(type_name, label, matrix)``."""
    lines = _lines(text)
    _check_header(lines, GRAM_KIND)
    hdr = _header_fields(lines, ["type", "label", "dimension", "normalization"])
    d = int(hdr["dimension"][0])
    Q = [[None] * d for _ in range(d)]
    for lineno, toks in lines:
        if len(toks) < 3:
            raise FormatError(f"line {lineno}: expected '<row> <col> <entry>'")
        i, j = int(toks[0]) - 1, int(toks[1]) - 1
        if not (0 <= i < d and 0 <= j < d):
            raise FormatError(f"line {lineno}: index out of range")
        if Q[i][j] is not None:
            raise FormatError(f"line {lineno}: entry ({i + 1}, {j + 1}) given twice")
        Q[i][j] = parse_laurent(toks[2:])
    if any(x is None for row in Q for x in row):
        raise FormatError("missing Gram matrix entries")
    return hdr["type"][0], hdr["label"][0], Q


# -- invariant tables ---------------------------------------------------------


def parse_irr_table(text: str):
    """Returns ``(type_name, [IrrLabel, ...])`` in file order."""
    lines = _lines(text)
    _check_header(lines, IRR_KIND)
    hdr = _header_fields(lines, ["type"])
    labels = []
    for lineno, toks in lines:
        if toks[0] != "irr" or len(toks) != 5:
            raise FormatError(f"line {lineno}: expected 'irr <label> <dim> <a|-> <f|->'")
        a = None if toks[3] == "-" else int(toks[3])
        f = None if toks[4] == "-" else int(toks[4])
        labels.append(IrrLabel(toks[1], int(toks[2]), a, f))
    return hdr["type"][0], labels


def format_irr_table(type_name: str, labels) -> str:
    out = [f"format {IRR_KIND} {VERSION}", f"type {type_name}"]
    for lab in labels:
        a = "-" if lab.a is None else lab.a
        f = "-" if lab.f is None else lab.f
        out.append(f"irr {lab.name} {lab.dim} {a} {f}")
    return "\n".join(out) + "\n"


def read_text(path) -> str:
    return Path(path).read_text()
