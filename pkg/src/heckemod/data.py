"""Access to the bundled datasets (G2 complete, E6 10_s)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .formats import parse_gram, parse_irr_table, parse_wgraph
from .weyl import IrrLabel, weyl_type
from .wgraph import WGraph

_ALIASES = {
    "g2_1": "g2_trivial",
    "g2_eps": "g2_sign",
    "g2_r'": "g2_rprime",
    "e6_10_s": "e6_10s",
}

G2_LABELS = ["1", "eps1", "eps2", "r", "r'", "eps"]
_G2_FILES = {"1": "trivial", "eps1": "eps1", "eps2": "eps2", "r": "r", "r'": "rprime", "eps": "sign"}


def fixture_dir() -> Path:
    return Path(str(resources.files("heckemod") / "fixtures"))


def fixture_path(name: str, suffix: str = ".wg") -> Path:
    """Resolve a bundled fixture name such as ``g2_r'`` or ``e6_10s``."""
    base = _ALIASES.get(name, name)
    p = fixture_dir() / (base + suffix)
    if not p.exists():
        raise FileNotFoundError(f"no bundled fixture {name!r}")
    return p


def resolve_input(name_or_path: str, suffix: str = ".wg") -> Path:
    """A filesystem path if it exists, otherwise a bundled fixture."""
    p = Path(name_or_path)
    if p.exists():
        return p
    return fixture_path(name_or_path, suffix)


def load_wgraph(name: str) -> WGraph:
    g = parse_wgraph(fixture_path(name).read_text())
    irr = irr_table(g.weyl.name)
    if g.label.name in irr:
        g.label = irr[g.label.name]
    return g


def irr_table(type_name: str) -> dict:
    """Known invariants keyed by label; empty when no table is bundled."""
    p = fixture_dir() / f"{weyl_type(type_name).name.lower()}.irr"
    if not p.exists():
        return {}
    _, labels = parse_irr_table(p.read_text())
    return {lab.name: lab for lab in labels}


def g2_wgraphs() -> dict:
    """All six G2 W-graphs keyed by label, in the order 1, eps1, eps2, r, r', eps."""
    return {lab: load_wgraph("g2_" + _G2_FILES[lab]) for lab in G2_LABELS}


def g2_cellular_grams() -> dict:
    """The cellular Gram matrices of G2 (reference data, not normalized)."""
    out = {}
    for lab in G2_LABELS:
        _, _, G = parse_gram(fixture_path(f"g2_{_G2_FILES[lab]}_cell", ".gram").read_text())
        out[lab] = G
    return out


def e6_10s_table():
    """The reference Gram matrix of 10_s, in the node order of the bundled W-graph."""
    return parse_gram(fixture_path("e6_10s_table", ".gram").read_text())[2]


def type_dataset(type_name: str) -> dict:
    """Complete W-graph set for a type, if bundled (only G2)."""
    if weyl_type(type_name).name == "G2":
        return g2_wgraphs()
    raise FileNotFoundError(f"no complete W-graph dataset bundled for {type_name}")


def irr_labels(type_name: str) -> list[IrrLabel]:
    return list(irr_table(type_name).values())
