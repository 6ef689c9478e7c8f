"""On-disk cache of Gram matrices, keyed by type, label and the W-graph text."""

from __future__ import annotations

import hashlib
import logging
import os
from pathlib import Path

from .formats import FormatError, format_gram, format_wgraph, parse_gram
from .gram import GramMatrix, verify_invariance
from .wgraph import GenMatrices, WGraph

ENV_VAR = "HECKEMOD_CACHE"

log = logging.getLogger(__name__)


def wgraph_digest(g: WGraph) -> str:
    return hashlib.sha256(format_wgraph(g).encode()).hexdigest()


class GramCache:
    def __init__(self, directory):
        self.directory = Path(directory)

    @classmethod
    def from_env(cls) -> "GramCache | None":
        d = os.environ.get(ENV_VAR)
        return cls(d) if d else None

    def path(self, g: WGraph) -> Path:
        key = f"{g.weyl.name}\0{g.label.name}\0{wgraph_digest(g)}"
        return self.directory / (hashlib.sha256(key.encode()).hexdigest()[:32] + ".gram")

    def load(self, g: WGraph, m: GenMatrices) -> GramMatrix | None:
        """Cached matrix, or ``None`` on a miss or when the stored matrix fails the invariance check."""
        p = self.path(g)
        if not p.exists():
            return None
        try:
            type_name, label, Q = parse_gram(p.read_text())
        except (FormatError, ValueError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", p, exc)
            return None
        if type_name != g.weyl.name or label != g.label.name or len(Q) != m.dim:
            return None
        if not verify_invariance(Q, m):
            log.warning("cache entry %s fails the invariance check, recomputing", p)
            return None
        return GramMatrix(label, Q, {"method": "cache"})

    def store(self, g: WGraph, q: GramMatrix) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(g)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(format_gram(q.Q, g.weyl.name, g.label.name))
        tmp.replace(p)
        return p
