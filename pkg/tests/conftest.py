import pytest

from heckemod import data
from heckemod.gram import solve_gram_direct
from heckemod.wgraph import build_generator_matrices


@pytest.fixture(scope="session")
def g2_graphs():
    return data.g2_wgraphs()


@pytest.fixture(scope="session")
def g2_gens(g2_graphs):
    return {lab: build_generator_matrices(g) for lab, g in g2_graphs.items()}


@pytest.fixture(scope="session")
def g2_grams(g2_gens):
    return {lab: solve_gram_direct(m) for lab, m in g2_gens.items()}


@pytest.fixture(scope="session")
def g2_a(g2_graphs):
    return {lab: g.label.a for lab, g in g2_graphs.items()}


@pytest.fixture(scope="session")
def e6_graph():
    return data.load_wgraph("e6_10s")


@pytest.fixture(scope="session")
def e6_gens(e6_graph):
    return build_generator_matrices(e6_graph)


@pytest.fixture(scope="session")
def e6_gram(e6_gens):
    return solve_gram_direct(e6_gens)


@pytest.fixture(scope="session")
def table3():
    return data.e6_10s_table()


# -- acceptance summary -------------------------------------------------------------

_acceptance_key = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_acceptance_key] = {}


@pytest.fixture
def acceptance(request):
    """``record(criterion, ok, detail, part=None)`` for the acceptance summary."""
    results = request.config.stash[_acceptance_key]

    def record(criterion: int, ok: bool, detail: str = "", part: str | None = None):
        results.setdefault(criterion, []).append((part, bool(ok), detail))

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_acceptance_key, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        parts = results[criterion]
        ok = all(p[1] for p in parts)
        if len(parts) == 1 and parts[0][0] is None:
            detail = parts[0][2]
        else:
            detail = "; ".join(f"({p}) {'ok' if good else 'FAILED'}: {d}" for p, good, d in sorted(parts, key=lambda x: x[0] or ""))
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
