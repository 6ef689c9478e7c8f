import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckemod import data
from heckemod.rings import LaurentPoly, cyclotomic_field, det_fraction_free
from heckemod.rings import linalg
from heckemod.rings.finite_field import field
from heckemod.weyl import IrrLabel, _mul, _reflection, enumerate_elements, weyl_type
from heckemod.wgraph import (
    U,
    V,
    MalformedWGraph,
    WGraph,
    apply_word,
    build_generator_matrices,
    quadratic_holds,
    specialize_generators,
    specialized_relations_hold,
    trace,
    verify_representation,
    word_matrix,
)

G2 = weyl_type("G2")
FIXTURES = ["g2_trivial", "g2_eps1", "g2_eps2", "g2_r", "g2_rprime", "g2_sign", "e6_10s"]


def one_node(t, I):
    return WGraph(t, IrrLabel("x", 1), [("x", I)], [])


def test_trivial_and_sign_generators():
    m = build_generator_matrices(one_node(G2, set()))
    assert all(M == [[U]] for M in m.mats.values())
    m = build_generator_matrices(one_node(G2, {1, 2}))
    assert all(M == [[-LaurentPoly.const(1)]] for M in m.mats.values())


def test_e6_column_pattern(e6_graph, e6_gens):
    j = e6_graph.index("2146")
    for s in range(1, 7):
        col = [row[j] for row in e6_gens.mats[s]]
        if s in {1, 2, 4, 6}:
            assert col[j] == -1 and all(not c for i, c in enumerate(col) if i != j)
        else:
            assert col[j] == U
            for i, c in enumerate(col):
                if i == j:
                    continue
                x = e6_graph.nodes[i][0]
                want = V * e6_graph.mu(x, "2146") if s in e6_graph.tau(i) else LaurentPoly()
                assert c == want


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_define_representations(name):
    m = build_generator_matrices(data.load_wgraph(name))
    rep = verify_representation(m)
    assert rep.ok, rep.describe()


def _g2_pair(mu_xy, mu_yx):
    return WGraph(G2, IrrLabel("two", 2), [("x", {1}), ("y", {2})], [("x", "y", mu_xy), ("y", "x", mu_yx)])


def test_g2_braid_search():
    # brute force over nonzero weights in [-4, 4]: the m=6 braid relation holds
    # exactly when the product of the two weights is 1 or 3
    passing = set()
    for a in range(-4, 5):
        for b in range(-4, 5):
            if a and b and verify_representation(build_generator_matrices(_g2_pair(a, b))).ok:
                passing.add((a, b))
    assert passing == {(a, b) for a in range(-4, 5) for b in range(-4, 5) if a * b in (1, 3)}
    rep = verify_representation(build_generator_matrices(_g2_pair(1, 2)))
    assert not rep.ok and rep.relation == "braid" and rep.generators == (1, 2)


def test_corrupted_e6_graph_fails_braid(e6_graph):
    edges = list(e6_graph.edges)
    x, y, mu = edges[0]
    edges[0] = (x, y, -mu)
    bad = WGraph(e6_graph.weyl, e6_graph.label, e6_graph.nodes, edges)
    rep = verify_representation(build_generator_matrices(bad))
    assert not rep.ok
    assert rep.relation == "braid" and len(rep.generators) == 2
    assert "braid relation fails for generators" in rep.describe()


def test_apply_word(g2_gens):
    m = g2_gens["r"]
    I = [[LaurentPoly.const(int(i == j)) for j in range(2)] for i in range(2)]
    assert apply_word(m, (), I) == I
    assert apply_word(m, (1,), I) == m.mats[1]
    assert apply_word(m, (1, 2), I) == linalg.matmul(m.mats[1], m.mats[2])
    vec = [LaurentPoly.const(1), LaurentPoly()]
    assert apply_word(m, (2, 1), vec) == linalg.matvec(m.mats[2], linalg.matvec(m.mats[1], vec))
    with pytest.raises(linalg.DimensionMismatch):
        apply_word(m, (1,), [LaurentPoly.const(1)] * 3)


def _dihedral_character(k, word):
    # the 2-dimensional representation where s1 s2 rotates by 2 pi k / 6
    if len(word) % 2:
        return 0
    return round(2 * math.cos(math.pi * k * (len(word) // 2) / 3))


def test_characters_at_v_equal_one(g2_gens):
    els = enumerate_elements(G2)
    for w in els.words:
        refl = ((1, 0), (0, 1))
        for s in w:
            refl = _mul(refl, _reflection(G2, s))
        chi_refl = refl[0][0] + refl[1][1]
        chi_r = trace(word_matrix(g2_gens["r"], w)).evaluate(1)
        chi_rp = trace(word_matrix(g2_gens["r'"], w)).evaluate(1)
        assert chi_r == chi_refl == _dihedral_character(1, w)
        assert chi_rp == _dihedral_character(2, w)
        assert trace(word_matrix(g2_gens["1"], w)).evaluate(1) == 1
        assert trace(word_matrix(g2_gens["eps"], w)).evaluate(1) == (-1) ** len(w)


def test_specialize_at_one_gives_group(g2_gens):
    Q = linalg.QQ
    for m in g2_gens.values():
        mats = specialize_generators(m, Fraction(1), Q)
        for M in mats.values():
            assert linalg.matmul(M, M) == linalg.identity(m.dim, Q)
        assert specialized_relations_hold(mats, G2, Fraction(1), Q)


def test_specialize_e6_at_zeta8(e6_gens):
    K = cyclotomic_field(8)
    z = K.zeta()
    mats = specialize_generators(e6_gens, z, K)
    assert specialized_relations_hold(mats, e6_gens.weyl, z * z, K)


def test_specialize_into_gf13(g2_gens):
    F = field(13)
    theta = F.canonical_root_of_unity(12)
    assert theta.multiplicative_order() == 12
    assert (theta * theta).multiplicative_order() == 6
    for m in g2_gens.values():
        mats = specialize_generators(m, theta, F)
        assert specialized_relations_hold(mats, G2, theta * theta, F)


@st.composite
def random_wgraphs(draw):
    t = weyl_type(draw(st.sampled_from(["G2", "A3", "B3"])))
    d = draw(st.integers(1, 5))
    nodes = [(f"n{i}", draw(st.sets(st.sampled_from(t.generators)))) for i in range(d)]
    edges = []
    for i in range(d):
        for j in range(d):
            if i != j and draw(st.booleans()):
                edges.append((f"n{i}", f"n{j}", draw(st.integers(-3, 3).filter(bool))))
    return WGraph(t, IrrLabel("rand", d), nodes, edges)


@settings(max_examples=60, deadline=None)
@given(random_wgraphs())
def test_quadratic_relation_always_holds(g):
    m = build_generator_matrices(g)
    for s, M in m.mats.items():
        assert quadratic_holds(M, m.dim)
        k = sum(1 for i in range(m.dim) if s in g.tau(i))
        assert det_fraction_free(M) == LaurentPoly.monomial(2 * (m.dim - k), (-1) ** k)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIXTURES[:6]), st.sampled_from([(7, 3), (13, 5), (31, 2), (101, 17)]))
def test_verified_representations_specialize(name, pa):
    p, a = pa
    m = build_generator_matrices(data.load_wgraph(name))
    F = field(p)
    theta = F(a)
    assert specialized_relations_hold(specialize_generators(m, theta, F), m.weyl, theta * theta, F)


@pytest.mark.parametrize(
    "nodes,edges,dim",
    [
        ([("a", set()), ("a", set())], [], 2),
        ([("a", {7})], [], 1),
        ([("a", set())], [], 2),
        ([("a", set()), ("b", {1})], [("a", "c", 1)], 2),
        ([("a", set()), ("b", {1})], [("a", "a", 1)], 2),
        ([("a", set()), ("b", {1})], [("a", "b", 0)], 2),
        ([("a", set()), ("b", {1})], [("a", "b", 1), ("a", "b", 2)], 2),
    ],
)
def test_malformed_wgraphs(nodes, edges, dim):
    with pytest.raises(MalformedWGraph):
        WGraph(G2, IrrLabel("bad", dim), nodes, edges)
