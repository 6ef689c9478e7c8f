import random
from fractions import Fraction

import pytest

from heckemod import data
from heckemod.gram import (
    GramMatrix,
    NotSymmetric,
    SolutionSpaceNotOneDim,
    TooLarge,
    check_gram,
    default_primes,
    det_factor_check,
    find_parabolic_witness,
    gram_standard_base,
    normalize_gram,
    reconstruct_gram_modular,
    solve_gram_direct,
    spin_standard_basis,
    standard_base_gram,
    verify_invariance,
)
from heckemod.rings import LaurentPoly, NoReconstruction
from heckemod.rings import linalg
from heckemod.rings.finite_field import field
from heckemod.specrank import rank_at_zeta
from heckemod.weyl import IrrLabel, weyl_type
from heckemod.wgraph import WGraph, build_generator_matrices, word_matrix

L = LaurentPoly
v = L.gen()
G2 = weyl_type("G2")


def const(c):
    return L.const(c)


# -- normalization --------------------------------------------------------------


def test_normalize_one_by_one():
    # the gcd of the entries is removed entirely, so every 1x1 form becomes [1]
    assert normalize_gram([[6 * v**2 + 6]]).Q == [[const(1)]]
    assert normalize_gram([[v**-1 + v]]).Q == [[const(1)]]
    assert normalize_gram([[Fraction(-3, 7)]]).Q == [[const(1)]]


def test_normalize_two_by_two():
    Qrp = [[v**2 + 1, -v], [-v, v**2 + 1]]
    raw = [[6 * x * v**-3 for x in row] for row in Qrp]
    assert normalize_gram(raw).Q == Qrp
    neg = [[-x for x in row] for row in Qrp]
    assert normalize_gram(neg).Q == Qrp
    # a common polynomial factor goes as well
    assert normalize_gram([[x * (v + 2) for x in row] for row in Qrp]).Q == Qrp


def test_normalize_flips_negated_table(table3):
    neg = [[-x for x in row] for row in table3]
    assert normalize_gram(neg).Q == table3


def test_normalize_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        normalize_gram([[const(1), const(2)], [const(3), const(4)]])


# -- direct solve -----------------------------------------------------------------


def test_direct_trivial(g2_grams):
    assert g2_grams["1"].Q == [[const(1)]]
    assert g2_grams["eps"].Q == [[const(1)]]


def test_direct_e6_matches_table(e6_gram, table3):
    Q = e6_gram.Q
    sign = 1 if Q[0][0] == table3[0][0] else -1
    assert all(Q[i][j] == sign * table3[i][j] for i in range(10) for j in range(10))
    assert sign == 1
    assert Q[0][0] == v**6 + 3 * v**4 + 3 * v**2 + 1
    assert Q[0][3] == -(v**5) - 2 * v**3 - v


def test_direct_g2_two_dimensional(g2_grams):
    assert g2_grams["r'"].Q == [[v**2 + 1, -v], [-v, v**2 + 1]]
    assert g2_grams["r"].Q == [[3 * v**2 + 3, -3 * v], [-3 * v, v**2 + 1]]
    assert [rank_at_zeta(g2_grams["r'"], e).rank for e in (2, 3, 6)] == [2, 1, 2]


def test_direct_rejects_reducible():
    g = WGraph(G2, IrrLabel("sum", 2), [("x", {1}), ("y", {2})], [])
    with pytest.raises(SolutionSpaceNotOneDim):
        solve_gram_direct(build_generator_matrices(g))


def test_direct_size_guard():
    t = weyl_type("A1")
    g = WGraph(t, IrrLabel("big", 129), [(f"n{i}", set()) for i in range(129)], [])
    with pytest.raises(TooLarge):
        solve_gram_direct(build_generator_matrices(g))


# -- parabolic witness and standard base -------------------------------------------


def test_witness_examples(g2_gens, e6_graph, e6_gens):
    w = find_parabolic_witness(g2_gens["eps"])
    assert (w.subset, w.kind, w.node) == ((1, 2), "sign", 0)
    w = find_parabolic_witness(g2_gens["1"])
    assert (w.subset, w.kind, w.node) == ((1, 2), "trivial", 0)
    w = find_parabolic_witness(e6_gens)
    assert w.kind == "sign" and w.subset == (1, 2, 3, 5, 6)
    assert w.node == e6_graph.index("12356")
    assert e6_graph.tau(w.node) == {1, 2, 3, 5, 6}


def test_spin_examples(g2_gens, e6_gens):
    K = linalg.rational_function_field()
    words, vecs = spin_standard_basis(g2_gens["1"], [K(1)], K)
    assert words == [()]
    w = find_parabolic_witness(g2_gens["r'"])
    assert len(w.words) == 2 and len(w.words[1]) == 1
    w = find_parabolic_witness(e6_gens)
    assert len(w.words) == 10 and w.words[0] == ()
    words, vecs = spin_standard_basis(e6_gens, w.seed, K)
    assert linalg.rank(vecs, K) == 10


def test_standard_base_sign_rep(g2_gens):
    m = g2_gens["eps"]
    Qt = standard_base_gram(m, find_parabolic_witness(m))
    assert len(Qt) == 1 and Qt[0][0]


def test_standard_base_e6_over_gf101(e6_gens, table3):
    F = field(101)
    w = find_parabolic_witness(e6_gens)
    Qt = standard_base_gram(e6_gens, w, F, F(3))
    T = [[F(int(x.evaluate(Fraction(3)) % 101)) for x in row] for row in table3]
    i, j = next((i, j) for i in range(10) for j in range(10) if T[i][j])
    c = Qt[i][j] / T[i][j]
    assert c
    assert all(Qt[a][b] == c * T[a][b] for a in range(10) for b in range(10))


def test_standard_base_over_field_of_fractions(e6_gens, e6_gram):
    assert gram_standard_base(e6_gens) == e6_gram


# -- modular reconstruction ---------------------------------------------------------


def test_modular_trivial(g2_gens):
    assert reconstruct_gram_modular(g2_gens["1"]).Q == [[const(1)]]


@pytest.mark.parametrize("label", ["r", "r'"])
def test_modular_matches_direct_g2(g2_gens, g2_grams, label):
    assert reconstruct_gram_modular(g2_gens[label]).Q == g2_grams[label].Q


def test_modular_matches_direct_e6(e6_gens, e6_gram):
    q = reconstruct_gram_modular(e6_gens)
    assert q.Q == e6_gram.Q
    assert q.certificate["method"] == "modular"


def test_modular_tiny_plan_fails(g2_gens, e6_gens):
    with pytest.raises(NoReconstruction):
        reconstruct_gram_modular(e6_gens, plan=[(default_primes(1)[0], [2, 3, 4])])
    with pytest.raises(NoReconstruction):
        reconstruct_gram_modular(g2_gens["r"], max_primes=1, max_points=2, initial_points=2)


# -- invariants of every computed form ---------------------------------------------


def _all_grams(g2_grams, e6_gram):
    return list(g2_grams.items()) + [("10_s", e6_gram)]


def test_every_gram_is_normalized(g2_gens, g2_grams, e6_gens, e6_gram):
    gens = dict(g2_gens, **{"10_s": e6_gens})
    for lab, q in _all_grams(g2_grams, e6_gram):
        assert check_gram(q, gens[lab]) == [], lab


def test_det_factor_check_on_every_gram(g2_grams, e6_gram):
    for lab, q in _all_grams(g2_grams, e6_gram):
        t = weyl_type("E6") if lab == "10_s" else G2
        rep = det_factor_check(q, t)
        assert rep.ok, (lab, rep.describe())


def test_det_factor_examples():
    G = data.g2_cellular_grams()
    rep = det_factor_check(G["r'"], G2)
    assert rep.ok and rep.content == 4 and rep.content_primes == [2]
    assert rep.cyclotomic_factors == {3: 1, 6: 1}
    assert det_factor_check([[const(1)]], G2).ok
    assert det_factor_check(G["eps"], G2).ok
    # 5 is good for G2, so a content of 5 is a violation
    bad = det_factor_check([[const(5)]], G2)
    assert not bad.ok and "5" in bad.describe()


def test_random_word_invariance(g2_gens, g2_grams, e6_gens, e6_gram):
    rng = random.Random(20240601)
    gens = dict(g2_gens, **{"10_s": e6_gens})
    for lab, q in _all_grams(g2_grams, e6_gram):
        m = gens[lab]
        for _ in range(20):
            w = tuple(rng.choice(m.weyl.generators) for _ in range(rng.randint(1, 8)))
            Mw = word_matrix(m, w)
            Mw_inv = word_matrix(m, tuple(reversed(w)))
            assert linalg.matmul(q.Q, Mw_inv) == linalg.matmul(linalg.transpose(Mw), q.Q)


def test_verify_invariance_detects_wrong_matrix(g2_gens, g2_grams):
    assert verify_invariance(g2_grams["r"], g2_gens["r"])
    assert not verify_invariance(g2_grams["r'"], g2_gens["r"])
    assert isinstance(g2_grams["r"], GramMatrix)
