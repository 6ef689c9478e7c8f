import math

import pytest
from hypothesis import given, strategies as st

from heckemod.rings import LaurentPoly, cyclotomic_polynomial
from heckemod.rings.finite_field import prime_factors
from heckemod.weyl import (
    IrrLabel,
    MissingAInvariant,
    Order,
    TooLarge,
    a_order_compare,
    e_regular_reason,
    enumerate_elements,
    is_e_regular,
    poincare_polynomial,
    weyl_type,
)

u = LaurentPoly.gen()

DEGREES = {
    "A1": (2,),
    "A4": (2, 3, 4, 5),
    "B3": (2, 4, 6),
    "C4": (2, 4, 6, 8),
    "D4": (2, 4, 6, 4),
    "D5": (2, 4, 6, 8, 5),
    "G2": (2, 6),
    "F4": (2, 6, 8, 12),
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
}
ORDERS = {"A1": 2, "A4": 120, "B3": 48, "C4": 384, "D4": 192, "D5": 1920, "G2": 12, "F4": 1152,
          "E6": 51840, "E7": 2903040, "E8": 696729600}
BAD = {"A4": set(), "B3": {2}, "D4": {2}, "G2": {2, 3}, "F4": {2, 3}, "E6": {2, 3}, "E7": {2, 3}, "E8": {2, 3, 5}}


@pytest.mark.parametrize("name", sorted(DEGREES))
def test_degrees_and_order(name):
    t = weyl_type(name)
    assert sorted(t.degrees) == sorted(DEGREES[name])
    assert t.order == ORDERS[name] == math.prod(t.degrees)
    assert len(t.degrees) == t.rank


@pytest.mark.parametrize("name", sorted(BAD))
def test_bad_primes(name):
    assert set(weyl_type(name).bad_primes) == BAD[name]


def test_type_parsing():
    assert weyl_type("E_6") == weyl_type("e6")
    with pytest.raises(ValueError):
        weyl_type("G3")
    with pytest.raises(ValueError):
        weyl_type("D3")


def test_coxeter_matrix():
    g2 = weyl_type("G2")
    assert g2.coxeter_entry(1, 2) == 6
    e6 = weyl_type("E6")
    assert e6.coxeter_entry(2, 4) == 3 and e6.coxeter_entry(1, 2) == 2 and e6.coxeter_entry(3, 4) == 3
    f4 = weyl_type("F4")
    assert [f4.coxeter_entry(i, i + 1) for i in (1, 2, 3)] == [3, 4, 3]
    assert weyl_type("B3").coxeter_entry(2, 3) == 4


def test_poincare_examples():
    phi = cyclotomic_polynomial
    assert poincare_polynomial(weyl_type("G2")) == phi(2) ** 2 * phi(3) * phi(6)
    assert poincare_polynomial(weyl_type("A1")) == u + 1
    pf4 = LaurentPoly.const(1)
    for d in (2, 6, 8, 12):
        pf4 = pf4 * (u**d - 1).exact_div(u - 1)
    assert poincare_polynomial(weyl_type("F4")) == pf4


def test_enumeration_examples():
    a1 = enumerate_elements(weyl_type("A1"))
    assert a1.words == [(), (1,)]
    g2 = enumerate_elements(weyl_type("G2"))
    assert len(g2) == 12
    assert [g2.lengths.count(k) for k in range(7)] == [1, 2, 2, 2, 2, 2, 1]
    assert len(enumerate_elements(weyl_type("B2"))) == 8


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "B4", "F4"])
def test_length_generating_function(name):
    t = weyl_type(name)
    els = enumerate_elements(t)
    assert len(els) == t.order
    assert els.length_polynomial() == poincare_polynomial(t)
    keys = [(len(w), w) for w in els.words]
    assert keys == sorted(keys)
    assert len(set(els.words)) == len(els.words)


def test_enumeration_refuses_large_groups():
    with pytest.raises(TooLarge):
        enumerate_elements(weyl_type("E6"))


def test_e_regular_examples():
    g2 = weyl_type("G2")
    assert is_e_regular(g2, 3, 7)
    assert not is_e_regular(g2, 3, 2)
    assert not is_e_regular(weyl_type("E8"), 2, 5)
    assert "bad" in e_regular_reason(g2, 3, 3)
    assert e_regular_reason(g2, 3, 7) is None
    # 2*3 = 6 is a degree of A5 and 3 is good for type A
    assert "divides the degree" in e_regular_reason(weyl_type("A5"), 2, 3)


G2_F = {"1": 1, "eps1": 3, "eps2": 3, "r": 6, "r'": 2, "eps": 1}


@given(st.integers(2, 30), st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23]))
def test_e_regular_never_at_primes_dividing_f(e, ell):
    divisors = {p for f in G2_F.values() for p in prime_factors(f)}
    if ell in divisors:
        assert not is_e_regular(weyl_type("G2"), e, ell)


def test_a_order_examples():
    eps = IrrLabel("eps", 1, 6, 1)
    one = IrrLabel("1", 1, 0, 1)
    r = IrrLabel("r", 2, 1, 6)
    rp = IrrLabel("r'", 2, 1, 2)
    assert a_order_compare(eps, one) is Order.LESS
    assert a_order_compare(one, eps) is Order.GREATER
    assert a_order_compare(r, rp) is Order.INCOMPARABLE
    assert a_order_compare(r, r) is Order.EQUAL
    with pytest.raises(MissingAInvariant):
        a_order_compare(IrrLabel("x", 3), r)


def test_irr_label_validation():
    with pytest.raises(ValueError):
        IrrLabel("x", 0)
    with pytest.raises(ValueError):
        IrrLabel("x", 1, -1)
    with pytest.raises(ValueError):
        IrrLabel("x", 1, 0, 0)
