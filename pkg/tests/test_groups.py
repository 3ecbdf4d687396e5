import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfad.errors import NotAGroup, ParseError
from hopfad.finmod import BudgetExceeded, Finite, orbit_closure
from hopfad.groups import (
    DirectProduct,
    FiniteGroup,
    FreeGroup2,
    Heisenberg,
    InfiniteDihedral,
    IntegerGroup,
    cyclic,
    fc_center_membership,
    fc_center_window,
    group_ad_module,
    parse_group,
    parse_permutation,
    permutation_group,
    small_groups,
)
from hopfad.scalar import QQ

CATALOG = small_groups()
INFINITE = {
    "dinf": (InfiniteDihedral(), 5),
    "heis": (Heisenberg(), 3),
    "free2": (FreeGroup2(), 3),
    "ZxS3": (parse_group("prod:z,S3"), 3),
    "dinfxC2": (parse_group("prod:dinf,C2"), 3),
}


def brute_conjugates(G, g, radius):
    return {G.conj(s, g) for s in G.ball(radius)}


def test_dihedral_oracle_examples():
    D = InfiniteDihedral()
    r = (1, 0)
    r5 = D.mul(D.mul(D.mul(D.mul(r, r), r), r), r)
    c = fc_center_membership(D, r5)
    assert c.finite and c.size == 2 and set(c.conjugates) == {(5, 0), (-5, 0)}
    assert not fc_center_membership(D, (0, 1)).finite


def test_finite_classes_are_bounded_by_order():
    for G in CATALOG.values():
        for g in G.elements:
            c = fc_center_membership(G, g)
            assert c.finite and c.size <= G.order and G.order % c.size == 0


def test_finite_classes_match_brute_force():
    for G in CATALOG.values():
        for g in G.elements:
            assert set(G.conjugacy(g).conjugates) == {G.mul(G.mul(s, g), G.inv(s)) for s in G.elements}


def test_catalog_is_pairwise_distinguished():
    sig = {(G.order, G.order_profile()) for G in CATALOG.values()}
    assert len(sig) == len(CATALOG)
    assert all(G.order <= 12 for G in CATALOG.values())
    assert {G.order for G in CATALOG.values()} == set(range(1, 13))


def test_window_examples():
    assert fc_center_window(FreeGroup2(), 3) == [()]
    H = Heisenberg()
    assert sorted(fc_center_window(H, 4)) == [(0, 0, -1), (0, 0, 0), (0, 0, 1)]
    ZS3 = parse_group("prod:z,S3")
    assert fc_center_window(ZS3, 2) == ZS3.ball(2)
    D = InfiniteDihedral()
    assert sorted(fc_center_window(D, 8)) == [(k, 0) for k in range(-8, 9)]


@pytest.mark.parametrize("name", list(INFINITE))
def test_oracle_against_brute_force(name):
    G, L = INFINITE[name]
    for g in G.ball(L):
        c = G.conjugacy(g)
        small, big = brute_conjugates(G, g, 2), brute_conjugates(G, g, 4)
        if c.finite:
            assert big <= set(c.conjugates) and len(big) == c.size
        else:
            assert len(big) > len(small)


@pytest.mark.parametrize("name", list(INFINITE))
def test_fc_window_is_closed_under_inverse_and_products(name):
    G, L = INFINITE[name]
    win = fc_center_window(G, L)
    ball = set(G.ball(L))
    members = set(win)
    for g in win:
        assert G.inv(g) in members
        for h in win:
            p = G.mul(g, h)
            if p in ball:
                assert p in members


@pytest.mark.parametrize("name", list(INFINITE))
def test_ad_module_matches_oracle(name):
    G, L = INFINITE[name]
    M = group_ad_module(G)
    for g in G.ball(min(L, 3)):
        v = orbit_closure(M, [{g: QQ.one}], budget=40)
        c = G.conjugacy(g)
        if c.finite:
            assert isinstance(v, Finite) and v.dim == c.size
        else:
            assert isinstance(v, BudgetExceeded)


def test_ad_module_examples():
    D = InfiniteDihedral()
    M = group_ad_module(D)
    assert orbit_closure(M, [{(1, 0): QQ.one}]).dim == 2
    assert isinstance(orbit_closure(M, [{(0, 1): QQ.one}], budget=30), BudgetExceeded)
    G = CATALOG["A4"]
    M = group_ad_module(G)
    for g in G.elements:
        assert orbit_closure(M, [{g: QQ.one}]).dim == G.conjugacy(g).size


@settings(max_examples=40)
@given(seed=st.integers(0, 10**9))
def test_group_axioms_on_random_words(seed):
    rng = random.Random(seed)
    for G, L in INFINITE.values():
        a, b, c = (rng.choice(G.ball(2)) for _ in range(3))
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        assert G.mul(a, G.inv(a)) == G.identity() == G.mul(G.inv(a), a)


def test_permutation_parsing():
    assert parse_permutation("(123)", 3) == (1, 2, 0)
    # rightmost cycle acts first
    assert parse_permutation("(12)(23)", 3) == (1, 2, 0)
    assert parse_permutation("()", 3) == (0, 1, 2)
    with pytest.raises(ParseError):
        parse_permutation("(12", 3)
    assert permutation_group(["(123)", "(12)"]).order == 6
    assert parse_group("perm:(1234),(24)").order == 8


def test_parse_group_descriptors():
    assert isinstance(parse_group("dinf"), InfiniteDihedral)
    assert isinstance(parse_group("z"), IntegerGroup)
    assert isinstance(parse_group("prod:heis,z"), DirectProduct)
    assert parse_group("cyclic:7").order == 7
    assert parse_group("Q8").order == 8
    with pytest.raises(ParseError):
        parse_group("nonsense")


def test_not_a_group():
    with pytest.raises(NotAGroup):
        FiniteGroup("bad", [0, 1, 2], lambda a, b: max(a, b), [1])
