import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfad.errors import PreconditionViolated
from hopfad.finmod import BudgetExceeded, Finite
from hopfad.linalg import axpy
from hopfad.pbw import (
    PresentedAlgebra,
    WordRewriter,
    ad_power_chain,
    adfin_probe,
    adjoint_action_pbw,
    q_binomial,
    q_integer,
    uq_sl2,
    uq_sl2_quotient,
)
from hopfad.scalar import Cyclotomic, RationalFunctions

U = uq_sl2()
U5 = PresentedAlgebra(Cyclotomic(5), q=Cyclotomic(5).gen)  # untruncated, q a root of unity
U3 = PresentedAlgebra(Cyclotomic(3), q=Cyclotomic(3).gen)
H3 = uq_sl2_quotient(3)
ALGS = {"generic": U, "root5": U5, "quotient3": H3}


def rand_key(alg, rng, maxe=2):
    top = maxe if not alg.truncate else min(maxe, alg.n - 1)
    return (rng.randint(0, top), rng.randint(-2, 2), rng.randint(0, top))


def rand_elem(alg, rng, support=2):
    return alg.element({rand_key(alg, rng): alg.field.random_element(rng, 2) or alg.field.one for _ in range(support)})


def tmap(T, left=None, right=None):
    """Apply element-valued maps to the legs of a tensor (keyed by key pairs)."""
    out: dict = {}
    for (k1, k2), x in T.items():
        a = left(k1) if left else {(k1,): 1}
        b = right(k2) if right else {(k2,): 1}
        for p, u in a.items():
            for r, w in b.items():
                key = p + r
                out[key] = out.get(key, 0) + x * u * w
    return {k: x for k, x in out.items() if x}


def wrap(d):
    return {(k,) if not isinstance(k[0], tuple) else k: x for k, x in d.items()}


def test_q_integers_and_binomials_against_product_formula():
    K = RationalFunctions()
    t = K.gen
    for m in range(0, 7):
        assert q_integer(m, t) == sum((t**i for i in range(m)), K.zero)
        for j in range(0, m + 1):
            num = den = K.one
            for i in range(j):
                num = num * (K.one - t ** (m - i))
                den = den * (K.one - t ** (i + 1))
            assert q_binomial(m, j, t) == num / den


@pytest.mark.parametrize("n", [3, 5, 7])
def test_q_binomials_vanish_at_primitive_roots(n):
    q = Cyclotomic(n).gen
    assert all(not q_binomial(n, j, q) for j in range(1, n))
    assert q_binomial(n, 0, q) == q_binomial(n, n, q) == Cyclotomic(n).one


def test_normal_form_examples():
    q = U.q
    assert U.normal_form("KE") == U.monomial(0, 1, 1)
    assert U.normal_form("EK") == q**-2 * U.monomial(0, 1, 1)
    assert U.normal_form("EF") - U.normal_form("FE") == (U.K - U.Kinv) * (q - q**-1).inverse()
    assert H3.normal_form([("E", 3)]) == 0
    assert H3.normal_form([("F", 3)]) == 0
    assert U3.normal_form([("E", 3)]) != 0


def test_rewriter_self_test_covers_overlaps():
    for alg in (U, H3, uq_sl2_quotient(5)):
        w = WordRewriter(alg)
        assert w.critical_pairs()
        w.check_confluence()


@pytest.mark.parametrize("name", list(ALGS))
@settings(max_examples=25)
@given(seed=st.integers(0, 10**9), length=st.integers(0, 7))
def test_rewriter_matches_fast_multiplication(name, seed, length):
    alg = ALGS[name]
    rng = random.Random(seed)
    word = [rng.choice("EFKk") for _ in range(length)]
    slow = WordRewriter(alg).normal_form(word)
    assert alg.normal_form(word).terms == {k: x for k, x in slow.items() if x}


@pytest.mark.parametrize("name", list(ALGS))
@settings(max_examples=20)
@given(seed=st.integers(0, 10**9))
def test_associativity(name, seed):
    alg = ALGS[name]
    rng = random.Random(seed)
    x, y, z = (rand_elem(alg, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)


def test_generator_structure_maps():
    o = (0, 0, 0)
    for alg in ALGS.values():
        for b in (-2, 1, 3):
            key = alg._norm_key(0, b, 0)
            assert alg.coproduct(alg.monomial(0, b, 0)) == {(key, key): alg.field.one}
        assert alg.counit(alg.E) == 0 and alg.counit(alg.K) == 1 and alg.counit(alg.F) == 0
        assert alg.antipode(alg.E) == -(alg.Kinv * alg.E)
        assert alg.antipode(alg.F) == -(alg.F * alg.K)
        assert alg.coproduct(alg.one) == {(o, o): alg.field.one}


def test_coproduct_of_powers_matches_q_binomial_theorem():
    # with A = E⊗1, B = K⊗E and BA = q²AB:
    # ΔE^c = Σ_j [c, j]_{q²} q^{-2j(c-j)} K^j E^{c-j} ⊗ E^j
    for alg in (U, U5):
        q2 = alg.q * alg.q
        for c in range(0, 6):
            expect = {}
            for j in range(c + 1):
                coeff = q_binomial(c, j, q2) * alg.q ** (-2 * j * (c - j))
                if coeff:
                    expect[((0, j, c - j), (0, 0, j))] = coeff
            assert alg.coproduct(alg.monomial(0, 0, c)) == expect


def test_coproduct_of_nth_power_at_root_of_unity():
    E3 = U3.monomial(0, 0, 3)
    one = U3.field.one
    assert U3.coproduct(E3) == {((0, 0, 3), (0, 0, 0)): one, ((0, 3, 0), (0, 0, 3)): one}


def test_quotient_ideal_is_a_hopf_ideal():
    # ΔE^n, ΔF^n ∈ I⊗H + H⊗I and S(E^n), S(F^n) ∈ I, where I = E^nU + F^nU
    n = 3

    def in_ideal(key):
        a, b, c = key
        return a >= n or c >= n

    for x in (U3.monomial(0, 0, n), U3.monomial(n, 0, 0)):
        assert all(in_ideal(k1) or in_ideal(k2) for k1, k2 in U3.coproduct(x))
        assert all(in_ideal(k) for k in U3.antipode(x).terms)


@pytest.mark.parametrize("name", list(ALGS))
@settings(max_examples=10)
@given(seed=st.integers(0, 10**9))
def test_hopf_axioms_on_elements(name, seed):
    alg = ALGS[name]
    rng = random.Random(seed)
    x, y = rand_elem(alg, rng), rand_elem(alg, rng)
    D = alg.coproduct(x)
    # coassociativity
    lhs = tmap(D, left=lambda k: wrap(alg.coproduct(alg.monomial(*k))))
    rhs = tmap(D, right=lambda k: wrap(alg.coproduct(alg.monomial(*k))))
    assert lhs == rhs
    # counit on either leg
    for side in (0, 1):
        out: dict = {}
        for pair, c in D.items():
            eps = alg.counit(alg.monomial(*pair[side]))
            if eps:
                axpy(out, c * eps, {pair[1 - side]: alg.field.one})
        assert out == x.terms
    # antipode
    for side in (0, 1):
        out: dict = {}
        for (k1, k2), c in D.items():
            a = alg.antipode(alg.monomial(*k1)) if side == 0 else alg.monomial(*k1)
            b = alg.monomial(*k2) if side == 0 else alg.antipode(alg.monomial(*k2))
            axpy(out, c, (a * b).terms)
        assert alg.element(out) == alg.counit(x) * alg.one
    # Δ and ε are multiplicative
    assert alg.coproduct(x * y) == alg.tensor_mul(D, alg.coproduct(y))
    assert alg.counit(x * y) == alg.counit(x) * alg.counit(y)


@pytest.mark.parametrize("name", list(ALGS))
@settings(max_examples=6)
@given(seed=st.integers(0, 10**9))
def test_adjoint_coproduct_identity(name, seed):
    alg = ALGS[name]
    rng = random.Random(seed)
    k, v = rand_elem(alg, rng, 1), rand_elem(alg, rng, 2)
    lhs = alg.coproduct(alg.adjoint(k, v))
    Dk = alg.coproduct(k)
    D2 = tmap(Dk, left=lambda t: wrap(alg.coproduct(alg.monomial(*t))))
    rhs: dict = {}
    for (k1, k2, k3), c in D2.items():
        for (v1, v2), d in alg.coproduct(v).items():
            left = alg.monomial(*k1) * alg.monomial(*v1) * alg.antipode(alg.monomial(*k3))
            right = alg.adjoint(alg.monomial(*k2), alg.monomial(*v2))
            for p, u in left.terms.items():
                for r, w in right.terms.items():
                    axpy(rhs, c * d * u * w, {(p, r): alg.field.one})
    assert lhs == rhs


@pytest.mark.parametrize("name", list(ALGS))
@settings(max_examples=15)
@given(seed=st.integers(0, 10**9))
def test_adjoint_against_direct_expansion(name, seed):
    alg = ALGS[name]
    rng = random.Random(seed)
    v = rand_elem(alg, rng)
    E, F, K, Ki = alg.E, alg.F, alg.K, alg.Kinv
    assert adjoint_action_pbw(E, v) == E * v - K * v * Ki * E
    assert adjoint_action_pbw(F, v) == F * v * K - v * F * K
    assert adjoint_action_pbw(K, v) == K * v * Ki
    assert adjoint_action_pbw(alg.one, v) == v


@pytest.mark.parametrize("name", list(ALGS))
@settings(max_examples=20)
@given(seed=st.integers(0, 10**9))
def test_ad_K_is_diagonal(name, seed):
    alg = ALGS[name]
    a, b, c = rand_key(alg, random.Random(seed), maxe=4)
    m = alg.monomial(a, b, c)
    assert alg.adjoint(alg.K, m) == alg.q ** (2 * (c - a)) * m


def test_quotient_monomials_are_ad_finite():
    for key in H3.window(6):
        v = adfin_probe(H3, {key: H3.field.one}, budget=200)
        assert isinstance(v, Finite) and v.dim == 1
    assert adfin_probe(H3, H3.one).dim == 1


def test_generic_orbit_of_K_grows():
    assert ad_power_chain(U, U.E, U.K, 5) == [1, 2, 3, 4, 5, 6]
    v = adfin_probe(U, U.K, budget=30)
    assert isinstance(v, BudgetExceeded)
    assert list(v.history) == sorted(v.history)
    assert adfin_probe(U, U.one, budget=30).dim == 1


def test_quotient_left_coideal_and_antipode_windows():
    for key in H3.window(2):
        legs: dict = {}
        for (k1, k2), x in H3.monomial_coproduct(key).items():
            legs.setdefault(k1, {})[k2] = x
        assert all(isinstance(adfin_probe(H3, leg), Finite) for leg in legs.values())
        assert isinstance(adfin_probe(H3, H3.monomial_antipode(key)), Finite)
    assert not H3.is_cocommutative(H3.window(1))


def test_quotient_preconditions():
    with pytest.raises(PreconditionViolated):
        uq_sl2_quotient(4)
    with pytest.raises(PreconditionViolated):
        PresentedAlgebra(Cyclotomic(9), q=Cyclotomic(9).gen ** 3, n=9, truncate=True)
    with pytest.raises(PreconditionViolated):
        PresentedAlgebra(Cyclotomic(4), q=Cyclotomic(4).one)
