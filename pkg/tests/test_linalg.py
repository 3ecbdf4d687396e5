import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfad.errors import DimensionMismatch, IndexOutOfRange
from hopfad.linalg import (
    LinearMap,
    Subspace,
    annihilator,
    contains,
    solve,
    span,
    subspace_intersect,
    subspace_sum,
    tensor_index,
    tensor_subspace,
)
from hopfad.scalar import QQ, Cyclotomic, PrimeField

FIELDS = [QQ, PrimeField(3), Cyclotomic(3)]


def rand_subspace(rng, F, n, k=None):
    k = rng.randint(0, n) if k is None else k
    return span([[F.random_element(rng, 1) if rng.random() < 0.6 else F.zero for _ in range(n)] for _ in range(k)], n, F)


def test_span_examples():
    assert span([[1, 0], [1, 1]], 2, QQ) == Subspace.full(QQ, 2)
    assert span([[2, 4]], 2, QQ).basis == [[QQ(1), QQ(2)]]
    assert span([], 3, QQ).dim == 0


def test_span_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        span([[1, 2, 3]], 2, QQ)


def test_sum_intersect_contains_examples():
    x, y, z = ([1, 0, 0],), ([0, 1, 0],), ([0, 0, 1],)
    X, Y = span(x, 3, QQ), span(y, 3, QQ)
    xy = subspace_sum(X, Y)
    assert xy == span(x + y, 3, QQ)
    yz = span(y + z, 3, QQ)
    assert subspace_intersect(xy, yz) == Y
    assert not contains(xy, [0, 0, 1])
    assert contains(xy, [3, -1, 0])


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(Subspace.full(QQ, 2), Subspace.full(QQ, 3))


def test_tensor_index_examples():
    assert tensor_index(0, 0, 4) == 0
    assert tensor_index(2, 3, 4) == 11
    assert tensor_index(1, 0, 1) == 1
    with pytest.raises(IndexOutOfRange):
        tensor_index(0, 4, 4)


def test_echelon_is_reduced():
    rng = random.Random(3)
    for _ in range(50):
        S = rand_subspace(rng, QQ, 6)
        rows = S.basis
        pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
        assert pivots == sorted(set(pivots))
        for i, p in enumerate(pivots):
            assert rows[i][p] == QQ.one
            assert all(rows[k][p] == QQ.zero for k in range(len(rows)) if k != i)


@pytest.mark.parametrize("F", FIELDS, ids=str)
@given(seed=st.integers(0, 10**9), n=st.integers(1, 6))
def test_dimension_formula(F, seed, n):
    rng = random.Random(seed)
    A, B = rand_subspace(rng, F, n), rand_subspace(rng, F, n)
    assert (A + B).dim + (A & B).dim == A.dim + B.dim
    assert A <= A + B and (A & B) <= B


@pytest.mark.parametrize("F", FIELDS, ids=str)
@given(seed=st.integers(0, 10**9), n=st.integers(1, 6))
def test_modular_law(F, seed, n):
    rng = random.Random(seed)
    A, B, C = (rand_subspace(rng, F, n) for _ in range(3))
    AC = A & C
    assert A & (B + AC) == (A & B) + AC


@pytest.mark.parametrize("F", FIELDS, ids=str)
@given(seed=st.integers(0, 10**9), m=st.integers(1, 5), n=st.integers(1, 5))
def test_rank_nullity(F, seed, m, n):
    rng = random.Random(seed)
    M = LinearMap(F, [[F.random_element(rng, 1) if rng.random() < 0.5 else F.zero for _ in range(n)] for _ in range(m)])
    K = M.kernel()
    assert M.rank() + K.dim == n
    for v in K.vectors:
        assert all(not x for x in M.apply(v).values()) if isinstance(M.apply(v), dict) else not any(M.apply(v))


@given(seed=st.integers(0, 10**9), n=st.integers(1, 6))
def test_annihilator_duality(seed, n):
    rng = random.Random(seed)
    S = rand_subspace(rng, QQ, n)
    A = annihilator(S)
    assert A.dim + S.dim == n
    assert annihilator(A) == S


@given(seed=st.integers(0, 10**9))
def test_solve_reconstructs_target(seed):
    rng = random.Random(seed)
    cols = [{i: QQ.random_element(rng, 2) for i in range(4) if rng.random() < 0.7} for _ in range(3)]
    coeffs = [QQ.random_element(rng, 2) for _ in cols]
    target = {}
    for c, col in zip(coeffs, cols):
        for i, x in col.items():
            target[i] = target.get(i, QQ.zero) + c * x
    target = {i: x for i, x in target.items() if x}
    sol = solve(QQ, cols, target)
    assert sol is not None
    back = {}
    for j, c in sol.items():
        for i, x in cols[j].items():
            back[i] = back.get(i, QQ.zero) + c * x
    assert {i: x for i, x in back.items() if x} == target


def test_solve_unsolvable():
    assert solve(QQ, [{0: QQ.one}], {1: QQ.one}) is None


def test_tensor_subspace_dimension_and_order():
    A = span([[1, 0], [0, 1]], 2, QQ)
    B = span([[0, 1, 0]], 3, QQ)
    T = tensor_subspace(A, B)
    assert T.dim == 2
    assert contains(T, [0, 1, 0, 0, 0, 0]) and contains(T, [0, 0, 0, 0, 1, 0])
