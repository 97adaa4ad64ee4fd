import random

import pytest

from oracles import matmul, matpow
from semirec.errors import DimensionMismatchError, RangeError, SemiringMismatchError
from semirec.linalg import (
    FallingProducts,
    Mat,
    PowerCache,
    Vec,
    falling_product,
    identity,
    mat_add,
    mat_mul,
    mat_pow,
    mat_vec,
    zero_mat,
    zero_vec,
)
from semirec.randsys import POOLS
from semirec.semiring import INF, builtin_semiring
from semirec.sequences import Seq


def rand_mat(rng, s, k):
    pool = [s.parse_literal(t) for t in POOLS[s.name]]
    return Mat.from_rows([[rng.choice(pool) for _ in range(k)] for _ in range(k)], s)


def test_one_by_one_product(nat):
    assert mat_mul(Mat.from_rows([[4]], nat), Mat.from_rows([[3]], nat)).entries == (12,)


def test_identity_is_neutral(semiring):
    rng = random.Random(3)
    for k in (1, 2, 3):
        X = rand_mat(rng, semiring, k)
        I = identity(k, semiring)
        assert mat_mul(I, X) == X
        assert mat_mul(X, I) == X


def test_min_plus_product_matches_expansion():
    s = builtin_semiring("tropical_min_plus")
    X = Mat.from_rows([[0, 1], [INF, 0]], s)
    # (XX)_ij = min_l X_il + X_lj, terms through inf dropped:
    # (0,0): 0+0; (0,1): min(0+1, 1+0); (1,0): all terms inf; (1,1): 0+0
    assert mat_mul(X, X).tolist() == [[0, 1], [INF, 0]]
    assert matmul(s, X.tolist(), X.tolist()) == [[0, 1], [INF, 0]]


def test_mat_mul_matches_list_oracle(semiring):
    rng = random.Random(11)
    for _ in range(30):
        k = rng.randint(1, 3)
        X, Y = rand_mat(rng, semiring, k), rand_mat(rng, semiring, k)
        assert mat_mul(X, Y).tolist() == matmul(semiring, X.tolist(), Y.tolist())


def test_mat_mul_associative(semiring):
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(1, 3)
        X, Y, Z = (rand_mat(rng, semiring, k) for _ in range(3))
        assert mat_mul(mat_mul(X, Y), Z) == mat_mul(X, mat_mul(Y, Z))


def test_mat_vec_identity_and_zero(semiring):
    rng = random.Random(8)
    X = rand_mat(rng, semiring, 3)
    v = Vec(tuple(X.row(0)), semiring)
    assert mat_vec(identity(3, semiring), v) == v
    assert mat_mul(X, zero_mat(3, semiring)) == zero_mat(3, semiring)
    assert mat_vec(X, zero_vec(3, semiring)) == zero_vec(3, semiring)


def test_mat_add(nat):
    X = Mat.from_rows([[1, 2], [3, 4]], nat)
    assert mat_add(X, X).tolist() == [[2, 4], [6, 8]]


def test_dimension_and_semiring_errors(nat):
    X = Mat.from_rows([[1, 2], [3, 4]], nat)
    with pytest.raises(DimensionMismatchError):
        mat_mul(X, Mat.from_rows([[1]], nat))
    with pytest.raises(DimensionMismatchError):
        mat_vec(X, Vec((1, 2, 3), nat))
    with pytest.raises(SemiringMismatchError):
        mat_mul(X, Mat.from_rows([[1, 2], [3, 4]], builtin_semiring("integer")))
    with pytest.raises(DimensionMismatchError):
        Mat.from_rows([[1, 2], [3]], nat)
    with pytest.raises(DimensionMismatchError):
        zero_mat(65, nat)


def test_mat_pow_examples(nat):
    assert mat_pow(Mat.from_rows([[2]], nat), 3).entries == (8,)
    X = Mat.from_rows([[1, 2], [3, 4]], nat)
    assert mat_pow(X, 0) == identity(2, nat)


def test_boolean_swap_squared_is_identity():
    b = builtin_semiring("boolean")
    X = Mat.from_rows([[False, True], [True, False]], b)
    assert mat_pow(X, 2) == identity(2, b)
    # path existence of length 2 from each state returns to itself only
    assert matpow(b, X.tolist(), 2) == identity(2, b).tolist()


def test_mat_pow_matches_oracle(semiring):
    rng = random.Random(2)
    for _ in range(10):
        X = rand_mat(rng, semiring, rng.randint(1, 3))
        for m in range(6):
            assert mat_pow(X, m).tolist() == matpow(semiring, X.tolist(), m)


def test_mat_pow_non_square(nat):
    with pytest.raises(DimensionMismatchError):
        mat_pow(Mat(1, 2, (1, 2), nat), 2)


def test_power_cache_matches_mat_pow(nat):
    X = Mat.from_rows([[1, 2], [0, 3]], nat)
    P = PowerCache(X)
    assert [P(m) for m in range(7)] == [mat_pow(X, m) for m in range(7)]


def _scalar_mat_seq(fn, s):
    return Seq(lambda n: Mat.from_rows([[s.from_int(fn(n))]], s), s)


def test_falling_product_worked_example(nat):
    A = _scalar_mat_seq(lambda n: n + 1, nat)
    B = _scalar_mat_seq(lambda n: n, nat)
    assert falling_product(A, 3, 0) == identity(1, nat)
    assert falling_product(A, 3, 2).entries == (12,)
    assert falling_product(B, 2, 2).entries == (2,)
    assert falling_product(A, 3, 4).entries == (24,)


def test_falling_product_range(nat):
    A = _scalar_mat_seq(lambda n: n + 1, nat)
    with pytest.raises(RangeError):
        falling_product(A, 2, 4)
    with pytest.raises(RangeError):
        FallingProducts(A)(2, 4)


def test_falling_product_constant_collapses_to_power(semiring):
    rng = random.Random(17)
    X = rand_mat(rng, semiring, 2)
    const = Seq(lambda n: X, semiring)
    for m in range(9):
        for n in range(max(m - 1, 0), m + 3):
            assert falling_product(const, n, m) == mat_pow(X, m)


def test_falling_product_order_not_commuted(nat):
    X = Mat.from_rows([[1, 1], [0, 1]], nat)
    Y = Mat.from_rows([[1, 0], [1, 1]], nat)
    assert mat_mul(X, Y) != mat_mul(Y, X)
    seq = Seq(lambda n: {0: Y, 1: X}[n], nat)
    assert falling_product(seq, 1, 2) == mat_mul(X, Y)
    assert FallingProducts(seq)(1, 2) == mat_mul(X, Y)


def test_falling_cache_agrees_with_direct(semiring):
    rng = random.Random(23)
    table = [rand_mat(rng, semiring, 2) for _ in range(12)]
    seq = Seq(lambda n: table[n], semiring)
    cache = FallingProducts(seq)
    for n in range(11, -1, -1):
        for m in range(n + 2):
            assert cache(n, m) == falling_product(seq, n, m)
