import random
from fractions import Fraction

from troprank import (
    INF,
    TropicalMatrix,
    barvinok_rank,
    min_plus_multiply,
    tropical_rank,
)


def test_rank_one_feasible():
    m = TropicalMatrix.from_rows([[0, 1], [1, 2]])
    res = barvinok_rank(m)
    assert res.rank == 1
    f = res.factorization
    assert f.left.cols == 1 and f.right.rows == 1
    assert min_plus_multiply(f.left, f.right) == m


def test_rank_two_forced():
    # rank 1 needs a1+b1=0, a1+b2=1, a2+b1=1, hence a2+b2=2 != 0
    m = TropicalMatrix.from_rows([[0, 1], [1, 0]])
    res = barvinok_rank(m)
    assert res.rank == 2
    assert min_plus_multiply(res.factorization.left, res.factorization.right) == m


def test_identity_family():
    for n in (2, 3, 4):
        m = TropicalMatrix.identity(n)
        res = barvinok_rank(m)
        assert res.rank == n
        assert min_plus_multiply(res.factorization.left, res.factorization.right) == m


def test_kmax_exceeded():
    m = TropicalMatrix.identity(3)
    res = barvinok_rank(m, kmax=2)
    assert res.rank is None
    assert res.exceeded_kmax
    assert not res.budget_exhausted


def test_budget_exhaustion():
    m = TropicalMatrix.from_rows(
        [[Fraction(i * j + i + 2 * j) for j in range(5)] for i in range(5)]
    )
    res = barvinok_rank(m, budget=1)
    assert res.rank is None or res.coverings_tested <= 1
    if res.rank is None:
        assert res.budget_exhausted


def test_all_inf_matrix():
    m = TropicalMatrix.constant(2, 3, INF)
    res = barvinok_rank(m)
    assert res.rank == 1
    assert min_plus_multiply(res.factorization.left, res.factorization.right) == m


def test_transpose_invariance():
    rng = random.Random(5)
    for _ in range(12):
        rows = [
            [
                INF if rng.random() < 0.25 else Fraction(rng.randint(0, 3))
                for _ in range(3)
            ]
            for _ in range(3)
        ]
        m = TropicalMatrix.from_rows(rows)
        a = barvinok_rank(m)
        b = barvinok_rank(m.transpose())
        assert a.rank == b.rank


def test_factorization_always_exact():
    rng = random.Random(11)
    for _ in range(25):
        r = rng.randint(1, 3)
        c = rng.randint(1, 3)
        rows = [
            [
                INF if rng.random() < 0.2 else Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                for _ in range(c)
            ]
            for _ in range(r)
        ]
        m = TropicalMatrix.from_rows(rows)
        res = barvinok_rank(m)
        assert res.rank is not None
        f = res.factorization
        assert min_plus_multiply(f.left, f.right) == m


def test_rank_chain_on_01_sample():
    rng = random.Random(77)
    for _ in range(40):
        m = TropicalMatrix.from_rows(
            [[Fraction(rng.randint(0, 1)) for _ in range(3)] for _ in range(3)]
        )
        assert tropical_rank(m).rank <= barvinok_rank(m).rank


def test_deterministic_factorization():
    m = TropicalMatrix.from_rows([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    a = barvinok_rank(m)
    b = barvinok_rank(m)
    assert a.factorization == b.factorization
