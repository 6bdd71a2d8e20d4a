import random

import pytest

from partcat.categories import Category, saturate
from partcat.linrep import TpMatrix, hom_space_dimension, t_matrix, verify_functoriality
from partcat.partitions import (
    Partition,
    PartitionError,
    compose,
    double_singleton,
    enumerate_partitions,
    identity_partition,
    ker,
    pair,
)


def test_identity_matrix():
    mat = t_matrix(identity_partition(), 3)
    assert (mat.rows, mat.cols) == (3, 3)
    assert mat.entries == frozenset(((i,), (i,)) for i in range(1, 4))


def test_pair_row_vector():
    # upper pair at n = 2: row vector (1, 0, 0, 1) picking the diagonal
    mat = t_matrix(pair(), 2)
    assert (mat.rows, mat.cols) == (1, 4)
    assert mat.entries == frozenset({((), (1, 1)), ((), (2, 2))})


def test_double_singleton_all_ones():
    mat = t_matrix(double_singleton(), 2)
    assert len(mat.entries) == 4  # free choice for each singleton block


def test_loop_composition_scales_by_n():
    # stacking a cap on a cup closes a loop: T_cap T_cup = n * T_empty
    cup = pair().involute()
    got = t_matrix(pair(), 3).matmul(t_matrix(cup, 3))
    assert got == {((), ()): 3}
    qp, loops = compose(pair(), cup)
    assert qp.points == 0 and loops == 1


def test_functoriality_random_pairs():
    rng = random.Random(12)
    pool = [
        Partition.from_boundary(p.labels, up)
        for k in range(5)
        for p in enumerate_partitions(k)
        for up in range(k + 1)
    ]
    for _ in range(150):
        p = rng.choice(pool)
        q = rng.choice(pool)
        for n in (2, 3):
            assert verify_functoriality(p, q, n)


def test_kron_matches_tensor_shapes():
    a = t_matrix(ker((1, 2, 1)), 2)
    b = t_matrix(pair(), 2)
    prod = a.kron(b)
    assert (prod.k, prod.l) == (5, 0)
    assert prod == t_matrix(ker((1, 2, 1)).tensor(pair()), 2)


def test_matmul_shape_errors():
    a = t_matrix(pair(), 2)
    with pytest.raises(ValueError):
        a.matmul(a)
    with pytest.raises(ValueError):
        a.kron(t_matrix(pair(), 3))


def test_size_limit():
    with pytest.raises(PartitionError):
        t_matrix(ker(tuple(range(10))), 5)


def test_hom_dimension_full_category():
    # Hom(2, 0) for all partitions at n = 2: matrices of aa and ab span
    # dimension 2
    cat = Category.full(4)
    assert hom_space_dimension(cat, 2, 0, 2) == 2
    assert hom_space_dimension(cat, 0, 0, 2) == 1
    # at n = 1 every matrix is the single 1x1 one
    assert hom_space_dimension(cat, 2, 2, 1) == 1


def test_hom_dimension_pair_category():
    cat = saturate([], 4, 100000)
    # noncrossing pairings at (2, 2): identity and cap-cup, independent at n=2
    assert hom_space_dimension(cat, 2, 2, 2) == 2
    assert hom_space_dimension(cat, 1, 1, 2) == 1


def test_hom_dimension_monotone_in_generators():
    small = saturate([], 4, 100000)
    large = saturate([ker((1, 2, 1, 2))], 4, 100000)
    for k, l in ((2, 0), (2, 2), (1, 1)):
        assert hom_space_dimension(small, k, l, 3) <= hom_space_dimension(large, k, l, 3)


def test_transpose_involution():
    mat = t_matrix(ker((1, 2, 2)), 3)
    assert mat.transpose().transpose() == mat
    assert mat.transpose() == t_matrix(ker((1, 2, 2)).involute(), 3)
