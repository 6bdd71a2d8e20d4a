import random

import pytest
from hypothesis import given, strategies as st

from partcat.partitions import (
    EMPTY,
    Partition,
    PartitionError,
    compose,
    delta,
    double_singleton,
    enumerate_partitions,
    four_block,
    h_series_part,
    half_lib_part,
    identity_partition,
    is_compatible_labelling,
    ker,
    pair,
    primary_part,
    restricted_growth_strings,
    singleton,
)

labels_strategy = st.lists(st.integers(0, 4), max_size=8)


def random_partition(rng, max_points=6):
    total = rng.randrange(max_points + 1)
    labels = [rng.randrange(4) for _ in range(total)]
    upper = rng.randrange(total + 1)
    return Partition(upper, total - upper, labels)


def test_canonical_form_is_restricted_growth():
    p = Partition(3, 2, (7, 3, 7, 9, 3))
    assert p.labels == (0, 1, 0, 2, 1)
    assert Partition(3, 2, p.labels) == p


@given(labels_strategy, st.integers(0, 8))
def test_canonicalization_idempotent(labels, cut):
    cut = min(cut, len(labels))
    p = Partition(cut, len(labels) - cut, labels)
    assert Partition(cut, len(labels) - cut, p.labels) == p


def test_text_roundtrip():
    for text in ("aabaab|", "ab|ab", "|aa", "|", "aab|ab"):
        assert Partition.parse(text).text() == text
    assert Partition.parse("zz|z").text() == "aa|a"
    with pytest.raises(PartitionError):
        Partition.parse("ab")
    with pytest.raises(PartitionError):
        Partition.parse("a1|b")


def test_tensor_examples():
    assert pair().tensor(pair()) == Partition(4, 0, (0, 0, 1, 1))
    p = Partition.parse("aab|ab")
    assert p.tensor(EMPTY) == p
    assert EMPTY.tensor(p) == p
    assert four_block().tensor(singleton()) == Partition(5, 0, (0, 0, 0, 0, 1))


def test_involute():
    assert pair().involute() == Partition(0, 2, (0, 0))
    assert identity_partition().involute() == identity_partition()
    p = Partition(3, 1, (0, 1, 0, 1))
    q = p.involute()
    assert (q.upper, q.lower) == (1, 3)
    assert q.involute() == p


def test_rotate_basics():
    assert pair().rotate("upper_to_lower") == identity_partition()
    assert identity_partition().rotate("lower_to_upper") == pair()
    with pytest.raises(PartitionError):
        EMPTY.rotate("upper_to_lower")
    with pytest.raises(PartitionError):
        pair().rotate("sideways")


def test_rotate_inverse_pair():
    rng = random.Random(3)
    for _ in range(200):
        p = random_partition(rng)
        if p.upper:
            assert p.rotate("upper_to_lower").rotate("lower_to_upper") == p
        if p.lower:
            assert p.rotate("lower_to_upper").rotate("upper_to_lower") == p


def test_basic_rotations_shift_the_boundary_word():
    # a basic rotation is a cyclic shift of the boundary word, so k+l of
    # them return the original block structure up to relabelling
    def norm(word):
        seen = {}
        return tuple(seen.setdefault(x, len(seen)) for x in word)

    for k in range(6):
        for p0 in enumerate_partitions(k):
            for up in range(k + 1):
                p = Partition.from_boundary(p0.labels, up)
                w = p.boundary_labels()
                if p.upper:
                    q = p.rotate("upper_to_lower")
                    assert q.boundary_labels() == norm(w[1:] + w[:1])
                if p.lower:
                    q = p.rotate("lower_to_upper")
                    assert q.boundary_labels() == norm(w[-1:] + w[:-1])


def test_compose_examples():
    out, loops = compose(pair(), pair().involute())
    assert out == EMPTY and loops == 1

    ident2 = identity_partition().tensor(identity_partition())
    p = Partition.parse("aab|ab")
    assert compose(ident2, p) == (p, 0)

    cap42 = (
        identity_partition()
        .tensor(Partition(2, 2, (0, 1, 0, 0)))
        .tensor(identity_partition())
    )
    # the middle pair of the lower row glued into one cap
    cap42 = Partition(4, 2, (0, 1, 1, 2, 0, 2))
    out, loops = compose(cap42, ker((1, 1, 2, 2)).involute())
    assert out == Partition(0, 2, (0, 0))
    assert loops == 0


def test_compose_shape_error():
    with pytest.raises(PartitionError):
        compose(pair(), pair())


def test_compose_loop_counting():
    circle, loops = compose(pair(), pair().involute())
    assert circle == EMPTY and loops == 1
    nested = Partition(0, 4, (0, 1, 1, 0))
    out, loops = compose(Partition(4, 0, (0, 1, 1, 0)), nested)
    assert out == EMPTY and loops == 2


def test_involution_antimultiplicative():
    rng = random.Random(11)
    done = 0
    while done < 400:
        p = random_partition(rng)
        q = random_partition(rng)
        if q.upper != p.lower or p.points + q.points > 6 + 6:
            continue
        done += 1
        lhs = compose(q, p)[0].involute()
        rhs = compose(p.involute(), q.involute())[0]
        assert lhs == rhs


def test_compose_associative_with_loop_sums():
    rng = random.Random(5)
    done = 0
    while done < 300:
        p = random_partition(rng, 4)
        q = random_partition(rng, 4)
        r = random_partition(rng, 4)
        if q.upper != p.lower or r.upper != q.lower:
            continue
        done += 1
        qp, l1 = compose(q, p)
        left, l2 = compose(r, qp)
        rq, m1 = compose(r, q)
        right, m2 = compose(rq, p)
        assert left == right
        assert l1 + l2 == m1 + m2


def test_ker_examples():
    assert ker((1, 1)) == pair()
    assert ker((1, 2, 1)) == Partition(3, 0, (0, 1, 0))
    assert ker((5, 5, 7, 5, 5, 7)) == primary_part()
    with pytest.raises(PartitionError):
        ker(())


def test_delta_examples():
    assert delta(pair(), (2, 2), ()) == 1
    assert delta(pair(), (1, 2), ()) == 0
    assert delta(identity_partition(), (3,), (7,)) == 0
    assert delta(identity_partition(), (3,), (3,)) == 1
    with pytest.raises(PartitionError):
        delta(pair(), (1,), ())


def test_delta_ker_refinement():
    # delta(ker(i), j) = 1 iff ker(j) is coarser than or equal to ker(i)
    from itertools import product

    for k in range(1, 5):
        for i in product(range(1, 4), repeat=k):
            for j in product(range(1, 4), repeat=k):
                coarser = all(
                    j[a] == j[b]
                    for a in range(k)
                    for b in range(k)
                    if i[a] == i[b]
                )
                assert delta(ker(i), j, ()) == (1 if coarser else 0)


def test_enumerate_counts():
    assert [len(enumerate_partitions(k)) for k in range(6)] == [1, 1, 2, 5, 15, 52]
    with pytest.raises(PartitionError):
        enumerate_partitions(20)


def test_restricted_growth_strings_are_canonical():
    for rgs in restricted_growth_strings(5):
        assert Partition(5, 0, rgs).labels == rgs


def test_is_compatible_labelling():
    assert is_compatible_labelling(ker((1, 2, 1)), (4, 9, 4))
    assert not is_compatible_labelling(ker((1, 2, 1)), (4, 9, 5))
    for j in range(1, 6):
        assert is_compatible_labelling(pair(), (j, j))
    with pytest.raises(PartitionError):
        is_compatible_labelling(identity_partition(), (1,))


def test_block_parity_preserved_by_operations():
    rng = random.Random(2)
    even = [p for k in (2, 4, 6) for p in enumerate_partitions(k)
            if all(s % 2 == 0 for s in p.block_sizes())]
    for _ in range(400):
        p = rng.choice(even)
        q = rng.choice(even)
        for r in (p.tensor(q), p.involute(), compose(q.involute(), p.tensor(pair()))[0]
                  if q.points == p.points + 2 else p):
            assert all(s % 2 == 0 for s in r.block_sizes())
        if p.upper:
            assert all(s % 2 == 0 for s in p.rotate("upper_to_lower").block_sizes())


def test_boundary_word_and_splits():
    p = Partition.parse("aab|ab")
    assert p.boundary_labels() == (0, 0, 1, 1, 0)
    assert Partition.from_boundary(p.boundary_labels(), p.upper) == p
    assert p.one_line_form() == Partition(5, 0, (0, 0, 1, 1, 0))


def test_named_partitions():
    assert primary_part().text() == "aabaab|"
    assert half_lib_part() == ker((1, 2, 3, 1, 2, 3))
    assert h_series_part(2) == ker((1, 2, 1, 2))
    assert double_singleton().block_sizes() == (1, 1)
    with pytest.raises(PartitionError):
        h_series_part(0)
