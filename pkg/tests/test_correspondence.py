from partcat import definetti, reflection
from partcat.categories import saturate
from partcat.correspondence import (
    category_from_subgroup,
    diagonal_subgroup,
    f_group_generators,
    roundtrip_check,
    subgroup_one_line_rule,
)
from partcat.partitions import h_series_part, half_lib_part, ker, primary_part
from partcat.words import closure_generate, reduce_word


def exact_fn(spec):
    return lambda w: definetti.is_in_kernel(w, spec) == "yes"


def test_fgroup_of_primary_part_is_trivial():
    cat = saturate([primary_part()], 8, 200000)
    for n in (2, 3):
        fc = f_group_generators(cat, n, 8)
        assert fc.words == {()}


def test_fgroup_of_pair_category_is_trivial():
    cat = saturate([], 6, 100000)
    fc = f_group_generators(cat, 3, 6)
    assert fc.words == {()}


def test_fgroup_picks_up_crossing_words():
    cat = saturate([primary_part(), h_series_part(2)], 6, 100000)
    fc = f_group_generators(cat, 3, 6)
    assert (1, 2, 1, 2) in fc.words
    assert (2, 3, 2, 3) in fc.words  # letter-map orbit of the generator word
    assert (1, 2) not in fc.words


def test_fgroup_words_are_reduced_and_bounded():
    cat = saturate([h_series_part(3)], 6, 100000)
    fc = f_group_generators(cat, 2, 6)
    for w in fc.words:
        assert w == reduce_word(w)
        assert len(w) <= 6


def test_one_line_rule_rejects_excess_blocks():
    cache = closure_generate([(1, 2, 1, 2)], 2, 6, 100000)
    rule = subgroup_one_line_rule(cache)
    assert not rule(ker((1, 2, 3)))  # three blocks, two letters
    assert rule(ker((1, 2, 1, 2)))
    assert not rule(ker((1, 2)))


def test_category_from_trivial_subgroup():
    cache = closure_generate([()], 3, 6, 1000)
    cat, report = category_from_subgroup(cache, 6, member_fn=lambda w: w == ())
    assert cat.contains(ker((1, 1))).status == "yes"
    assert cat.contains(ker((1, 2, 2, 1))).status == "yes"
    assert cat.contains(ker((1, 2, 1, 2))).status == "no"
    fc = f_group_generators(cat, 3, 6)
    assert fc.words == {()}
    assert report["kernel_count"] > 0


def test_membership_separates_subgroups():
    # the crossing pairing reads off (1 2 1 2): in the category of the
    # pair-order-2 closure, not in the pair-order-3 one
    c2 = closure_generate([(1, 2, 1, 2)], 3, 8, 200000)
    c3 = closure_generate([(1, 2, 1, 2, 1, 2)], 3, 8, 200000)
    cat2, _ = category_from_subgroup(
        c2, 6, member_fn=exact_fn(reflection.higher_series_spec(3, 2))
    )
    cat3, _ = category_from_subgroup(
        c3, 6, member_fn=exact_fn(reflection.higher_series_spec(3, 3))
    )
    assert cat2.contains(h_series_part(2)).status == "yes"
    assert cat3.contains(h_series_part(2)).status == "no"
    assert cat3.contains(h_series_part(3)).status == "yes"


def test_category_monotone_in_subgroup():
    c2 = closure_generate([(1, 2, 1, 2)], 3, 6, 200000)
    c1 = closure_generate([(1, 2)], 3, 6, 200000)
    cat2, _ = category_from_subgroup(
        c2, 6, member_fn=exact_fn(reflection.higher_series_spec(3, 2))
    )
    cat1, _ = category_from_subgroup(
        c1, 6, member_fn=exact_fn(reflection.higher_series_spec(3, 1))
    )
    assert set(cat2.core) <= set(cat1.core)


def test_extras_are_tensors_beyond_letter_count():
    c1 = closure_generate([(1, 2)], 3, 6, 200000)
    _, report = category_from_subgroup(
        c1, 6, member_fn=exact_fn(reflection.higher_series_spec(3, 1))
    )
    # e.g. four single-point blocks cannot be a kernel over three letters
    assert "abcd|" in report["extras"]


def test_roundtrip_small_window_without_exact_rule():
    cache = closure_generate([(1, 2, 1, 2)], 3, 6, 200000)
    report = roundtrip_check(cache, 3, 6, 6)
    assert report["forward_inclusion"]["holds"]
    assert report["backward_inclusion"]["holds"]


def test_roundtrip_exact_half_liberated():
    cache = closure_generate([(1, 2, 3, 1, 2, 3)], 3, 8, 200000)
    report = roundtrip_check(
        cache, 3, 8, 8,
        member_fn=exact_fn(reflection.hyperoctahedral_series_spec(3, None)),
    )
    assert report["forward_inclusion"]["holds"]
    assert report["backward_inclusion"]["holds"]
    assert report["category"]["kernel_count"] > 0


def test_half_lib_partition_in_star_category():
    cache = closure_generate([(1, 2, 3, 1, 2, 3)], 3, 8, 200000)
    cat, _ = category_from_subgroup(
        cache, 6, member_fn=exact_fn(reflection.hyperoctahedral_series_spec(3, None))
    )
    assert cat.contains(half_lib_part()).status == "yes"
    assert cat.contains(h_series_part(2)).status == "no"


def test_diagonal_subgroup_presentation():
    cat = saturate([h_series_part(2)], 6, 100000)
    spec = diagonal_subgroup(cat, 2, 6)
    assert spec.n == 2
    assert (1, 2, 1, 2) in spec.relators
    assert () not in spec.relators
    # all relators die in the pair-order-2 quotient
    model = reflection.enumerate_group(reflection.higher_series_spec(2, 2), 16)
    for r in spec.relators:
        assert model.eval_word(r) == model.identity
