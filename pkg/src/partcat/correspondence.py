"""Both directions of the category / subgroup correspondence.

One direction reads words off compatibly labelled one-line category members;
the other builds a category out of the kernels of letter spellings of
subgroup elements.  Round trips are checked on bounded windows and every
claim is reported together with the bounds it was computed under.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .categories import Category, saturate
from .partitions import Partition, ker, restricted_growth_strings
from .reflection import ReflectionGroupSpec
from .words import (
    SubgroupCache,
    Word,
    letter_map_orbit,
    reduce_word,
    word_of_labelled_partition,
)


@dataclass
class FGroupCache:
    """Words read off labelled one-line category members, with provenance."""

    n: int
    length_bound: int
    words: set[Word]
    provenance: dict[Word, tuple[str, tuple[int, ...]]]


def f_group_generators(cat: Category, n: int, length_bound: int) -> FGroupCache:
    """All reduced words of compatible labellings over n letters of the
    cached one-line members.

    Labellings are enumerated only up to renaming (block-class patterns with
    at most n classes); the full set is recovered as the letter-map orbit,
    which is legitimate because the word set is invariant under letter maps.
    """
    found: dict[Word, tuple[str, tuple[int, ...]]] = {}
    for p in cat.one_line_members():
        if p.points > length_bound or p.points == 0:
            continue
        blocks = p.block_count
        for pattern in restricted_growth_strings(blocks):
            if pattern and max(pattern) >= n:
                continue
            labelling = tuple(pattern[b] + 1 for b in p.labels)
            w = word_of_labelled_partition(p, labelling)
            if len(w) <= length_bound and w not in found:
                found[w] = (p.text(), labelling)
    letters = tuple(range(1, n + 1))
    orbit = letter_map_orbit(set(found), letters)
    for w in orbit:
        if len(w) <= length_bound:
            found.setdefault(w, ("letter-map-orbit", ()))
    words = {w for w in found if len(w) <= length_bound}
    return FGroupCache(n=n, length_bound=length_bound, words=words, provenance=found)


def _reduced_words(letters: Sequence[int], max_length: int):
    """All reduced words up to the length bound, including the empty one."""
    frontier: list[Word] = [()]
    yield ()
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == a:
                    continue
                v = w + (a,)
                nxt.append(v)
                yield v
        frontier = nxt


def subgroup_one_line_rule(
    cache: SubgroupCache, member_fn: Callable[[Word], bool] | None = None
) -> Callable[[Partition], bool]:
    """Exact one-line membership for the category of a subgroup N: a
    partition with at most n blocks lies in it iff the word of a
    block-injective labelling reduces into N."""
    member = member_fn if member_fn is not None else (lambda w: w in cache.witnesses)

    def rule(p: Partition) -> bool:
        if p.block_count > len(cache.letters):
            return False
        labelling = tuple(b + 1 for b in p.labels)
        return member(word_of_labelled_partition(p, labelling))

    return rule


def category_from_subgroup(
    cache: SubgroupCache,
    max_points: int,
    max_count: int = 200_000,
    member_fn: Callable[[Word], bool] | None = None,
    verify_points: int | None = None,
) -> tuple[Category, dict]:
    """Category generated by the kernels of letter spellings of subgroup
    elements, together with a verification report.

    Every spelling (unreduced letter sequence) whose free reduction lies in
    the subgroup contributes its kernel partition.  The kernel set already
    carries the whole word layer: a member with at most n blocks is the
    kernel of its own block-injective spelling, and members with more blocks
    only repeat words of coarser kernels.  Saturation is therefore run as a
    consistency check, at verify_points (default min(max_points, 6)) to keep
    the quadratic gluing pass off the hot path; partitions it adds beyond the
    kernels are reported as extras (tensors with more blocks than letters).
    """
    letters = cache.letters
    member = member_fn if member_fn is not None else (lambda w: w in cache.witnesses)
    if verify_points is None:
        verify_points = min(max_points, 6)
    kernel_words: set[tuple[int, ...]] = set()
    for length in range(1, max_points + 1):
        for spelling in product(letters, repeat=length):
            if member(reduce_word(spelling)):
                kernel_words.add(ker(spelling).labels)
    generators = [
        Partition(len(w), 0, w)
        for w in sorted(kernel_words, key=lambda w: (len(w), w))
        if len(w) <= verify_points
    ]
    rule = subgroup_one_line_rule(cache, member_fn)
    cat = saturate(generators, verify_points, max_count, one_line_rule=rule)
    extras = sorted(
        (w for w in cat.core if w and w not in kernel_words),
        key=lambda w: (len(w), w),
    )
    core = dict(cat.core)
    for w in sorted(kernel_words, key=lambda w: (len(w), w)):
        core.setdefault(w, ("kernel",))
    merged = Category(
        generators=tuple(
            Partition(len(w), 0, w)
            for w in sorted(kernel_words, key=lambda w: (len(w), w))
        ),
        max_points=max_points,
        max_count=max_count,
        core=core,
        complete=cat.complete,
        complete_up_to=cat.complete_up_to,
        one_line_rule=rule,
    )
    report = {
        "kernel_count": len(kernel_words),
        "core_count": len(core),
        "verify_points": verify_points,
        "extras": [Partition(len(w), 0, w).text() for w in extras],
        "complete": cat.complete,
    }
    return merged, report


def roundtrip_check(
    cache: SubgroupCache,
    n: int,
    word_bound: int,
    point_bound: int,
    member_fn: Callable[[Word], bool] | None = None,
    max_count: int = 200_000,
) -> dict:
    """F(category(N)) against N on a bounded window, both inclusions with
    counterexamples."""
    cat, build_report = category_from_subgroup(
        cache, point_bound, max_count=max_count, member_fn=member_fn
    )
    fcache = f_group_generators(cat, n, word_bound)
    member = member_fn if member_fn is not None else (lambda w: w in cache.witnesses)

    forward_bad = sorted(w for w in fcache.words if not member(w))
    if member_fn is not None:
        # with an exact decision procedure the window is enumerated outright
        subgroup_words = {
            w for w in _reduced_words(cache.letters, word_bound) if member_fn(w)
        }
    else:
        subgroup_words = {w for w in cache.words() if len(w) <= word_bound}
    backward_bad = sorted(w for w in subgroup_words if w not in fcache.words)

    return {
        "n": n,
        "word_bound": word_bound,
        "point_bound": point_bound,
        "category": build_report,
        "forward_inclusion": {
            "holds": not forward_bad,
            "counterexamples": [list(w) for w in forward_bad[:10]],
        },
        "backward_inclusion": {
            "holds": not backward_bad,
            "counterexamples": [list(w) for w in backward_bad[:10]],
        },
    }


def diagonal_subgroup(cat: Category, n: int, length_bound: int) -> ReflectionGroupSpec:
    """Presentation of the diagonal group: generators a_1..a_n, relators the
    nontrivial F-words up to the bound (a generating set of the kernel up to
    that bound, flagged in the note)."""
    fcache = f_group_generators(cat, n, length_bound)
    relators = tuple(sorted(w for w in fcache.words if w))
    return ReflectionGroupSpec(
        n=n,
        relators=relators,
        note=f"diagonal subgroup relators up to length {length_bound}",
    )
