"""Bounded saturation of categories of partitions.

A category is determined by its one-line members: every element is obtained
from a one-line partition by splitting the cyclic boundary word, and the four
generating operations (tensor, composition, involution, rotation) act on
boundary words by concatenation, capping of adjacent points, reversal and
cyclic shifts.  Saturation therefore runs entirely on one-line canonical
forms, which keeps the state space at Bell-number rather than
mixed-shape scale.

Composition is not just capping after concatenation: stacking two in-bound
members can pass through a concatenated word that is larger than the point
bound even though the composite is not.  Saturation therefore also glues
pairs of cached words directly along any number of legs, so the cache is the
genuine fixed point of the four operations restricted to results within the
bound.  Non-membership is still only ever reported with a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .partitions import (
    EMPTY,
    Partition,
    PartitionError,
    double_singleton,
    four_block,
    pair,
    primary_part,
    restricted_growth_strings,
)

BoundaryWord = tuple[int, ...]
Witness = tuple


def _norm(word: Sequence[int]) -> BoundaryWord:
    seen: dict[int, int] = {}
    out = []
    for x in word:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


def _glue(w: BoundaryWord, v: BoundaryWord, l: int) -> BoundaryWord:
    """Composition along l legs: the member split (len(w)-l, l) stacked on
    the member split (l, len(v)-l).  The glued boundary points are the last
    l of w against the first l of v, nested, and are removed."""
    if not w:
        return _norm(v[l:])
    if not v:
        return _norm(w[: len(w) - l])
    off = max(w) + 1
    parent = list(range(off + max(v) + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in range(l):
        ra, rb = find(w[len(w) - 1 - t]), find(off + v[t])
        if ra != rb:
            parent[rb] = ra
    out = [find(x) for x in w[: len(w) - l]]
    out += [find(off + x) for x in v[l:]]
    return _norm(out)


def _cap(word: BoundaryWord, j: int) -> BoundaryWord:
    """Glue points j and j+1 with a pair block: merge their blocks (or close
    a loop if equal) and delete both points."""
    a, b = word[j], word[j + 1]
    rest = word[:j] + word[j + 2 :]
    if a != b:
        rest = tuple(a if x == b else x for x in rest)
    return _norm(rest)


@dataclass
class ContainsResult:
    status: str  # "yes" | "no" | "unknown"
    derivation: list[tuple] | None = None
    certificate: str | None = None


@dataclass
class Category:
    """Generator set plus the bounded one-line saturation cache."""

    generators: tuple[Partition, ...]
    max_points: int
    max_count: int
    core: dict[BoundaryWord, Witness]
    complete: bool
    complete_up_to: int
    one_line_rule: Callable[[Partition], bool] | None = None

    def one_line_members(self) -> list[Partition]:
        return [Partition(len(w), 0, w) for w in sorted(self.core, key=lambda w: (len(w), w))]

    def members(self, k: int, l: int) -> list[Partition]:
        """All cached members with k upper and l lower points."""
        out = []
        for w in sorted(self.core, key=lambda w: (len(w), w)):
            if len(w) == k + l:
                out.append(Partition.from_boundary(w, k))
        return out

    def derivation(self, word: BoundaryWord) -> list[tuple]:
        steps: list[tuple] = []
        stack = [word]
        seen: set[BoundaryWord] = set()
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            wit = self.core[cur]
            steps.append((cur,) + wit)
            for parent in wit[1:]:
                if isinstance(parent, tuple) and parent in self.core:
                    stack.append(parent)
        steps.reverse()
        return steps

    def contains(self, p: Partition) -> ContainsResult:
        word = p.boundary_labels()
        if word in self.core and p.points <= self.max_points:
            return ContainsResult("yes", derivation=self.derivation(word))
        if p.points > self.max_points:
            return ContainsResult("unknown")
        if self.one_line_rule is not None:
            if self.one_line_rule(p.one_line_form()):
                return ContainsResult("yes")
            return ContainsResult("no", certificate="one-line-word-rule")
        for cert in (
            even_block_certificate,
            pair_block_certificate,
            series_quotient_certificate,
        ):
            verdict = cert(self, p)
            if verdict is not None:
                return verdict
        return ContainsResult("unknown")

    def is_hyperoctahedral(self) -> str:
        if self.max_points < 4:
            return "unknown"
        four = self.contains(four_block()).status
        doub = self.contains(double_singleton()).status
        if four == "yes" and doub == "no":
            return "yes"
        if four == "no" or doub == "yes":
            return "no"
        return "unknown"

    def is_group_theoretical(self) -> str:
        if self.max_points < 6:
            return "unknown"
        return self.contains(primary_part()).status

    @classmethod
    def full(cls, max_points: int) -> "Category":
        """The category of all partitions, materialized up to the bound."""
        core: dict[BoundaryWord, Witness] = {}
        for m in range(max_points + 1):
            for rgs in restricted_growth_strings(m):
                core[rgs] = ("full",)
        return cls(
            generators=(),
            max_points=max_points,
            max_count=len(core),
            core=core,
            complete=True,
            complete_up_to=max_points,
        )


def even_block_certificate(cat: Category, p: Partition) -> ContainsResult | None:
    """All generators (and the pair) have only even blocks; the property is
    preserved by all four operations, so odd blocks prove non-membership."""
    if not all(all(s % 2 == 0 for s in g.block_sizes()) for g in cat.generators):
        return None
    if any(s % 2 == 1 for s in p.block_sizes()):
        return ContainsResult("no", certificate="even-block-sizes")
    return None


@lru_cache(maxsize=None)
def _series_model(n: int, s: int):
    from . import reflection

    try:
        return reflection.enumerate_group(
            reflection.hyperoctahedral_series_spec(n, s), 4 * s**max(n - 1, 0)
        )
    except reflection.BoundExceeded:  # pragma: no cover - orders are 2*s^(n-1)
        return None


def _injective_word(p: Partition) -> tuple[int, ...]:
    return tuple(b + 1 for b in p.one_line_form().labels)


def series_quotient_certificate(cat: Category, p: Partition) -> ContainsResult | None:
    """Evaluate block-injective boundary words in the finite pair-order-s
    reflection group quotient.  If every generator word is trivial there, the
    whole category lies in the kernel family, so a nontrivial image proves
    non-membership."""
    for s in (2, 3, 4):
        ok = True
        for g in cat.generators:
            model = _series_model(max(g.block_count, 1), s)
            if model is None or model.eval_word(_injective_word(g)) != model.identity:
                ok = False
                break
        if not ok:
            continue
        if p.block_count == 0:
            return None
        model = _series_model(p.block_count, s)
        if model is not None and model.eval_word(_injective_word(p)) != model.identity:
            return ContainsResult("no", certificate=f"pair-order-{s}-quotient")
    return None


def pair_block_certificate(cat: Category, p: Partition) -> ContainsResult | None:
    """All generator blocks have size <= 2 (preserved by the operations:
    capping two such blocks yields size s1+s2-2 <= 2)."""
    if not all(all(s <= 2 for s in g.block_sizes()) for g in cat.generators):
        return None
    if any(s > 2 for s in p.block_sizes()):
        return ContainsResult("no", certificate="block-size-at-most-two")
    return None


class SaturationBoundExceeded(RuntimeError):
    def __init__(self, cat: Category):
        super().__init__("category saturation cache bound exceeded")
        self.cat = cat


def saturate(
    generators: Iterable[Partition],
    max_points: int,
    max_count: int,
    one_line_rule: Callable[[Partition], bool] | None = None,
) -> Category:
    """Close the one-line forms of the generators, the pair partition and the
    empty partition under cyclic shift, reversal, capping and concatenation,
    keeping words of at most max_points points."""
    if max_points < 2 or max_count < 1:
        raise PartitionError("bounds must allow at least the pair partition")
    gens = tuple(generators)
    core: dict[BoundaryWord, Witness] = {}
    queue: list[BoundaryWord] = []
    complete = True

    def add(w: BoundaryWord, wit: Witness) -> None:
        if len(w) <= max_points and w not in core:
            core[w] = wit
            queue.append(w)

    add((), ("empty",))
    add(pair().labels, ("pair",))
    for g in gens:
        if g.points > max_points:
            raise PartitionError(
                f"generator {g.text()!r} exceeds max_points={max_points}"
            )
        add(g.one_line_form().labels, ("generator", g.text()))

    head = 0
    while head < len(queue):
        if len(core) > max_count:
            complete = False
            break
        w = queue[head]
        head += 1
        if w:
            add(_norm(w[1:] + w[:1]), ("shift", w))
            add(_norm(tuple(reversed(w))), ("reverse", w))
        for j in range(len(w) - 1):
            add(_cap(w, j), ("cap", j, w))
        for v in list(core):
            add(_norm(w + tuple(x + len(w) for x in v)), ("concat", w, v))
            add(_norm(v + tuple(x + len(v) for x in w)), ("concat", v, w))
            lo = max(1, -(-(len(w) + len(v) - max_points) // 2))
            for l in range(lo, min(len(w), len(v)) + 1):
                add(_glue(w, v, l), ("compose", l, w, v))
                add(_glue(v, w, l), ("compose", l, v, w))

    return Category(
        generators=gens,
        max_points=max_points,
        max_count=max_count,
        core=core,
        complete=complete,
        complete_up_to=max_points if complete else 0,
        one_line_rule=one_line_rule,
    )
