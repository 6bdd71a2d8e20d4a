"""Set partitions of upper/lower points and their diagrammatic operations.

A partition has k upper and l lower points, grouped into blocks.  Points are
stored row-wise: flat indices 0..k-1 are the upper row left-to-right, k..k+l-1
the lower row left-to-right.  The canonical form is a restricted-growth string
over the flat indices (block ids numbered by first occurrence), which makes
equality and hashing structural.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

DEFAULT_ENUMERATION_LIMIT = 14


class PartitionError(ValueError):
    pass


def _normalize(labels: Sequence[int]) -> tuple[int, ...]:
    """Relabel block ids in first-occurrence order (restricted growth string)."""
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


class Partition:
    """An immutable set partition of k upper and l lower points."""

    __slots__ = ("upper", "lower", "labels", "_hash")

    def __init__(self, upper: int, lower: int, labels: Sequence[int]):
        if upper < 0 or lower < 0:
            raise PartitionError("negative point count")
        if len(labels) != upper + lower:
            raise PartitionError(
                f"expected {upper + lower} labels, got {len(labels)}"
            )
        self.upper = upper
        self.lower = lower
        self.labels = _normalize(labels)
        self._hash = hash((upper, lower, self.labels))

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Partition)
            and self.upper == other.upper
            and self.lower == other.lower
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Partition({self.text()!r})"

    # -- structure --------------------------------------------------------

    @property
    def points(self) -> int:
        return self.upper + self.lower

    @property
    def block_count(self) -> int:
        return max(self.labels, default=-1) + 1

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as tuples of flat point indices, ordered by least point."""
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for pt, b in enumerate(self.labels):
            out[b].append(pt)
        return tuple(tuple(b) for b in out)

    def block_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.block_count
        for b in self.labels:
            sizes[b] += 1
        return tuple(sizes)

    @property
    def upper_labels(self) -> tuple[int, ...]:
        return self.labels[: self.upper]

    @property
    def lower_labels(self) -> tuple[int, ...]:
        return self.labels[self.upper :]

    def is_one_line(self) -> bool:
        return self.lower == 0

    # -- text format ------------------------------------------------------

    _ALPHABET = "abcdefghijklmnopqrstuvwxyz"

    def text(self) -> str:
        """Render as 'upper|lower' with same letter = same block."""
        if self.block_count > len(self._ALPHABET):
            raise PartitionError("too many blocks for the letter format")
        word = "".join(self._ALPHABET[b] for b in self.labels)
        return word[: self.upper] + "|" + word[self.upper :]

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse 'aab|ab' style text; letters are normalized on input."""
        if text.count("|") != 1:
            raise PartitionError(f"expected one '|' in {text!r}")
        up, low = text.split("|")
        for c in up + low:
            if not c.isalpha():
                raise PartitionError(f"bad character {c!r} in {text!r}")
        return cls(len(up), len(low), [ord(c) for c in up + low])

    # -- operations -------------------------------------------------------

    def tensor(self, other: "Partition") -> "Partition":
        """Horizontal juxtaposition: self kept, other shifted right."""
        off = self.block_count
        labels = (
            self.upper_labels
            + tuple(b + off for b in other.upper_labels)
            + self.lower_labels
            + tuple(b + off for b in other.lower_labels)
        )
        return Partition(self.upper + other.upper, self.lower + other.lower, labels)

    def involute(self) -> "Partition":
        """Turn upside down: rows swapped, left-right order kept."""
        return Partition(self.lower, self.upper, self.lower_labels + self.upper_labels)

    def rotate(self, which: str) -> "Partition":
        """Basic left rotation.

        'upper_to_lower' moves the first upper leg to the front of the lower
        row; 'lower_to_upper' is its inverse.
        """
        if which == "upper_to_lower":
            if self.upper == 0:
                raise PartitionError("upper row is empty")
            labels = self.labels[1 : self.upper] + (self.labels[0],) + self.lower_labels
            return Partition(self.upper - 1, self.lower + 1, labels)
        if which == "lower_to_upper":
            if self.lower == 0:
                raise PartitionError("lower row is empty")
            labels = (
                (self.labels[self.upper],)
                + self.upper_labels
                + self.labels[self.upper + 1 :]
            )
            return Partition(self.upper + 1, self.lower - 1, labels)
        raise PartitionError(f"unknown rotation {which!r}")

    # -- boundary word ----------------------------------------------------

    def boundary_labels(self) -> tuple[int, ...]:
        """Labels in the cyclic boundary order: upper left-to-right, then
        lower right-to-left.  Basic rotations shift this word cyclically and
        involution reverses it."""
        return _normalize(self.upper_labels + tuple(reversed(self.lower_labels)))

    def one_line_form(self) -> "Partition":
        """The one-line partition with the same boundary word."""
        return Partition(self.points, 0, self.boundary_labels())

    @classmethod
    def from_boundary(cls, boundary: Sequence[int], upper: int) -> "Partition":
        """Partition whose boundary word is `boundary`, split at `upper`."""
        if not 0 <= upper <= len(boundary):
            raise PartitionError("split out of range")
        labels = tuple(boundary[:upper]) + tuple(reversed(boundary[upper:]))
        return cls(upper, len(boundary) - upper, labels)


EMPTY = Partition(0, 0, ())


def compose(q: Partition, p: Partition) -> tuple[Partition, int]:
    """Composition qp: p stacked above q, glued along the middle row.

    Requires q.upper == p.lower.  Returns the outer partition in
    P(p.upper, q.lower) together with the number of closed middle loops.
    """
    if q.upper != p.lower:
        raise PartitionError(
            f"cannot compose: q has {q.upper} upper points, p has {p.lower} lower"
        )
    np_, nq = p.points, q.points
    parent = list(range(np_ + nq))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    first_of_block: dict[int, int] = {}
    for pt, b in enumerate(p.labels):
        if b in first_of_block:
            union(first_of_block[b], pt)
        else:
            first_of_block[b] = pt
    first_of_block = {}
    for pt, b in enumerate(q.labels):
        if b in first_of_block:
            union(first_of_block[b] + np_, pt + np_)
        else:
            first_of_block[b] = pt
    for i in range(p.lower):
        union(p.upper + i, np_ + i)

    outer = list(range(p.upper)) + list(range(np_ + q.upper, np_ + nq))
    labels = [find(pt) for pt in outer]
    outer_roots = set(labels)
    middle_roots = {
        find(pt) for pt in range(p.upper, np_ + q.upper)
    }
    loops = len(middle_roots - outer_roots)
    return Partition(p.upper, q.lower, labels), loops


def ker(index: Sequence[int]) -> Partition:
    """One-line partition whose blocks are the level sets of the tuple."""
    if len(index) == 0:
        raise PartitionError("ker of the empty tuple")
    return Partition(len(index), 0, index)


def delta(p: Partition, i: Sequence[int], j: Sequence[int]) -> int:
    """1 iff the labelling (i upper, j lower) is constant on every block."""
    if len(i) != p.upper or len(j) != p.lower:
        raise PartitionError(
            f"labelling shape ({len(i)},{len(j)}) does not match ({p.upper},{p.lower})"
        )
    values = tuple(i) + tuple(j)
    block_value: dict[int, int] = {}
    for b, v in zip(p.labels, values):
        if block_value.setdefault(b, v) != v:
            return 0
    return 1


def is_compatible_labelling(p: Partition, i: Sequence[int]) -> bool:
    """For a one-line partition: every block carries a single index value."""
    if not p.is_one_line():
        raise PartitionError("labelling compatibility is for one-line partitions")
    return delta(p, i, ()) == 1


def enumerate_partitions(
    k: int, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[Partition]:
    """All set partitions of k one-line points, in restricted-growth order."""
    if k > limit:
        raise PartitionError(f"k={k} exceeds the enumeration limit {limit}")
    return [Partition(k, 0, rgs) for rgs in restricted_growth_strings(k)]


def restricted_growth_strings(k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return

    def rec(prefix: list[int], mx: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(mx + 2):
            prefix.append(v)
            yield from rec(prefix, max(mx, v))
            prefix.pop()

    yield from rec([], -1)


# -- named partitions -----------------------------------------------------

def pair() -> Partition:
    """The pair partition as a one-line two-point block, ker((1,1))."""
    return ker((1, 1))


def pair_lower() -> Partition:
    return pair().involute()


def identity_partition() -> Partition:
    """The through-string in P(1,1)."""
    return Partition(1, 1, (0, 0))


def singleton() -> Partition:
    return ker((1,))


def double_singleton() -> Partition:
    return ker((1, 2))


def four_block() -> Partition:
    return ker((1, 1, 1, 1))


def primary_part() -> Partition:
    """Six points, one-line word aabaab."""
    return ker((1, 1, 2, 1, 1, 2))


def half_lib_part() -> Partition:
    """Six points, the pairing abcabc."""
    return ker((1, 2, 3, 1, 2, 3))


def h_series_part(s: int) -> Partition:
    """The 2s-point pattern abab...ab."""
    if s < 1:
        raise PartitionError("s must be positive")
    return ker(tuple([1, 2] * s))
