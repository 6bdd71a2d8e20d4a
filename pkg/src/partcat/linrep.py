"""The 0/1 matrices attached to partitions and exact intertwiner ranks.

A partition with k upper and l lower points gives a linear map from the k-th
to the l-th tensor power of an n-dimensional space; the matrix entry at
(lower tuple j, upper tuple i) is 1 exactly when the combined labelling is
constant on every block.  Matrices are stored sparsely as the set of those
index pairs.  Tuple indexing is big-endian: the leftmost leg is the most
significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .categories import Category
from .partitions import Partition, PartitionError, compose

SIZE_LIMIT = 4_000_000

Idx = tuple[int, ...]


@dataclass(frozen=True)
class TpMatrix:
    n: int
    k: int
    l: int
    entries: frozenset[tuple[Idx, Idx]]

    @property
    def rows(self) -> int:
        return self.n**self.l

    @property
    def cols(self) -> int:
        return self.n**self.k

    def transpose(self) -> "TpMatrix":
        return TpMatrix(self.n, self.l, self.k, frozenset((i, j) for j, i in self.entries))

    def kron(self, other: "TpMatrix") -> "TpMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        entries = frozenset(
            (j1 + j2, i1 + i2)
            for j1, i1 in self.entries
            for j2, i2 in other.entries
        )
        return TpMatrix(self.n, self.k + other.k, self.l + other.l, entries)

    def matmul(self, other: "TpMatrix") -> dict[tuple[Idx, Idx], int]:
        """Integer product self x other (entries can exceed 1)."""
        if self.n != other.n or self.k != other.l:
            raise ValueError("shape mismatch")
        by_mid: dict[Idx, list[Idx]] = {}
        for mid, i in other.entries:
            by_mid.setdefault(mid, []).append(i)
        out: dict[tuple[Idx, Idx], int] = {}
        for j, mid in self.entries:
            for i in by_mid.get(mid, ()):
                out[(j, i)] = out.get((j, i), 0) + 1
        return out


def t_matrix(p: Partition, n: int) -> TpMatrix:
    """Exact matrix of the partition map: one nonzero per assignment of a
    value in 1..n to each block."""
    if n < 1:
        raise ValueError("n must be positive")
    if n ** (p.upper + p.lower) > SIZE_LIMIT:
        raise PartitionError("matrix size limit exceeded")
    entries = set()
    for values in product(range(1, n + 1), repeat=p.block_count):
        filled = tuple(values[b] for b in p.labels)
        i = filled[: p.upper]
        j = filled[p.upper :]
        entries.add((j, i))
    return TpMatrix(n, p.upper, p.lower, frozenset(entries))


def verify_functoriality(p: Partition, q: Partition, n: int) -> bool:
    """Tensor, involution and (when composable) composition identities for
    the partition matrices, with exact integer arithmetic."""
    tp, tq = t_matrix(p, n), t_matrix(q, n)
    if t_matrix(p.tensor(q), n) != tp.kron(tq):
        return False
    if t_matrix(p.involute(), n) != tp.transpose():
        return False
    if q.upper == p.lower:
        qp, loops = compose(q, p)
        got = tq.matmul(tp)
        want = {(j, i): n**loops for j, i in t_matrix(qp, n).entries}
        if got != want:
            return False
    return True


def _rank(vectors: list[dict]) -> int:
    """Exact rank of rational row vectors by Gaussian elimination."""
    keys = sorted({key for vec in vectors for key in vec})
    col = {key: t for t, key in enumerate(keys)}
    rows = []
    for vec in vectors:
        row = [Fraction(0)] * len(keys)
        for key, val in vec.items():
            row[col[key]] = Fraction(val)
        rows.append(row)
    rank = 0
    for c in range(len(keys)):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                factor = rows[r][c] / prow[c]
                rows[r] = [x - factor * y for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def hom_space_dimension(cat: Category, k: int, l: int, n: int) -> int:
    """Rank over the rationals of the span of the member matrices at shape
    (k, l); a lower bound when the cache is incomplete (the flag is on the
    category)."""
    members = cat.members(k, l)
    vectors = [
        {entry: 1 for entry in t_matrix(p, n).entries} for p in members
    ]
    if k + l == 0:
        # the scalars: spanned by the empty partition when cached
        return 1 if members or () in cat.core else 0
    return _rank(vectors)
