"""Small helpers for permutations given as image tuples on 0..m-1."""

from __future__ import annotations

from itertools import permutations as _permutations
from typing import Iterable, Iterator


def identity(m: int) -> tuple[int, ...]:
    return tuple(range(m))


def mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Composition p after q: (p*q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def transposition(m: int, a: int, b: int) -> tuple[int, ...]:
    out = list(range(m))
    out[a], out[b] = out[b], out[a]
    return tuple(out)


def all_permutations(m: int) -> Iterator[tuple[int, ...]]:
    return _permutations(range(m))


def closure(generators: Iterable[tuple[int, ...]], max_size: int | None = None) -> set[tuple[int, ...]]:
    """BFS closure of the generated permutation group."""
    gens = list(generators)
    if not gens:
        return set()
    seen = {identity(len(gens[0]))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = mul(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if max_size is not None and len(seen) > max_size:
                        raise OverflowError("permutation closure exceeds bound")
        frontier = nxt
    return seen


def star_word(p: tuple[int, ...]) -> tuple[int, ...]:
    """Write p as a product of star transpositions (0 i), returned as the
    tuple of i's (left-to-right, composed left factor first)."""
    m = len(p)
    letters: list[int] = []
    cur = p
    # peel cycles through the point 0
    while cur != identity(m):
        if cur[0] != 0:
            i = cur[0]
            letters.append(i)
            cur = mul(transposition(m, 0, i), cur)
        else:
            x = next(x for x in range(m) if cur[x] != x)
            letters.extend([x, cur[x], x])
            cur = mul(transposition(m, x, cur[x]), cur)
    # each appended factor is an involution left-multiplied onto p, so
    # p equals the product of the factors in accumulation order
    return tuple(letters)
