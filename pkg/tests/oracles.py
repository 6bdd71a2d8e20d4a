"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive: direct four-operation saturation on
mixed shapes, affine integer models, and brute-force closures.  Slow but
obviously correct at the sizes the tests use.
"""

from __future__ import annotations

from itertools import product

from partcat.partitions import Partition, compose, pair, identity_partition


def naive_saturate(generators, max_points):
    """Fixed point of tensor/compose/involute/rotate on explicit partitions,
    keeping every intermediate within the point bound."""
    seen = {pair(), pair().involute(), identity_partition(), Partition(0, 0, ())}
    seen.update(generators)
    while True:
        fresh = set()
        items = list(seen)
        for p in items:
            fresh.add(p.involute())
            if p.upper:
                fresh.add(p.rotate("upper_to_lower"))
            if p.lower:
                fresh.add(p.rotate("lower_to_upper"))
        for p in items:
            for q in items:
                if p.points + q.points <= max_points:
                    fresh.add(p.tensor(q))
                if q.upper == p.lower:
                    fresh.add(compose(q, p)[0])
        fresh = {r for r in fresh if r.points <= max_points}
        if fresh <= seen:
            return seen
        seen |= fresh


def affine_star_eval(w, n):
    """Image of a word in the half-liberated quotient via affine maps on
    Z^{n-1}: letter i acts by v -> e_i - v (the n-th letter by v -> -v)."""
    sign, shift = 1, [0] * (n - 1)
    for x in w:
        basis = [0] * (n - 1)
        if x < n:
            basis[x - 1] = 1
        shift = [sign * b + t for b, t in zip(basis, shift)]
        sign = -sign
    return sign, tuple(shift)


def signed_model_elements(n, s):
    """The group (Z_s)^{n-1} x Z_2 with the flip acting by negation, built
    by plain closure from the generator images; element count is the order
    of the pair-order-s series group with half-liberation."""
    def mul(a, b):
        (va, ea), (vb, eb) = a, b
        sign = -1 if ea else 1
        return (tuple((x + sign * y) % s for x, y in zip(va, vb)), ea ^ eb)

    gens = []
    for i in range(1, n + 1):
        vec = [0] * (n - 1)
        if i < n:
            vec[i - 1] = 1
        gens.append((tuple(vec), 1))
    seen = {(tuple([0] * (n - 1)), 0)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def reduced_words(letters, max_length):
    yield ()
    frontier = [()]
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


def all_monoid_words(n, max_length):
    for k in range(max_length + 1):
        yield from product(range(1, n + 1), repeat=k)
