"""Quotients of the free product of n order-2 generators.

Groups are presented by relator words over letters 1..n (each generator is
implicitly an involution).  Small quotients are enumerated by Todd-Coxeter
coset enumeration over the trivial subgroup, so cosets are group elements.
The all-equal-exponent Coxeter case (every pair product has order s) also has
an exact word-equality test via braid-move rewriting, used where the group is
infinite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import reduce as _reduce
from itertools import permutations

from . import perms
from .words import (
    Word,
    apply_letter_map,
    elementary_letter_maps,
    invert,
    reduce_word,
)


@dataclass(frozen=True)
class ReflectionGroupSpec:
    n: int
    relators: tuple[Word, ...]
    note: str = ""
    series: str | None = None  # "h_paren" | "h_bracket" | "h_star" | None
    s: int | None = None


def _pair_relators(n: int, s: int) -> list[Word]:
    return [tuple([i, j] * s) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _triple_relators(n: int) -> list[Word]:
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if len({i, j, k}) == 3:
                    out.append((i, j, k, i, j, k))
    return out


def hyperoctahedral_series_spec(n: int, s: int | None) -> ReflectionGroupSpec:
    """Pair products of order s plus the half-liberation relation; s=None
    drops the pair-order relators (the star variant)."""
    if n < 1 or (s is not None and s < 1):
        raise ValueError("need n >= 1 and s >= 1")
    triples = _triple_relators(n)
    if s is None:
        return ReflectionGroupSpec(
            n, tuple(triples), note="star variant", series="h_star", s=None
        )
    return ReflectionGroupSpec(
        n,
        tuple(_pair_relators(n, s) + triples),
        note=f"pair order {s} with half-liberation",
        series="h_paren",
        s=s,
    )


def higher_series_spec(n: int, s: int | None) -> ReflectionGroupSpec:
    """Only the pair-order relators; s=None means the free product itself."""
    if n < 1 or (s is not None and s < 1):
        raise ValueError("need n >= 1 and s >= 1")
    relators = () if s is None else tuple(_pair_relators(n, s))
    return ReflectionGroupSpec(
        n, relators, note=f"pair order {s}, no half-liberation", series="h_bracket", s=s
    )


def trivial_quotient_spec(n: int) -> ReflectionGroupSpec:
    """Every generator killed: the one-element group."""
    return ReflectionGroupSpec(n, tuple((i,) for i in range(1, n + 1)), note="trivial group")


def permute_relators(spec: ReflectionGroupSpec, sigma: tuple[int, ...]) -> set[Word]:
    """Image of the relator set under the letter permutation sigma (0-indexed
    image tuple on 0..n-1 acting on letters 1..n)."""
    phi = {i + 1: sigma[i] + 1 for i in range(spec.n)}
    return {apply_letter_map(phi, r) for r in spec.relators}


def relators_sn_invariant(spec: ReflectionGroupSpec) -> bool:
    base = set(spec.relators)
    return all(
        permute_relators(spec, sigma) == base for sigma in permutations(range(spec.n))
    )


def relators_letter_map_stable(spec: ReflectionGroupSpec) -> bool:
    """Each elementary letter map sends each relator to e or to another
    relator (a bounded witness of invariance of the normal closure)."""
    closed = set(spec.relators) | {invert(r) for r in spec.relators}
    letters = tuple(range(1, spec.n + 1))
    for phi in elementary_letter_maps(letters):
        for r in spec.relators:
            img = apply_letter_map(phi, r)
            if img and img not in closed:
                return False
    return True


# -- coset enumeration ----------------------------------------------------

class BoundExceeded(RuntimeError):
    pass


_UNSET = -1


class _CosetTable:
    """HLT-style enumeration over the trivial subgroup; union-find handles
    coincidences.  Generators are involutions, so letters are self-inverse
    and the table has one column per generator."""

    def __init__(self, n: int, relators: list[tuple[int, ...]], node_budget: int):
        self.n = n
        self.relators = relators
        self.node_budget = node_budget
        self.labels: list[int] = []
        self.rows: list[list[int]] = []
        self.add_vertex()

    def add_vertex(self) -> int:
        if len(self.labels) > self.node_budget:
            raise BoundExceeded("coset table node budget exhausted")
        c = len(self.labels)
        self.labels.append(c)
        self.rows.append([_UNSET] * self.n)
        return c

    def find(self, c: int) -> int:
        while self.labels[c] != c:
            self.labels[c] = self.labels[self.labels[c]]
            c = self.labels[c]
        return c

    def unify(self, c1: int, c2: int) -> None:
        pending = [(c1, c2)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.labels[b] = a
            for d in range(self.n):
                na, nb = self.rows[a][d], self.rows[b][d]
                if na == _UNSET:
                    self.rows[a][d] = nb
                elif nb != _UNSET:
                    pending.append((na, nb))

    def step(self, c: int, d: int) -> int:
        c = self.find(c)
        if self.rows[c][d] == _UNSET:
            new = self.add_vertex()
            self.rows[c][d] = new
            self.rows[new][d] = c
        return self.find(self.rows[c][d])

    def run(self) -> None:
        cursor = 0
        while cursor < len(self.labels):
            if self.find(cursor) == cursor:
                for rel in self.relators:
                    c = cursor
                    for d in rel:
                        c = self.step(c, d)
                    self.unify(c, cursor)
                    if self.find(cursor) != cursor:
                        break
            cursor += 1

    def live(self) -> list[int]:
        return [c for c in range(len(self.labels)) if self.find(c) == c]


class FiniteGroupModel:
    """Element table of a finite quotient: elements are coset ids, with the
    generator action, shortest representative words and exact multiplication."""

    def __init__(self, n: int, act: list[list[int]]):
        self.n = n
        self.act = act
        self.order = len(act)
        self.identity = 0
        self.reps = self._shortest_words()

    def _shortest_words(self) -> list[Word]:
        reps: dict[int, Word] = {0: ()}
        frontier = deque([0])
        while frontier:
            c = frontier.popleft()
            for d in range(self.n):
                nxt = self.act[c][d]
                if nxt not in reps:
                    reps[nxt] = reps[c] + (d + 1,)
                    frontier.append(nxt)
        if len(reps) != self.order:
            raise ValueError("generator action is not transitive")
        return [reps[c] for c in range(self.order)]

    def apply(self, element: int, word: Word) -> int:
        for letter in word:
            if not 1 <= letter <= self.n:
                raise ValueError(f"letter {letter} out of range 1..{self.n}")
            element = self.act[element][letter - 1]
        return element

    def eval_word(self, word: Word) -> int:
        return self.apply(self.identity, word)

    def mul(self, g: int, h: int) -> int:
        return self.apply(g, self.reps[h])

    def inv(self, g: int) -> int:
        out = self.identity
        for letter in reversed(self.reps[g]):
            out = self.act[out][letter - 1]
        return out

    def gen_element(self, i: int) -> int:
        return self.eval_word((i,))

    def element_order(self, g: int) -> int:
        k, cur = 1, g
        while cur != self.identity:
            cur = self.mul(cur, g)
            k += 1
            if k > self.order:
                raise ValueError("order computation overran the group")
        return k

    def permute(self, sigma: tuple[int, ...], g: int) -> int:
        """Image of g under the letter permutation a_i -> a_{sigma(i)}."""
        phi = {i + 1: sigma[i] + 1 for i in range(self.n)}
        return self.eval_word(apply_letter_map(phi, self.reps[g], reduced=False))


def enumerate_group(spec: ReflectionGroupSpec, max_order: int) -> FiniteGroupModel:
    """Exact order and multiplication table, or BoundExceeded if the closure
    does not fit (possibly-infinite group; never asserted infinite)."""
    if max_order < 1:
        raise ValueError("max_order must be positive")
    relators = [tuple(x - 1 for x in r) for r in spec.relators]
    relators += [(d, d) for d in range(spec.n)]
    table = _CosetTable(spec.n, relators, node_budget=200 * max_order + 2000)
    table.run()
    live = table.live()
    if len(live) > max_order:
        raise BoundExceeded(f"group order exceeds {max_order}")
    index = {c: i for i, c in enumerate(live)}
    act = [
        [index[table.find(table.rows[c][d])] for d in range(spec.n)] for c in live
    ]
    return FiniteGroupModel(spec.n, act)


# -- braid-move word equality (all pair orders equal to s) -----------------

def _braid_neighbours(word: Word, s: int, n: int) -> list[Word]:
    out = []
    for start in range(len(word) - s + 1):
        seg = word[start : start + s]
        x, y = seg[0], seg[1] if s > 1 else seg[0]
        if x == y or any(seg[t] != (x if t % 2 == 0 else y) for t in range(s)):
            continue
        flipped = tuple(y if t % 2 == 0 else x for t in range(s))
        out.append(word[:start] + flipped + word[start + s :])
    return out


def coxeter_canonical(word: Word, s: int, n: int) -> Word:
    """Canonical form in the Coxeter group where every pair product has order
    s: saturate braid moves, restarting from shorter words whenever a free
    cancellation appears; return the lexicographically least word found."""
    current = reduce_word(word)
    while True:
        seen = {current}
        queue = deque([current])
        shorter = None
        while queue:
            w = queue.popleft()
            red = reduce_word(w)
            if len(red) < len(w):
                shorter = red
                break
            for v in _braid_neighbours(w, s, n):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        if shorter is None:
            return min(seen)
        current = shorter


def coxeter_equal(v: Word, w: Word, s: int, n: int) -> bool:
    return coxeter_canonical(v, s, n) == coxeter_canonical(w, s, n)


def coxeter_is_trivial(w: Word, s: int, n: int) -> bool:
    return coxeter_canonical(w, s, n) == ()


# -- even subgroup --------------------------------------------------------

def even_subgroup_analysis(spec: ReflectionGroupSpec, max_order: int) -> dict:
    """Structure of the index-2 even subgroup, generated by b_i = a_n a_i.

    Uses the full element table when the group fits the bound; for the
    pair-order-only series the commutation questions are settled by the
    braid-move word calculus instead.
    """
    if any(len(r) % 2 for r in spec.relators):
        raise ValueError("even subgroup needs even-length relators")
    n = spec.n
    b_words = [(n, i) for i in range(1, n)]
    report: dict = {"n": n, "series": spec.series, "s": spec.s, "max_order": max_order}
    try:
        model = enumerate_group(spec, max_order)
    except BoundExceeded:
        model = None
    if model is not None:
        evens = [g for g in range(model.order) if len(model.reps[g]) % 2 == 0]
        b = [model.eval_word(w) for w in b_words]
        commute = all(
            model.mul(x, y) == model.mul(y, x) for x in b for y in b
        )
        report.update(
            order=model.order,
            bound_exceeded=False,
            even_order=len(evens),
            even_index=model.order // len(evens) if evens else None,
            b_orders=[model.element_order(x) for x in b],
            b_commute=commute,
        )
        if spec.series == "h_paren" and spec.s is not None:
            report["even_order_matches_power"] = len(evens) == spec.s ** (n - 1)
        return report
    report["bound_exceeded"] = True
    if spec.series == "h_bracket" and spec.s is not None and n >= 2:
        s = spec.s
        pairs_commute = all(
            coxeter_equal(b_words[i] + b_words[j], b_words[j] + b_words[i], s, n)
            for i in range(n - 1)
            for j in range(i + 1, n - 1)
        )
        orders = []
        for w in b_words:
            k = 1
            power = w
            while not coxeter_is_trivial(power, s, n) and k <= s:
                power = power + w
                k += 1
            orders.append(k if k <= s else None)
        report.update(b_commute=pairs_commute, b_orders=orders)
    return report


def sn_action_on_even_generators(
    sigma: tuple[int, ...], i: int, n: int
) -> tuple[tuple[int, int], ...]:
    """sigma(b_i) written in the b's, as (index, exponent) factors.

    sigma is an image tuple on 0..n-1 acting on generator subscripts 1..n;
    the exact identity is sigma(b_i) = b_{sigma(n)}^{-1} b_{sigma(i)}, which
    collapses when sigma fixes n or sends i to n.
    """
    if not 1 <= i <= n - 1:
        raise ValueError(f"i must be in 1..{n - 1}")
    si = sigma[i - 1] + 1
    sn = sigma[n - 1] + 1
    if sn == n:
        return ((si, 1),)
    if si == n:
        return ((sn, -1),)
    return ((sn, -1), (si, 1))


def expand_b_word(factors: tuple[tuple[int, int], ...], n: int) -> Word:
    """Expand a product of b_i^{±1} (b_i = a_n a_i) into a reduced a-word."""
    letters: list[int] = []
    for idx, exp in factors:
        if exp == 1:
            letters.extend((n, idx))
        elif exp == -1:
            letters.extend((idx, n))
        else:
            raise ValueError("exponents must be ±1")
    return reduce_word(letters)


def sn_action_is_exact(sigma: tuple[int, ...], i: int, n: int) -> bool:
    """Free-group verification: the b-word of sn_action_on_even_generators
    expands to a_{sigma(n)} a_{sigma(i)}."""
    expected = reduce_word((sigma[n - 1] + 1, sigma[i - 1] + 1))
    return expand_b_word(sn_action_on_even_generators(sigma, i, n), n) == expected


# -- semi-direct product model --------------------------------------------

def _group_algebra_mul(model: FiniteGroupModel, a: dict, b: dict) -> dict:
    out: dict = {}
    for g, x in a.items():
        for h, y in b.items():
            gh = model.mul(g, h)
            out[gh] = out.get(gh, 0) + x * y
    return {g: c for g, c in out.items() if c}


def semidirect_matrix_check(spec: ReflectionGroupSpec, n: int, max_order: int = 512) -> dict:
    """Formal unitarity and coassociativity of the fundamental matrix of the
    semi-direct product model over a finite quotient group.

    The algebra is functions from S_n to the integer group ring; the matrix
    entry (i,j) is the function sending sigma to g_i when sigma(j) = i and to
    0 otherwise.  Comultiplication on entries is the matrix-coefficient rule
    entry(i,j) -> sum_k entry(i,k) (x) entry(k,j).
    """
    if spec.n != n:
        raise ValueError("generator count must match the matrix size")
    if not relators_sn_invariant(spec):
        raise ValueError("relator set is not invariant under generator permutations")
    model = enumerate_group(spec, max_order)
    sym = list(perms.all_permutations(n))
    g = [model.gen_element(i + 1) for i in range(n)]
    e = model.identity

    def entry(i: int, j: int, sigma: tuple[int, ...]) -> dict:
        return {g[i]: 1} if sigma[j] == i else {}

    unit = True
    for sigma in sym:
        for i in range(n):
            for j in range(n):
                lhs = {}
                for k in range(n):
                    term = _group_algebra_mul(model, entry(i, k, sigma), entry(j, k, sigma))
                    for key, c in term.items():
                        lhs[key] = lhs.get(key, 0) + c
                rhs_t = {}
                for k in range(n):
                    term = _group_algebra_mul(model, entry(k, i, sigma), entry(k, j, sigma))
                    for key, c in term.items():
                        rhs_t[key] = rhs_t.get(key, 0) + c
                want = {e: 1} if i == j else {}
                lhs = {k: c for k, c in lhs.items() if c}
                rhs_t = {k: c for k, c in rhs_t.items() if c}
                if lhs != want or rhs_t != want:
                    unit = False

    coassoc = True
    for i in range(n):
        for j in range(n):
            for sigma in sym:
                for tau in sym:
                    for rho in sym:
                        lhs: dict = {}
                        rhs: dict = {}
                        for k in range(n):
                            for m in range(n):
                                a = entry(i, m, sigma)
                                b = entry(m, k, tau)
                                c = entry(k, j, rho)
                                if a and b and c:
                                    key = (next(iter(a)), next(iter(b)), next(iter(c)))
                                    lhs[key] = lhs.get(key, 0) + 1
                                a2 = entry(i, k, sigma)
                                b2 = entry(k, m, tau)
                                c2 = entry(m, j, rho)
                                if a2 and b2 and c2:
                                    key = (next(iter(a2)), next(iter(b2)), next(iter(c2)))
                                    rhs[key] = rhs.get(key, 0) + 1
                        if lhs != rhs:
                            coassoc = False

    return {
        "n": n,
        "gamma_order": model.order,
        "unitarity": unit,
        "coassociativity": coassoc,
        "relators_sn_invariant": True,
    }


# -- the non-easy kernel --------------------------------------------------

def star_transposition_image(w: Word, n: int) -> tuple[int, ...]:
    """Evaluate a_i -> (0 i) in the symmetric group on {0..n}."""
    m = n + 1
    return _reduce(perms.mul, (perms.transposition(m, 0, x) for x in w), perms.identity(m))


def _random_kernel_word(rng, n: int, max_extra: int) -> Word:
    """A word with identity image: random prefix, then the star-word of the
    inverse of its image."""
    u = tuple(rng.randrange(1, n + 1) for _ in range(rng.randrange(max_extra + 1)))
    img = star_transposition_image(u, n)
    return u + perms.star_word(perms.inv(img))


WITNESS_WORD: Word = (1, 2, 1, 3, 4, 3, 1, 2, 1, 3, 4, 3)


def non_easy_example_check(n: int, samples: int = 1000, rng=None, search_length: int = 10) -> dict:
    """The kernel of a_i -> (0 i) into the symmetric group on n+1 points is
    invariant under letter permutations but not under letter identifications.

    The explicit witness needs four distinct letters; for n = 3 a bounded
    search over short kernel words is run and its outcome reported.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if rng is None:
        import random

        rng = random.Random(0)
    m = n + 1
    group = perms.closure([perms.transposition(m, 0, i) for i in range(1, n + 1)])
    import math

    report: dict = {
        "n": n,
        "image_order": len(group),
        "surjective": len(group) == math.factorial(m),
    }

    failures = 0
    for _ in range(samples):
        w = _random_kernel_word(rng, n, max_extra=10)
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        phi = {i + 1: sigma[i] for i in range(n)}
        img = star_transposition_image(apply_letter_map(phi, w, reduced=False), n)
        if img != perms.identity(m):
            failures += 1
    report["invariance_samples"] = samples
    report["invariance_failures"] = failures

    if n >= 4:
        w = WITNESS_WORD
        phi = {1: 1, 2: 2, 3: 3, 4: 1}
        phi.update({i: i for i in range(5, n + 1)})
        image = star_transposition_image(w, n)
        mapped = star_transposition_image(apply_letter_map(phi, w, reduced=False), n)
        moved = [x for x in range(m) if mapped[x] != x]
        report["witness"] = {
            "word": list(w),
            "image_is_identity": image == perms.identity(m),
            "phi": {str(k): v for k, v in sorted(phi.items())},
            "mapped_moves": len(moved),
            "mapped_is_three_cycle": len(moved) == 3 and mapped != perms.identity(m),
        }
    else:
        found = _search_three_letter_witness(n, search_length)
        report["witness_search"] = {
            "max_length": search_length,
            "found": found is not None,
            "word": list(found[0]) if found else None,
            "phi": {str(k): v for k, v in found[1].items()} if found else None,
        }
    return report


def _search_three_letter_witness(n: int, max_length: int):
    """Look for a kernel word some letter identification pushes out of the
    kernel; exhaustive over reduced words up to the length bound."""
    m = n + 1
    ident = perms.identity(m)
    letters = tuple(range(1, n + 1))
    maps = [
        phi
        for phi in elementary_letter_maps(letters)
        if sorted(phi.values()) != sorted(letters)
    ]
    frontier: list[Word] = [()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == a:
                    continue
                v = w + (a,)
                nxt.append(v)
                if star_transposition_image(v, n) != ident:
                    continue
                for phi in maps:
                    if star_transposition_image(apply_letter_map(phi, v), n) != ident:
                        return v, phi
        frontier = nxt
    return None
