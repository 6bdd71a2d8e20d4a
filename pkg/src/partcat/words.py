"""Exact arithmetic in the free product of order-2 groups.

Words are tuples of positive integer letters.  A reduced word has no two equal
adjacent letters; since every generator is an involution, inversion is letter
reversal.  Monoid words (no cancellation) use the same representation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import reduce as _reduce
from typing import Callable, Iterable, Mapping, Sequence

from . import perms
from .partitions import Partition, is_compatible_labelling

Word = tuple[int, ...]

EMPTY_WORD: Word = ()


class WordError(ValueError):
    pass


def reduce_word(seq: Sequence[int]) -> Word:
    """Free reduction: delete adjacent equal pairs until none remain."""
    stack: list[int] = []
    for x in seq:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_reduced(w: Sequence[int]) -> bool:
    return all(a != b for a, b in zip(w, w[1:]))


def multiply(v: Word, w: Word) -> Word:
    return reduce_word(v + w)


def invert(w: Word) -> Word:
    return tuple(reversed(w))


def conjugate(i0: int, w: Word) -> Word:
    """Ad(a_i0)(w) = a_i0 w a_i0."""
    return reduce_word((i0,) + tuple(w) + (i0,))


def apply_letter_map(phi: Mapping[int, int], w: Sequence[int], reduced: bool = True) -> Word:
    """Apply a letter identification letterwise; reduce for group words."""
    try:
        mapped = [phi[x] for x in w]
    except KeyError as exc:
        raise WordError(f"letter map undefined on letter {exc.args[0]}") from exc
    return reduce_word(mapped) if reduced else tuple(mapped)


def support(words: Iterable[Sequence[int]]) -> tuple[int, ...]:
    letters = sorted({x for w in words for x in w})
    return tuple(letters)


def exponent_vector(w: Sequence[int], n: int) -> tuple[int, ...]:
    """Occurrence count of each letter 1..n."""
    counts = [0] * n
    for x in w:
        if not 1 <= x <= n:
            raise WordError(f"letter {x} out of range 1..{n}")
        counts[x - 1] += 1
    return tuple(counts)


def word_of_labelled_partition(p: Partition, i: Sequence[int]) -> Word:
    """The reduced word a_{i_1}...a_{i_k} of a compatibly labelled partition."""
    if not is_compatible_labelling(p, i):
        raise WordError(f"labelling {tuple(i)} incompatible with {p.text()}")
    return reduce_word(i)


def conjugate_rotation_identity_check(p: Partition, i: Sequence[int], i0: int) -> bool:
    """Verify that conjugating w(p, i) by a single letter equals the word of
    the rotated partition p' = p (x) pair with the rightmost leg in front,
    labelled (i0, i, i0)."""
    lhs = conjugate(i0, word_of_labelled_partition(p, i))
    k = p.upper
    # p (x) pair, then the last boundary point moved to the front
    widened = p.tensor(Partition(2, 0, (0, 0)))
    boundary = widened.boundary_labels()
    rotated = Partition(k + 2, 0, (boundary[-1],) + boundary[:-1])
    rhs = word_of_labelled_partition(rotated, (i0,) + tuple(i) + (i0,))
    return lhs == rhs


# -- letter maps ----------------------------------------------------------

def elementary_letter_maps(letters: Sequence[int]) -> list[dict[int, int]]:
    """Transpositions and single identifications on the letter set.  These
    generate every self-map of the letters under composition."""
    maps = []
    for a in letters:
        for b in letters:
            if a == b:
                continue
            swap = {x: x for x in letters}
            swap[a], swap[b] = b, a
            maps.append(swap)
            ident = {x: x for x in letters}
            ident[a] = b
            maps.append(ident)
    return maps


def letter_map_orbit(words: Iterable[Word], letters: Sequence[int]) -> set[Word]:
    """Closure of a word set under all letter maps into the given alphabet.
    Finite: letter maps never increase reduced length."""
    maps = elementary_letter_maps(letters)
    seen = set(words)
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for phi in maps:
                img = apply_letter_map(phi, w)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


# -- bounded subgroup saturation ------------------------------------------

Witness = tuple


@dataclass
class SubgroupCache:
    """Bounded saturation of the smallest normal, letter-map-invariant
    subgroup containing the generators."""

    n: int
    generators: tuple[Word, ...]
    max_length: int
    slack: int
    letters: tuple[int, ...]
    witnesses: dict[Word, Witness]
    complete: bool

    def words(self) -> set[Word]:
        """Elements found, restricted to the reported length bound."""
        return {w for w in self.witnesses if len(w) <= self.max_length}

    def __contains__(self, w: Word) -> bool:
        return w in self.witnesses and len(w) <= self.max_length

    def derivation(self, w: Word) -> list[tuple]:
        """Parent-pointer trace from generators to w, oldest step first."""
        if w not in self.witnesses:
            raise WordError(f"{w} not in cache")
        steps: list[tuple] = []
        stack = [w]
        seen: set[Word] = set()
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            wit = self.witnesses[cur]
            steps.append((cur,) + wit)
            for parent in wit[1:]:
                if isinstance(parent, tuple) and parent in self.witnesses:
                    stack.append(parent)
        steps.reverse()
        return steps


class CacheBoundExceeded(RuntimeError):
    def __init__(self, cache: SubgroupCache):
        super().__init__("subgroup saturation cache bound exceeded")
        self.cache = cache


def closure_generate(
    generators: Iterable[Sequence[int]],
    n: int | None,
    max_length: int,
    max_count: int,
    slack: int = 2,
) -> SubgroupCache:
    """Saturate under products, inverses, single-letter conjugation and
    letter maps, keeping reduced words of length <= max_length + slack.

    For n=None (unbounded letters) the alphabet is the generator support plus
    one fresh letter; the bound is recorded on the cache.
    """
    gens = tuple(sorted({reduce_word(g) for g in generators}))
    if n is None:
        sup = support(gens)
        letters = sup + ((max(sup) + 1,) if sup else (1,))
        n_eff = max(letters)
    else:
        letters = tuple(range(1, n + 1))
        n_eff = n
    for g in gens:
        for x in g:
            if x not in letters:
                raise WordError(f"generator letter {x} outside alphabet")
    bound = max_length + slack
    maps = elementary_letter_maps(letters)

    witnesses: dict[Word, Witness] = {EMPTY_WORD: ("identity",)}
    queue: deque[Word] = deque([EMPTY_WORD])
    complete = True

    def add(w: Word, wit: Witness) -> None:
        if len(w) <= bound and w not in witnesses:
            witnesses[w] = wit
            queue.append(w)

    for g in gens:
        add(g, ("generator",))

    while queue:
        if len(witnesses) > max_count:
            complete = False
            break
        w = queue.popleft()
        add(invert(w), ("inverse", w))
        for i0 in letters:
            add(conjugate(i0, w), ("conjugate", i0, w))
        for phi in maps:
            img = apply_letter_map(phi, w)
            if img != w:
                add(img, ("letter_map", tuple(sorted(phi.items())), w))
        for v in list(witnesses):
            add(multiply(w, v), ("product", w, v))
            add(multiply(v, w), ("product", v, w))

    return SubgroupCache(
        n=n_eff,
        generators=gens,
        max_length=max_length,
        slack=slack,
        letters=letters,
        witnesses=witnesses,
        complete=complete,
    )


# -- non-membership certificates ------------------------------------------

class Certificate:
    """Exact homomorphism-based exclusion test for subgroup membership."""

    name = "certificate"

    def applies(self, cache: SubgroupCache) -> bool:
        raise NotImplementedError

    def excludes(self, w: Word) -> bool:
        raise NotImplementedError


class ParityCertificate(Certificate):
    """Length parity modulo 2; valid when every generator has even length
    (parity is invariant under all saturation moves)."""

    name = "length-parity"

    def applies(self, cache: SubgroupCache) -> bool:
        return all(len(g) % 2 == 0 for g in cache.generators)

    def excludes(self, w: Word) -> bool:
        return len(w) % 2 == 1


class AbelianizationCertificate(Certificate):
    """Image subgroup in (Z/2)^n spanned by the letter-map orbit of the
    generators; words mapping outside the span cannot be members."""

    name = "abelianization"

    def __init__(self) -> None:
        self._span: set[Word] | None = None
        self._letters: tuple[int, ...] = ()

    def _vec(self, w: Word) -> tuple[int, ...]:
        return tuple(sum(1 for x in w if x == a) % 2 for a in self._letters)

    def applies(self, cache: SubgroupCache) -> bool:
        self._letters = cache.letters
        orbit = letter_map_orbit(set(cache.generators), cache.letters)
        vectors = {self._vec(w) for w in orbit}
        span = {tuple([0] * len(self._letters))}
        frontier = list(vectors)
        while frontier:
            v = frontier.pop()
            new = []
            for u in span:
                s = tuple((a + b) % 2 for a, b in zip(u, v))
                if s not in span:
                    new.append(s)
            span.update(new)
            frontier.extend(x for x in new if x not in vectors)
        self._span = span
        return True

    def excludes(self, w: Word) -> bool:
        assert self._span is not None
        return self._vec(w) not in self._span


class PermutationRepCertificate(Certificate):
    """The star-transposition representation a_i -> (0 i) into S_{n+1};
    valid when the full letter-map orbit of the generators maps to the
    identity permutation."""

    name = "star-permutation-representation"

    def __init__(self, n: int):
        self.n = n

    def _eval(self, w: Word) -> tuple[int, ...]:
        m = self.n + 1
        return _reduce(
            perms.mul, (perms.transposition(m, 0, x) for x in w), perms.identity(m)
        )

    def applies(self, cache: SubgroupCache) -> bool:
        if max(cache.letters, default=0) > self.n:
            return False
        orbit = letter_map_orbit(set(cache.generators), cache.letters)
        return all(self._eval(w) == perms.identity(self.n + 1) for w in orbit)

    def excludes(self, w: Word) -> bool:
        return self._eval(w) != perms.identity(self.n + 1)


class QuotientCertificate(Certificate):
    """Evaluation in a user-supplied quotient (e.g. a finite group model).

    eval_fn maps a word to a hashable value; identity is the value of the
    empty word.  Valid when the letter-map orbit of the generators evaluates
    to the identity.
    """

    def __init__(self, name: str, eval_fn: Callable[[Word], object]):
        self.name = name
        self.eval_fn = eval_fn
        self._identity = eval_fn(EMPTY_WORD)

    def applies(self, cache: SubgroupCache) -> bool:
        orbit = letter_map_orbit(set(cache.generators), cache.letters)
        return all(self.eval_fn(w) == self._identity for w in orbit)

    def excludes(self, w: Word) -> bool:
        return self.eval_fn(w) != self._identity


BUILTIN_CERTIFICATES: tuple[Callable[[SubgroupCache], Certificate], ...] = (
    lambda cache: ParityCertificate(),
    lambda cache: AbelianizationCertificate(),
    lambda cache: PermutationRepCertificate(cache.n),
)


@dataclass
class MembershipResult:
    status: str  # "member" | "nonmember" | "unknown"
    derivation: list[tuple] | None = None
    certificate: str | None = None


def membership(
    cache: SubgroupCache,
    w: Sequence[int],
    certificates: Iterable[Certificate] = (),
) -> MembershipResult:
    """Three-valued bounded membership in the saturated subgroup."""
    word = reduce_word(w)
    if word in cache.witnesses:
        return MembershipResult("member", derivation=cache.derivation(word))
    candidates = list(certificates) + [make(cache) for make in BUILTIN_CERTIFICATES]
    for cert in candidates:
        if cert.applies(cache) and cert.excludes(word):
            return MembershipResult("nonmember", certificate=cert.name)
    return MembershipResult("unknown")


# -- even-subgroup endomorphism probe -------------------------------------

def random_involution_image(rng, letters: Sequence[int], max_conj: int = 3) -> Word:
    """A random involution: a conjugate v a_j v^-1 of a generator."""
    j = rng.choice(letters)
    v = reduce_word([rng.choice(letters) for _ in range(rng.randrange(max_conj + 1))])
    return reduce_word(v + (j,) + invert(v))


def is_fully_characteristic_even_check(
    sample_size: int, rng, max_word_len: int = 12, alphabet: int = 6
) -> bool:
    """Sample endomorphisms sending each generator to an involution and check
    that images of even-length words have even length."""
    letters = tuple(range(1, alphabet + 1))
    for _ in range(sample_size):
        length = 2 * rng.randrange(max_word_len // 2 + 1)
        w = reduce_word([rng.choice(letters) for _ in range(length)])
        if len(w) % 2 == 1:
            raise AssertionError("free reduction changed parity")
        images = {a: random_involution_image(rng, letters) for a in letters}
        img: list[int] = []
        for x in w:
            img.extend(images[x])
        if len(reduce_word(img)) % 2 == 1:
            return False
    return True
