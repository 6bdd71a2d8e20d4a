"""Word-level kernel membership and invariance checks for moment tables.

A moment table assigns exact rationals to monoid words; the checks are the
finitely verifiable conditions a kernel-invariant state must satisfy:
vanishing off the kernel, symmetry under letter permutations, and agreement
with the exponent-sorted word inside the kernel.  The expectation-valued
probabilistic content is deliberately out of scope; tables are plain scalars.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .reflection import (
    BoundExceeded,
    ReflectionGroupSpec,
    coxeter_is_trivial,
    enumerate_group,
)
from .words import Word, reduce_word

MonoidWord = tuple[int, ...]


def _signed_coordinates(w: MonoidWord, n: int, modulus: int | None) -> tuple:
    """Image of w in the twisted abelian model: a_i carries the i-th basis
    vector (the n-th is zero) and a sign flip; the flip negates what follows.
    Exact for the series with abelian even part."""
    vec = [0] * (n - 1)
    sign = 1
    for x in w:
        if not 1 <= x <= n:
            raise ValueError(f"letter {x} out of range 1..{n}")
        if x < n:
            vec[x - 1] += sign
        sign = -sign
    if modulus is not None:
        vec = [v % modulus for v in vec]
    return tuple(vec), len(w) % 2


def is_in_kernel(w: MonoidWord, spec: ReflectionGroupSpec, max_order: int = 4096) -> str:
    """Tri-state triviality of the image of w in the quotient group."""
    n = spec.n
    if spec.series in ("h_paren", "h_star"):
        vec, parity = _signed_coordinates(w, n, spec.s)
        return "yes" if parity == 0 and not any(vec) else "no"
    if spec.series == "h_bracket":
        red = reduce_word(w)
        if spec.s is None:
            return "yes" if red == () else "no"
        if spec.s == 1:
            return "yes" if len(w) % 2 == 0 else "no"
        return "yes" if coxeter_is_trivial(red, spec.s, n) else "no"
    try:
        model = enumerate_group(spec, max_order)
    except BoundExceeded:
        return "unknown"
    return "yes" if model.eval_word(w) == model.identity else "no"


def is_balanced(w: MonoidWord, n: int) -> bool:
    """Kernel membership for the quotient by a_i a_j a_k = a_k a_j a_i alone."""
    vec, parity = _signed_coordinates(w, n, None)
    return parity == 0 and not any(vec)


def exponent_sorted_word(w: MonoidWord, n: int) -> MonoidWord:
    counts = [0] * n
    for x in w:
        counts[x - 1] += 1
    out: list[int] = []
    for i, c in enumerate(counts, start=1):
        out.extend([i] * c)
    return tuple(out)


class MomentTableError(ValueError):
    pass


@dataclass
class MomentTable:
    n: int
    degree: int
    moments: dict[MonoidWord, Fraction]

    def __post_init__(self):
        if self.moments.get((), None) != Fraction(1):
            raise MomentTableError("the empty word must carry moment 1")

    def value(self, w: MonoidWord) -> Fraction:
        if w not in self.moments:
            raise MomentTableError(f"moment for word {w} missing")
        return self.moments[w]

    def is_complete(self) -> bool:
        for k in range(self.degree + 1):
            for w in product(range(1, self.n + 1), repeat=k):
                if w not in self.moments:
                    return False
        return True

    @staticmethod
    def _word_key(w: MonoidWord) -> str:
        return "e" if not w else " ".join(str(x) for x in w)

    @staticmethod
    def _parse_key(key: str) -> MonoidWord:
        if key == "e":
            return ()
        return tuple(int(tok) for tok in key.split())

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "degree": self.degree,
            "moments": {
                self._word_key(w): str(v)
                for w, v in sorted(self.moments.items())
            },
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MomentTable":
        payload = json.loads(text)
        try:
            moments = {
                cls._parse_key(k): Fraction(v)
                for k, v in payload["moments"].items()
            }
            return cls(int(payload["n"]), int(payload["degree"]), moments)
        except (KeyError, ValueError) as exc:
            raise MomentTableError(f"bad moment table: {exc}") from exc


def plus_minus_one_table(n: int, degree: int) -> MomentTable:
    """Moments of independent symmetric ±1 variables: 1 when every letter
    occurs an even number of times, else 0."""
    moments: dict[MonoidWord, Fraction] = {}
    for k in range(degree + 1):
        for w in product(range(1, n + 1), repeat=k):
            counts = [0] * n
            for x in w:
                counts[x - 1] += 1
            moments[w] = Fraction(1 if all(c % 2 == 0 for c in counts) else 0)
    return MomentTable(n, degree, moments)


def invariance_check(table: MomentTable, spec: ReflectionGroupSpec) -> dict:
    """Word-by-word invariance conditions up to the table's degree:
    (a) zero off the kernel, (b) letter-permutation symmetry, (c) kernel
    words agree with their exponent-sorted form."""
    if table.n != spec.n:
        raise MomentTableError("table and spec disagree on the letter count")
    if not table.is_complete():
        raise MomentTableError("table incomplete below its degree bound")
    n = table.n
    sym = list(permutations(range(1, n + 1)))
    violations_a: list[list[int]] = []
    violations_b: list[list[int]] = []
    violations_c: list[list[int]] = []
    undecided = 0
    for k in range(1, table.degree + 1):
        for w in product(range(1, n + 1), repeat=k):
            status = is_in_kernel(w, spec)
            value = table.value(w)
            if status == "unknown":
                undecided += 1
            elif status == "no":
                if value != 0:
                    violations_a.append(list(w))
            else:
                if value != table.value(exponent_sorted_word(w, n)):
                    violations_c.append(list(w))
            for sigma in sym:
                if table.value(tuple(sigma[x - 1] for x in w)) != value:
                    violations_b.append(list(w))
                    break
    passed = not (violations_a or violations_b or violations_c)
    return {
        "n": n,
        "degree": table.degree,
        "series": spec.series,
        "s": spec.s,
        "violations_off_kernel": violations_a[:20],
        "violations_symmetry": violations_b[:20],
        "violations_sorted_factorization": violations_c[:20],
        "violation_counts": {
            "off_kernel": len(violations_a),
            "symmetry": len(violations_b),
            "sorted_factorization": len(violations_c),
        },
        "undecided": undecided,
        "passed": passed,
    }
