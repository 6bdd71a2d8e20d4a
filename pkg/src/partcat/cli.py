"""Batch front end: every verb runs bounded, emits a JSON report and exits
0 (success), 1 (check failed), 2 (usage error) or 3 (bound exhausted without
an answer).  Reports are deterministic for a fixed seed; the meta block
(timestamp, elapsed time) is the only part allowed to vary between runs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import categories, correspondence, definetti, linrep, reflection, words
from .partitions import Partition, PartitionError, ker, pair

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND = 3


class UsageError(Exception):
    pass


def _parse_word(text: str) -> words.Word:
    if text.strip() == "e":
        return ()
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError:
        raise UsageError(f"bad word {text!r}; expected e.g. '1 2 1 2' or 'e'")


def _parse_partitions(texts: list[str]) -> list[Partition]:
    try:
        return [Partition.parse(t) for t in texts]
    except PartitionError as exc:
        raise UsageError(str(exc))


def _series_spec(variant: str, n: int, s: int | None) -> reflection.ReflectionGroupSpec:
    if variant == "paren":
        if s is None:
            raise UsageError("variant 'paren' needs --s")
        return reflection.hyperoctahedral_series_spec(n, s)
    if variant == "bracket":
        return reflection.higher_series_spec(n, s)
    if variant == "star":
        return reflection.hyperoctahedral_series_spec(n, None)
    if variant == "trivial":
        return reflection.trivial_quotient_spec(n)
    raise UsageError(f"unknown variant {variant!r}")


def _emit(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _report_skeleton(args, results: dict) -> dict:
    inputs = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "out") and v is not None
    }
    return {
        "command": args.command,
        "seed": args.seed,
        "inputs": inputs,
        "results": results,
        "meta": {"timestamp": time.time()},
    }


# -- verb implementations --------------------------------------------------

def _cmd_saturate(args) -> tuple[dict, int]:
    gens = _parse_partitions(args.generator or [])
    cat = categories.saturate(gens, args.max_points, args.max_count)
    by_size: dict[str, int] = {}
    for w in cat.core:
        by_size[str(len(w))] = by_size.get(str(len(w)), 0) + 1
    results = {
        "core_size": len(cat.core),
        "one_line_members_by_points": by_size,
        "complete": cat.complete,
        "complete_up_to": cat.complete_up_to,
        "members": [p.text() for p in cat.one_line_members()],
    }
    return results, EXIT_OK if cat.complete else EXIT_BOUND


def _cmd_contains(args) -> tuple[dict, int]:
    gens = _parse_partitions(args.generator or [])
    cat = categories.saturate(gens, args.max_points, args.max_count)
    target = _parse_partitions([args.partition])[0]
    res = cat.contains(target)
    results = {
        "partition": target.text(),
        "status": res.status,
        "certificate": res.certificate,
        "derivation": [[list(step[0])] + list(step[1:2]) for step in res.derivation or []],
    }
    code = EXIT_OK if res.status in ("yes", "no") else EXIT_BOUND
    return results, code


def _cmd_fgroup(args) -> tuple[dict, int]:
    gens = _parse_partitions(args.generator or [])
    cat = categories.saturate(gens, args.max_points, args.max_count)
    fc = correspondence.f_group_generators(cat, args.n, args.length_bound)
    results = {
        "n": args.n,
        "length_bound": args.length_bound,
        "word_count": len(fc.words),
        "words": sorted(" ".join(map(str, w)) if w else "e" for w in fc.words),
    }
    return results, EXIT_OK


def _build_cache(args) -> words.SubgroupCache:
    gens = [_parse_word(r) for r in args.relator or []]
    return words.closure_generate(
        gens, args.n, args.word_length, args.max_cache
    )


def _exact_member(args):
    if not getattr(args, "exact", None):
        return None
    tag = args.exact
    if tag == "star":
        spec = reflection.hyperoctahedral_series_spec(args.n, None)
    elif tag.startswith("paren:"):
        spec = reflection.hyperoctahedral_series_spec(args.n, int(tag.split(":")[1]))
    elif tag.startswith("bracket:"):
        spec = reflection.higher_series_spec(args.n, int(tag.split(":")[1]))
    else:
        raise UsageError(f"bad --exact {tag!r}; use star, paren:S or bracket:S")
    return lambda w: definetti.is_in_kernel(w, spec) == "yes"


def _cmd_cat_from_subgroup(args) -> tuple[dict, int]:
    cache = _build_cache(args)
    cat, report = correspondence.category_from_subgroup(
        cache, args.max_points, member_fn=_exact_member(args)
    )
    report["one_line_members"] = [p.text() for p in cat.one_line_members()]
    report["cache_complete"] = cache.complete
    return report, EXIT_OK if cat.complete and cache.complete else EXIT_BOUND


def _cmd_roundtrip(args) -> tuple[dict, int]:
    cache = _build_cache(args)
    report = correspondence.roundtrip_check(
        cache,
        args.n,
        args.word_bound,
        args.point_bound,
        member_fn=_exact_member(args),
    )
    ok = report["forward_inclusion"]["holds"] and report["backward_inclusion"]["holds"]
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_diag(args) -> tuple[dict, int]:
    gens = _parse_partitions(args.generator or [])
    cat = categories.saturate(gens, args.max_points, args.max_count)
    spec = correspondence.diagonal_subgroup(cat, args.n, args.length_bound)
    results = {
        "n": spec.n,
        "note": spec.note,
        "relators": [" ".join(map(str, r)) for r in spec.relators],
    }
    return results, EXIT_OK


def _cmd_tpmat(args) -> tuple[dict, int]:
    p = _parse_partitions([args.partition])[0]
    mat = linrep.t_matrix(p, args.n)
    results = {
        "partition": p.text(),
        "n": args.n,
        "shape": [mat.rows, mat.cols],
        "entries": sorted([list(j), list(i)] for j, i in mat.entries),
    }
    return results, EXIT_OK


def _cmd_homdim(args) -> tuple[dict, int]:
    if args.category == "all":
        cat = categories.Category.full(max_points=args.k + args.l)
    else:
        gens = _parse_partitions(args.generator or [])
        cat = categories.saturate(gens, args.max_points, args.max_count)
    dim = linrep.hom_space_dimension(cat, args.k, args.l, args.n)
    results = {
        "k": args.k,
        "l": args.l,
        "n": args.n,
        "dimension": dim,
        "complete": cat.complete,
    }
    return results, EXIT_OK if cat.complete else EXIT_BOUND


def _cmd_series(args) -> tuple[dict, int]:
    spec = _series_spec(args.variant, args.n, args.s)
    results = {"n": args.n, "s": args.s, "variant": args.variant}
    try:
        model = reflection.enumerate_group(spec, args.max_order)
    except reflection.BoundExceeded:
        results["order"] = None
        results["exceeds_order_bound"] = args.max_order
        return results, EXIT_BOUND
    results["order"] = model.order
    return results, EXIT_OK


def _cmd_even_analysis(args) -> tuple[dict, int]:
    spec = _series_spec(args.variant, args.n, args.s)
    report = reflection.even_subgroup_analysis(spec, args.max_order)
    code = EXIT_OK if "b_commute" in report else EXIT_BOUND
    return report, code


def _cmd_semidirect(args) -> tuple[dict, int]:
    spec = _series_spec(args.variant, args.n, args.s)
    report = reflection.semidirect_matrix_check(spec, args.n, max_order=args.max_order)
    ok = report["unitarity"] and report["coassociativity"]
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_non_easy(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    report = reflection.non_easy_example_check(args.n, samples=args.samples, rng=rng)
    ok = report["surjective"] and report["invariance_failures"] == 0
    if "witness" in report:
        ok = ok and report["witness"]["image_is_identity"]
        ok = ok and report["witness"]["mapped_is_three_cycle"]
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_kernel(args) -> tuple[dict, int]:
    spec = _series_spec(args.variant, args.n, args.s)
    w = _parse_word(args.word)
    status = definetti.is_in_kernel(w, spec)
    results = {"word": list(w), "variant": args.variant, "s": args.s, "status": status}
    return results, EXIT_OK if status != "unknown" else EXIT_BOUND


def _cmd_balanced(args) -> tuple[dict, int]:
    w = _parse_word(args.word)
    results = {"word": list(w), "n": args.n, "balanced": definetti.is_balanced(w, args.n)}
    return results, EXIT_OK


def _cmd_moment_check(args) -> tuple[dict, int]:
    if args.table:
        try:
            with open(args.table) as fh:
                table = definetti.MomentTable.from_json(fh.read())
        except OSError as exc:
            raise UsageError(str(exc))
    elif args.builtin == "pm1":
        table = definetti.plus_minus_one_table(args.n, args.degree)
    else:
        raise UsageError("need --table FILE or --builtin pm1")
    spec = _series_spec(args.variant, table.n, args.s)
    report = definetti.invariance_check(table, spec)
    return report, EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def _cmd_selftest(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    checks: dict[str, bool] = {}

    # free reduction is confluent under random deletion orders
    ok = True
    for _ in range(2000):
        seq = [rng.randrange(1, 5) for _ in range(rng.randrange(12))]
        ok = ok and words.reduce_word(seq) == _reduce_random_order(list(seq), rng)
    checks["reduce_confluent"] = ok

    # tensor/involution word laws for labelled partitions
    ok = True
    for _ in range(2000):
        p, i = _random_labelled(rng)
        q, j = _random_labelled(rng)
        lhs = words.multiply(
            words.word_of_labelled_partition(p, i),
            words.word_of_labelled_partition(q, j),
        )
        rhs = words.word_of_labelled_partition(p.tensor(q), tuple(i) + tuple(j))
        ok = ok and lhs == rhs
        ok = ok and words.invert(
            words.word_of_labelled_partition(p, i)
        ) == words.word_of_labelled_partition(
            p.involute().one_line_form(), tuple(reversed(i))
        )
    checks["f_closure_laws"] = ok

    ok = True
    for _ in range(500):
        p, i = _random_labelled(rng)
        i0 = rng.randrange(1, 5)
        ok = ok and words.conjugate_rotation_identity_check(p, i, i0)
    checks["rotation_conjugation"] = ok

    checks["even_words_fully_characteristic"] = words.is_fully_characteristic_even_check(
        1000, rng
    )

    ok = True
    for _ in range(500):
        q = _random_partition(rng)
        p = _random_partition(rng)
        if q.upper != p.lower:
            continue
        left, _ = _compose_pair(p, q)
        right, _ = _compose_pair(q.involute(), p.involute())
        ok = ok and left.involute() == right
    checks["involution_antimultiplicative"] = ok

    passed = all(checks.values())
    return {"checks": checks, "passed": passed}, EXIT_OK if passed else EXIT_CHECK_FAILED


def _compose_pair(p, q):
    from .partitions import compose

    return compose(q, p)


def _reduce_random_order(seq: list[int], rng) -> words.Word:
    while True:
        spots = [t for t in range(len(seq) - 1) if seq[t] == seq[t + 1]]
        if not spots:
            return tuple(seq)
        t = rng.choice(spots)
        del seq[t : t + 2]


def _random_partition(rng) -> Partition:
    total = rng.randrange(7)
    labels = [rng.randrange(4) for _ in range(total)]
    upper = rng.randrange(total + 1)
    return Partition(upper, total - upper, labels)


def _random_labelled(rng):
    total = rng.randrange(1, 7)
    p = ker([rng.randrange(3) for _ in range(total)])
    values = [rng.randrange(1, 5) for _ in range(p.block_count)]
    labelling = tuple(values[b] for b in p.labels)
    return p, labelling


# -- argument parsing ------------------------------------------------------

def _add_common(sp, *, cat_bounds=False, cache_bounds=False):
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="report file (default: stdout)")
    if cat_bounds:
        sp.add_argument("--generator", action="append", metavar="PARTITION")
        sp.add_argument("--max-points", type=int, default=8)
        sp.add_argument("--max-count", type=int, default=100_000)
    if cache_bounds:
        sp.add_argument("--relator", action="append", metavar="WORD")
        sp.add_argument("--word-length", type=int, default=8)
        sp.add_argument("--max-cache", type=int, default=200_000)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="partcat",
        description="exact partition-category and reflection-group workbench",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("saturate", help="saturate a category from generators")
    _add_common(sp, cat_bounds=True)
    sp.set_defaults(func=_cmd_saturate)

    sp = sub.add_parser("contains", help="category membership with derivation")
    _add_common(sp, cat_bounds=True)
    sp.add_argument("--partition", required=True)
    sp.set_defaults(func=_cmd_contains)

    sp = sub.add_parser("fgroup", help="words of labelled category members")
    _add_common(sp, cat_bounds=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--length-bound", type=int, default=8)
    sp.set_defaults(func=_cmd_fgroup)

    sp = sub.add_parser("cat-from-subgroup", help="category from subgroup kernels")
    _add_common(sp, cache_bounds=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--max-points", type=int, default=6)
    sp.add_argument("--exact", help="exact kernel rule: star, paren:S or bracket:S")
    sp.set_defaults(func=_cmd_cat_from_subgroup)

    sp = sub.add_parser("roundtrip", help="subgroup -> category -> words round trip")
    _add_common(sp, cache_bounds=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--word-bound", type=int, default=8)
    sp.add_argument("--point-bound", type=int, default=8)
    sp.add_argument("--exact", help="exact kernel rule: star, paren:S or bracket:S")
    sp.set_defaults(func=_cmd_roundtrip)

    sp = sub.add_parser("diag", help="diagonal subgroup presentation")
    _add_common(sp, cat_bounds=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--length-bound", type=int, default=8)
    sp.set_defaults(func=_cmd_diag)

    sp = sub.add_parser("tpmat", help="matrix of a partition map")
    _add_common(sp)
    sp.add_argument("--partition", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_tpmat)

    sp = sub.add_parser("homdim", help="intertwiner space dimension")
    _add_common(sp, cat_bounds=True)
    sp.add_argument("--category", default="generated", choices=["generated", "all"])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_homdim)

    for verb, fn, needs_s in (
        ("series", _cmd_series, True),
        ("even-analysis", _cmd_even_analysis, True),
        ("semidirect-check", _cmd_semidirect, True),
    ):
        sp = sub.add_parser(verb)
        _add_common(sp)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--s", type=int)
        sp.add_argument(
            "--variant", default="paren", choices=["paren", "bracket", "star", "trivial"]
        )
        sp.add_argument("--max-order", type=int, default=4096)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("non-easy", help="letter-identification counterexample")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.set_defaults(func=_cmd_non_easy)

    sp = sub.add_parser("kernel", help="kernel membership of a monoid word")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument(
        "--variant", default="paren", choices=["paren", "bracket", "star", "trivial"]
    )
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("balanced", help="balanced-word test")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=_cmd_balanced)

    sp = sub.add_parser("moment-check", help="invariance of a moment table")
    _add_common(sp)
    sp.add_argument("--table", help="moment table JSON file")
    sp.add_argument("--builtin", choices=["pm1"])
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--s", type=int)
    sp.add_argument(
        "--variant", default="paren", choices=["paren", "bracket", "star", "trivial"]
    )
    sp.set_defaults(func=_cmd_moment_check)

    sp = sub.add_parser("selftest", help="seeded property suites")
    _add_common(sp)
    sp.set_defaults(func=_cmd_selftest)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        results, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        words.CacheBoundExceeded,
        categories.SaturationBoundExceeded,
        reflection.BoundExceeded,
    ) as exc:
        print(f"bound exhausted: {exc}", file=sys.stderr)
        return EXIT_BOUND
    report = _report_skeleton(args, results)
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
