"""Command-line front end.

Subcommands: validate, pair, corollary, scan, foxcheck.  Every command
is deterministic given its flags (scans additionally require a seed)
and emits JSON (schema 1) or CSV; outputs embed the full configuration
so a report is reproducible from its own header.  Exit codes: 0 on
success, 1 when a property violation is found, 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .curve import CurveSpec, parse_curve_spec
from .errors import (
    PreconditionError,
    SpecParseError,
    UnsupportedGenus,
    WordLengthLimit,
    WordParseError,
)
from .foxrep import (
    LaurentPoly,
    abelianized,
    fox_derivative,
    magnus_rep,
    rep_equal,
    rep_as_json,
    rep_identity,
    rep_mul,
    suzuki_scan,
)
from .jfilt import (
    check_consistency,
    classify_pair,
    commutator_depth,
    in_Mk,
    morita_check,
)
from .mcg import builtin_table, commutator_auto, evaluate, validate_relations
from .word import Word, commutator

SCHEMA = 1


def _envelope(command, config, results, summary=None):
    doc = {
        "schema": SCHEMA,
        "tool": "twistlab",
        "version": __version__,
        "command": command,
        "config": config,
        "results": results,
    }
    if summary is not None:
        doc["summary"] = summary
    return doc


def _emit(doc, fmt, path, csv_rows=None):
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        rows = csv_rows if csv_rows is not None else [doc]
        if rows:
            writer = csv.DictWriter(buf, fieldnames=sorted(rows[0]))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        text = buf.getvalue()
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(d, prefix=""):
    flat = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            flat[key] = json.dumps(v, sort_keys=True)
        else:
            flat[key] = v
    return flat


# -- subcommands --------------------------------------------------------


def cmd_validate(args):
    report = validate_relations(args.genus)
    rows = [
        {"kind": c.kind, "relation": c.description, "passed": c.passed}
        for c in report.checks
    ]
    doc = _envelope(
        "validate",
        {"genus": args.genus},
        rows,
        summary={
            "checks": len(rows),
            "failures": len(report.failures()),
            "all_passed": report.all_passed,
        },
    )
    _emit(doc, args.format, args.output, csv_rows=[_flatten(r) for r in rows])
    return 0 if report.all_passed else 1


def cmd_pair(args):
    c1 = parse_curve_spec(args.genus, args.c1)
    c2 = parse_curve_spec(args.genus, args.c2)
    report = classify_pair(c1, c2, args.cap)
    row = report.as_dict()
    doc = _envelope(
        "pair",
        {"genus": args.genus, "cap": args.cap, "c1": args.c1, "c2": args.c2},
        row,
    )
    _emit(doc, args.format, args.output, csv_rows=[_flatten(row)])
    return 0


def _corollary_rows(genus, cap):
    """Nested commutators of two crossing separating twists.

    w_1 = [t_a, t_b], w_{m+1} = [t_a, w_m] with t_a the twist around
    the first handle and t_b its image under the connector twist.  The
    two twists sit in M(2) and generate a free group of rank two, so
    w_m is never the identity while the bracket calculus pushes it into
    M(2m+2); each row records the certified level at the working cap.

    The nested elements are never materialized: each w_m is kept as the
    pair (t_a * w_{m-1}, w_{m-1} * t_a) whose actions are compared, so
    word growth stays quadratic instead of doubling per level.
    """
    t_a = evaluate((("Sep1", 1),), genus)
    t_b = evaluate((("C3", 1), ("Sep1", 1), ("C3", -1)), genus)
    rows = []
    w = t_b
    for m in range(1, cap // 2 + 1):
        expected = 2 * m + 2
        level = min(expected, cap)
        try:
            depth = commutator_depth(t_a, w, cap)
            nontrivial = depth.kind != "identity"
            certified = None
            exact = None
            if depth.kind == "exact":
                certified = exact = depth.level
            elif depth.kind == "at_least":
                certified = depth.level
            elif depth.kind == "not_in_m1":
                certified = 0
        except WordLengthLimit:
            rows.append(
                {
                    "m": m,
                    "element": f"nested commutator depth {m}",
                    "note": "image length cap reached; level not tested",
                }
            )
            break
        rows.append(
            {
                "m": m,
                "element": "[t_a, t_b]" if m == 1 else f"[t_a, w_{m-1}]",
                "expected_min_level": expected,
                "tested_level": level,
                "in_tested_level": certified is not None and certified >= level,
                "certified_level": certified,
                "exact_depth": exact,
                "is_identity": not nontrivial,
                "acts_trivially_up_to_cap": certified is not None
                and certified >= cap,
            }
        )
        if m + 1 <= cap // 2:
            w = commutator_auto(t_a, w)
    return rows


def cmd_corollary(args):
    if args.genus < 2:
        raise UnsupportedGenus("the construction needs a separating curve: genus >= 2")
    config = {"genus": args.genus, "cap": args.cap}
    if args.cap < 4:
        doc = _envelope(
            "corollary",
            config,
            [],
            summary={
                "note": "cap too small: certifying the base commutator "
                "needs level 4",
            },
        )
        _emit(doc, args.format, args.output, csv_rows=[])
        return 0
    rows = _corollary_rows(args.genus, args.cap)
    ok = all(r["in_tested_level"] and not r["is_identity"] for r in rows)
    summary = {
        "all_rows_certified": ok,
        "curves": {"a": "Sep1", "b": "Sep1 @ [C3]"},
        # finite-level blindness: the depth-cap action misses a
        # nontrivial class, so no level below the cap separates it
        # from the identity.
        "finite_level_nondetection": {
            "level": min(4, args.cap),
            "commutator_in_level_kernel": rows[0]["certified_level"] >= 4,
            "commutator_is_identity": rows[0]["is_identity"],
        },
    }
    doc = _envelope("corollary", config, rows, summary=summary)
    _emit(doc, args.format, args.output, csv_rows=[_flatten(r) for r in rows])
    return 0 if ok else 1


def _random_spec(rng, genus, table, max_len):
    names = table.chain_names + table.sep_names
    base = rng.choice(table.essential_base_names())
    conj = tuple(
        (rng.choice(names), rng.choice((-2, -1, 1, 2)))
        for _ in range(rng.randrange(max_len + 1))
    )
    return CurveSpec(genus, base, conj)


def cmd_scan(args):
    table = builtin_table(args.genus)
    rng = random.Random(args.seed)
    pairs = [
        (
            _random_spec(rng, args.genus, table, args.max_conjugator_len),
            _random_spec(rng, args.genus, table, args.max_conjugator_len),
        )
        for _ in range(args.samples)
    ]

    def work(pair):
        c1, c2 = pair
        report = classify_pair(c1, c2, args.cap, check=False)
        try:
            check_consistency(report)
            violation = None
        except Exception as exc:  # ConsistencyViolation
            violation = str(exc)
        return report, violation

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(work, pairs))
    else:
        outcomes = [work(p) for p in pairs]

    rows, violations, histogram = [], [], {}
    for idx, (report, violation) in enumerate(outcomes):
        row = {"index": idx, **report.as_dict()}
        rows.append(row)
        label = report.ijf.label()
        histogram[label] = histogram.get(label, 0) + 1
        if violation:
            violations.append({"index": idx, "error": violation})

    config = {
        "genus": args.genus,
        "cap": args.cap,
        "samples": args.samples,
        "seed": args.seed,
        "max_conjugator_len": args.max_conjugator_len,
    }
    summary = {
        "violations": len(violations),
        "violation_details": violations,
        "ijf_histogram": dict(sorted(histogram.items())),
    }
    doc = _envelope("scan", config, rows, summary=summary)
    _emit(doc, args.format, args.output, csv_rows=[_flatten(r) for r in rows])
    return 1 if violations else 0


def cmd_foxcheck(args):
    genus = args.genus
    rng = random.Random(args.seed)
    n = 2 * genus

    def random_word(max_len=10):
        k = rng.randrange(1, max_len + 1)
        letters = [rng.choice([1, -1]) * rng.randrange(1, n + 1) for _ in range(k)]
        return Word(genus, tuple(letters))

    checks = {}

    ok = True
    for _ in range(args.samples):
        u, v = random_word(), random_word()
        ab_u = abelianized(u)
        for i in range(1, n + 1):
            lhs = fox_derivative(u * v, i)
            rhs = fox_derivative(u, i) + (
                LaurentPoly.monomial(genus, ab_u) * fox_derivative(v, i)
            )
            ok = ok and lhs == rhs
    checks["product_rule"] = ok

    ok = True
    for _ in range(args.samples):
        w = random_word()
        acc = LaurentPoly.zero(genus)
        for i in range(1, n + 1):
            ti = [0] * n
            ti[i - 1] = 1
            factor = LaurentPoly.monomial(genus, ti) - LaurentPoly.one(genus)
            acc = acc + fox_derivative(w, i) * factor
        expected = LaurentPoly.monomial(genus, abelianized(w)) - LaurentPoly.one(genus)
        ok = ok and acc == expected
    checks["fundamental_identity"] = ok

    sep = evaluate((("Sep1", 1),), genus) if genus >= 2 else None
    sep_matrix = None
    if sep is not None:
        sep_matrix = magnus_rep(sep)
        checks["sep_twist_matrix_nontrivial"] = not rep_equal(
            sep_matrix, rep_identity(genus)
        )
        # homologically trivial sample pool: conjugated separating
        # twists and short products of them
        table = builtin_table(genus)
        names = table.chain_names + table.sep_names
        torelli = [sep, sep.inverse()]
        while len(torelli) < 8:
            conj = tuple(
                (rng.choice(names), rng.choice((-1, 1)))
                for _ in range(rng.randrange(3))
            )
            g = evaluate(conj, genus)
            f = g.compose(evaluate((("Sep1", rng.choice((-1, 1))),), genus)).compose(
                g.inverse()
            )
            if rng.random() < 0.5:
                f = f.compose(rng.choice(torelli))
            if not f.is_identity() and in_Mk(f, 1):
                torelli.append(f)
        ok = True
        for _ in range(args.torelli_pairs):
            f = rng.choice(torelli)
            g = rng.choice(torelli)
            ok = ok and rep_equal(
                magnus_rep(f.compose(g)), rep_mul(magnus_rep(f), magnus_rep(g))
            )
        checks["multiplicativity"] = ok

    results = dict(checks)
    if sep_matrix is not None:
        results["sep_twist_matrix"] = rep_as_json(sep_matrix)
    if args.suzuki_budget > 0:
        hits = suzuki_scan(genus, args.suzuki_budget)
        results["suzuki_hits"] = [
            {"c1": h.c1, "c2": h.c2} for h in hits
        ]
    else:
        results["suzuki_hits"] = "skipped"

    config = {
        "genus": genus,
        "samples": args.samples,
        "torelli_pairs": args.torelli_pairs,
        "seed": args.seed,
        "suzuki_budget": args.suzuki_budget,
    }
    passed = all(v for k, v in checks.items())
    doc = _envelope(
        "foxcheck", config, results, summary={"all_passed": passed}
    )
    _emit(doc, args.format, args.output, csv_rows=[_flatten(dict(checks))])
    return 0 if passed else 1


# -- parser --------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistlab",
        description="Exact intersection detectors for curves on a "
        "one-boundary surface.",
    )
    parser.add_argument(
        "--version", action="version", version=f"twistlab {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, genus_default=None):
        if genus_default is None:
            p.add_argument("--genus", type=int, required=True)
        else:
            p.add_argument("--genus", type=int, default=genus_default)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="file path (default stdout)")

    p = sub.add_parser("validate", help="run the generator-table relation suite")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pair", help="classify a pair of curve specs")
    common(p)
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--cap", type=int, default=3)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser(
        "corollary",
        help="nested separating-twist commutators deep in the filtration",
    )
    common(p, genus_default=2)
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("scan", help="randomized pair scan with law checking")
    common(p)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-conjugator-len", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("foxcheck", help="free-derivative identity checks")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--torelli-pairs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suzuki-budget", type=int, default=0)
    p.set_defaults(func=cmd_foxcheck)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecParseError, WordParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedGenus, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
