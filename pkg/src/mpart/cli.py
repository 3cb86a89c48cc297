"""Command-line front end: ``mpart <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .counting import BudgetError, brute_Z, image_counts
from .derect import has_derect_sequence
from .graphs import (
    GraphFormatError,
    SimpleGraph,
    bipartition,
    complete_graph,
    cycle_graph,
    parse_bipartition,
    parse_graph,
    path_graph,
    star_graph,
)
from .interpolation import access_profile
from .matrix import PartitionMatrix, is_pure, parse_set, set_name
from .oracle import Method
from .pipeline import (
    CensusError,
    classify,
    cross_check_dichotomy,
    enumerate_canonical,
    exception_matrix,
    run_census,
)
from . import verify as V

EQ3 = "001*01111*"


class UsageError(Exception):
    pass


def _read_text(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def load_matrix(arg: str) -> PartitionMatrix:
    """A literal (``001*01111*`` or ``0*/**``) or a file holding one."""
    text = _read_text(arg).strip()
    try:
        return PartitionMatrix.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad matrix {arg!r}: {exc}") from None


def load_graph(path: str) -> SimpleGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read graph file {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _graphs(args, defaults: list[tuple[str, SimpleGraph]]) -> list[tuple[str, SimpleGraph]]:
    if args.graph:
        return [(p, load_graph(p)) for p in args.graph]
    return defaults


def _bip(args, g: SimpleGraph):
    if getattr(args, "bipartition", None):
        try:
            with open(args.bipartition, encoding="utf-8") as fh:
                return parse_bipartition(fh.read(), g)
        except (OSError, ValueError) as exc:
            raise UsageError(f"{args.bipartition}: {exc}") from None
    try:
        return bipartition(g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


GENERAL_GRAPHS = [
    ("K1", complete_graph(1)),
    ("K2", complete_graph(2)),
    ("P3", path_graph(3)),
    ("K3", complete_graph(3)),
    ("C4", cycle_graph(4)),
]
BIPARTITE_GRAPHS = [
    ("K2", complete_graph(2)),
    ("P3", path_graph(3)),
    ("P4", path_graph(4)),
    ("K13", star_graph(3)),
    ("C4", cycle_graph(4)),
]
HAND4_GRAPHS = [("K1", complete_graph(1)), ("K2", complete_graph(2)), ("P3", path_graph(3))]


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> SimpleGraph:
    return SimpleGraph.from_edges(
        n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p)
    )


def random_impure_matrix(rng: random.Random, size: int = 4) -> PartitionMatrix:
    while True:
        m = PartitionMatrix.from_word("".join(rng.choice("01*") for _ in range(size * (size + 1) // 2)))
        if not is_pure(m):
            return m


# subcommands ----------------------------------------------------------------

def _entry_json(m: PartitionMatrix, cls) -> dict:
    out = {"key": m.word_str(), "verdict": cls.verdict.value, "method": None, "witness": None}
    if cls.method is not Method.NONE:
        out["method"] = cls.method_text()
    if cls.method is Method.INTERPOLATION:
        out["witness"] = {k: cls.detail[k] for k in ("pi", "tau", "ell", "s", "hard", "sets")}
    elif cls.method is Method.EXCEPTION:
        out["witness"] = {"id": cls.detail["id"]}
    return out


def cmd_classify(args) -> int:
    exceptions = not args.no_exceptions
    if args.matrix:
        m = load_matrix(args.matrix)
        cls = classify(m, exceptions)
        if args.format == "json":
            print(json.dumps(_entry_json(m, cls), indent=1))
        elif args.format == "csv":
            j = _entry_json(m, cls)
            print("key,verdict,method")
            print(f"{j['key']},{j['verdict']},{j['method'] or ''}")
        else:
            print(cls)
            if args.explain and cls.method is Method.INTERPOLATION:
                d = cls.detail
                print(access_profile(m, d["pi"], d["tau"], d["ell"], d["s"]).describe())
        return 0
    try:
        report = run_census(args.size, exceptions, args.jobs, strict=args.size == 4)
    except CensusError as exc:
        print(f"census check failed: {exc}", file=sys.stderr)
        return 1
    out = {"json": report.to_json, "csv": report.to_csv, "text": report.to_text}[args.format]()
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0


def cmd_derect(args) -> int:
    m = load_matrix(args.matrix)
    wit = has_derect_sequence(m)
    print(wit if wit else "none")
    return 0


def cmd_count(args) -> int:
    m = load_matrix(args.matrix)
    g = load_graph(args.graph)
    if args.surjective is not None:
        try:
            s = parse_set(args.surjective, m.size)
        except ValueError as exc:
            raise UsageError(f"bad part set {args.surjective!r}: {exc}") from None
        print(image_counts(m, g).get(s, 0))
    else:
        print(brute_Z(m, g))
    return 0


def _report(label: str, ok: bool) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {label}")
    return ok


def verify_gadget_formula(args) -> bool:
    if args.matrix:
        mats = [load_matrix(args.matrix)]
    elif args.all:
        mats = list(enumerate_canonical(4))
    else:
        mats = [PartitionMatrix.parse(EQ3)]
    ok = True
    for m in mats:
        ks = range(m.size + 1, m.size + 5)
        bad = V.gadget_formula_mismatches(m, ks=ks)
        if bad or not args.all:
            ok &= _report(f"gadget formula {m.word_str()}", not bad)
        for tau, k, s, got, want in bad[:5]:
            print(f"  tau={tau} k={k} S={set_name(s)}: brute {got}, formula {want}")
    if args.all:
        _report(f"gadget formula over {len(mats)} matrices", ok)
    return ok


def _sweep_pairs(args, defaults):
    """(label, matrix, graph) triples: the chosen matrix over the chosen
    graphs, plus ``--random`` seeded samples."""
    m0 = load_matrix(args.matrix) if args.matrix else PartitionMatrix.parse(EQ3)
    out = [(f"{m0.word_str()} on {name}", m0, g) for name, g in _graphs(args, defaults)]
    rng = random.Random(args.seed)
    for i in range(args.random):
        m = random_impure_matrix(rng)
        g = random_graph(rng, rng.randint(1, 4))
        out.append((f"random #{i} {m.word_str()} n={g.n} m={len(g.edges)}", m, g))
    return out


def verify_eq1(args) -> bool:
    ok = True
    for label, m, g in _sweep_pairs(args, GENERAL_GRAPHS):
        good = all(
            V.verify_eq1(m, pi, tau, k, g) for pi in (0, 1) for tau in (0, 1) for k in range(0, 6)
        )
        ok &= _report(f"eq1 {label}", good)
    return ok


def verify_interpolation(args) -> bool:
    ok = True
    pairs = [(0, 0)] if not args.all else [(pi, tau) for pi in (0, 1) for tau in (0, 1)]
    for label, m, g in _sweep_pairs(args, GENERAL_GRAPHS):
        good = all(V.verify_interpolation_roundtrip(m, pi, tau, g) for pi, tau in pairs)
        ok &= _report(f"interpolation round trip {label}", good)
    return ok


def verify_lemma6(args) -> bool:
    ok = True
    for name, g in _graphs(args, BIPARTITE_GRAPHS):
        try:
            good = V.verify_lemma6(g)
        except ValueError as exc:
            raise UsageError(f"{name}: {exc}") from None
        ok &= _report(f"lemma6 {name}", good)
    return ok


def verify_lemma7(args) -> bool:
    ok = True
    for exc_name, table in V.LEMMA7_TABLE.items():
        bad = V.table_mismatches(exception_matrix(exc_name), 1, table, (5, 6))
        ok &= _report(f"{exc_name} gadget table", not bad)
    for name, g in _graphs(args, BIPARTITE_GRAPHS):
        bip = _bip(args, g)
        for c in V.lemma7_checks(g, bip) + V.lemma7_checks(g, bip, v_clique=False):
            tag = "with V clique" if c.independent_sets is not None else "as built"
            ok &= _report(
                f"{c.name} {name} {tag}: coefficient {c.interpolated}, list count {c.direct}"
                + (f", independent sets {c.independent_sets}" if c.independent_sets is not None else ""),
                c.ok,
            )
    return ok


def verify_hand3(args) -> bool:
    ok = _report(
        "hand3 gadget table", not V.table_mismatches(exception_matrix("hand3"), 0, V.HAND3_TABLE, (5, 6, 7))
    )
    for name, g in _graphs(args, BIPARTITE_GRAPHS):
        c = V.hand3_check(g, _bip(args, g))
        ok &= _report(
            f"hand3 {name}: coefficient {c.interpolated} = independent sets {c.independent_sets} + {c.extra}",
            c.ok,
        )
    return ok


def verify_hand4(args) -> bool:
    first, second = V.hand4_tables(exception_matrix("hand4"))
    ok = _report("hand4 tables", first == V.HAND4_FIRST and second == V.HAND4_SECOND)
    for name, g in _graphs(args, HAND4_GRAPHS):
        r = V.hand4_system(g)
        ok &= _report(
            f"hand4 {name}: T={r.T} T+={r.T_plus} p={r.p} p'={r.p_prime} "
            f"solved Z_abd={r.solved[0]} Z_ad={r.solved[1]}",
            r.ok,
        )
    return ok


def verify_dichotomy(args) -> bool:
    report = run_census(4, exceptions=True, jobs=args.jobs, strict=False)
    check = cross_check_dichotomy(report)
    print(check.to_text())
    return _report("dichotomy cross-check", check.ok and not report.unresolved)


VERIFIERS = {
    "gadget-formula": verify_gadget_formula,
    "eq1": verify_eq1,
    "interpolation": verify_interpolation,
    "lemma6": verify_lemma6,
    "lemma7": verify_lemma7,
    "hand3": verify_hand3,
    "hand4": verify_hand4,
    "dichotomy": verify_dichotomy,
}


def cmd_verify(args) -> int:
    return 0 if VERIFIERS[args.target](args) else 1


def cmd_census_report(args) -> int:
    try:
        report = run_census(4, exceptions=True, jobs=args.jobs)
    except CensusError as exc:
        print(f"census check failed: {exc}", file=sys.stderr)
        return 1
    check = cross_check_dichotomy(report)
    if args.format == "json":
        data = json.loads(report.to_json())
        data["cross_check"] = {
            "checked": check.checked,
            "mismatches": check.mismatches,
            "exception_witnesses": check.exception_witnesses,
        }
        text = json.dumps(data, indent=1) + "\n"
    elif args.format == "csv":
        text = report.to_csv()
    else:
        text = report.to_text() + check.to_text() + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if check.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpart", description="Counting M-partitions: classifier and checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one matrix or the whole census")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="classify every canonical matrix")
    which.add_argument("--matrix", help="matrix literal or file")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--size", type=int, default=4, help="census matrix size (1..5)")
    p.add_argument("--no-exceptions", action="store_true", help="leave the six hand-resolved classes open")
    p.add_argument("--explain", action="store_true", help="print the witnessing access profile")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("derect", help="search for a derectangularising sequence")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_derect)

    p = sub.add_parser("count", help="count M-partitions of a graph by brute force")
    p.add_argument("--matrix", required=True)
    p.add_argument("--graph", required=True, help="graph file")
    p.add_argument("--surjective", metavar="PARTS", help="count only partitions with exactly this image")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run a brute-force check")
    p.add_argument("target", choices=sorted(VERIFIERS))
    p.add_argument("--all", action="store_true", help="widest sweep for the target")
    p.add_argument("--matrix", help="matrix for gadget-formula, eq1, interpolation")
    p.add_argument("--graph", action="append", help="graph file (repeatable)")
    p.add_argument("--bipartition", help="file listing the U side")
    p.add_argument("--random", type=int, default=0, metavar="N", help="add N random matrix/graph pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census-report", help="full census with cross-check")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_census_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if getattr(args, "random", 0) < 0:
        parser.error("--random must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mpart: error: {exc}", file=sys.stderr)
        return 2
    except (BudgetError, ValueError) as exc:
        print(f"mpart: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
