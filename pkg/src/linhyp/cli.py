"""Command-line entry point.

Subcommands: construct, check, encode, decode, count, extremal, rs-max,
f-count, verify, report. Exit codes: 0 success / true verdicts, 1 false
verdicts, 2 usage errors, 3 exhausted budget.

Structured output (--format json-lines) contains no timing fields, so
identical inputs and budgets produce byte-identical records regardless of
the worker count; human output may include elapsed times on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bounds as bounds_mod
from . import codec as codec_mod
from . import constructions, hypergraph, matroid3, search
from .errors import (
    BudgetExceeded,
    FormatError,
    LinhypError,
    MissingCount,
    OutOfRange,
)
from .patterns import MatchMode, is_free, is_rs, resolve_patterns

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _budget_from(args) -> search.SearchBudget:
    workers = args.workers
    if workers is None:
        workers = search.workers_from_env(default=1)
    return search.SearchBudget(
        time_limit=args.budget_seconds,
        node_limit=args.budget_nodes,
        workers=workers,
    )


def _emit(args, record: dict, human: str) -> None:
    if args.format == "json-lines":
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human + "\n")


def _mode_of(text: str) -> MatchMode:
    return MatchMode.SUBGRAPH if text == "subgraph" else MatchMode.INDUCED


def _split_patterns(text: str) -> tuple[str, ...]:
    return tuple(sorted(p.strip() for p in text.split(",") if p.strip()))


def _cli_patterns(names):
    """Resolve registry names plus custom patterns given as .l3h paths."""
    from .patterns import Pattern

    out = []
    for nm in names:
        if nm.endswith(".l3h"):
            out.append(Pattern(Path(nm).stem, hypergraph.read_l3h(nm)))
        else:
            try:
                out.append(resolve_patterns([nm])[0])
            except KeyError as exc:
                raise OutOfRange(str(exc)) from None
    return tuple(out)


# --- construct ---------------------------------------------------------------


def cmd_construct(args) -> int:
    name = args.name
    params = args.params
    if name in ("w3", "mk4", "fan", "fano"):
        system = constructions.PATTERN_FACTORIES[name]().system
    elif name == "bose-burton":
        if len(params) != 1:
            raise OutOfRange("bose-burton takes one parameter: r")
        system = constructions.bose_burton(int(params[0]))
    elif name == "graham-sloane":
        if len(params) != 3:
            raise OutOfRange("graham-sloane takes three parameters: n r k")
        n, r, k = (int(p) for p in params)
        family = constructions.graham_sloane(n, r, k)
        if r == 3:
            system = hypergraph.make_system(n, family.ch)
        else:
            record = {
                "record": "construct",
                "name": name,
                "n": n,
                "r": r,
                "k": k,
                "members": [list(x) for x in family.ch],
            }
            text = "\n".join(" ".join(map(str, x)) for x in family.ch)
            if args.output:
                Path(args.output).write_text(text + "\n", encoding="ascii")
            else:
                _emit(args, record, text)
            return EXIT_OK
    else:
        raise OutOfRange(f"unknown construction {name!r}")
    payload = hypergraph.serialize(system)
    if args.output:
        Path(args.output).write_text(payload, encoding="ascii")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


# --- check -------------------------------------------------------------------


def cmd_check(args) -> int:
    path = Path(args.file)
    verdicts: list[tuple[str, bool]] = []
    if path.suffix == ".pav":
        try:
            paving = matroid3.read_pav(path)
        except (FormatError, FileNotFoundError):
            raise
        except LinhypError as exc:
            _emit(
                args,
                {"record": "check", "file": str(path), "checks": {"valid": False}},
                f"valid: false ({exc})",
            )
            return EXIT_FALSE
        verdicts.append(("valid", True))
        if args.free:
            names = _split_patterns(args.free)
            for nm in names:
                if nm not in ("w3", "mk4"):
                    raise OutOfRange(
                        "restriction checks on .pav files support w3 and mk4"
                    )
                target = matroid3.sparse_from_hypergraph(
                    constructions.PATTERN_FACTORIES[nm]().system
                )
                verdicts.append(
                    (f"free({nm})", not matroid3.has_restriction(paving, target))
                )
        if args.rs:
            raise OutOfRange("--rs applies to .l3h files")
    else:
        try:
            system = hypergraph.read_l3h(path)
        except (FormatError, FileNotFoundError):
            raise
        except LinhypError as exc:
            _emit(
                args,
                {"record": "check", "file": str(path), "checks": {"linear": False}},
                f"linear: false ({exc})",
            )
            return EXIT_FALSE
        verdicts.append(("linear", True))
        if args.rs:
            verdicts.append(("rs", is_rs(system)))
        if args.free:
            names = _split_patterns(args.free)
            mode = _mode_of(args.mode)
            ok = is_free(system, _cli_patterns(names), mode)
            verdicts.append((f"{args.mode}-free({','.join(names)})", ok))
    all_ok = all(v for _, v in verdicts)
    record = {
        "record": "check",
        "file": str(path),
        "checks": {k: v for k, v in verdicts},
    }
    human = "\n".join(f"{k}: {'true' if v else 'false'}" for k, v in verdicts)
    _emit(args, record, human)
    return EXIT_OK if all_ok else EXIT_FALSE


# --- codec -------------------------------------------------------------------


def cmd_encode(args) -> int:
    paving = matroid3.read_pav(args.file)
    pair = codec_mod.encode(paving)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    hypergraph.write_l3h(pair.even, out / "even.l3h")
    hypergraph.write_l3h(pair.odd, out / "odd.l3h")
    _emit(
        args,
        {
            "record": "encode",
            "input": str(args.file),
            "even": str(out / "even.l3h"),
            "odd": str(out / "odd.l3h"),
        },
        f"wrote {out / 'even.l3h'} and {out / 'odd.l3h'}",
    )
    return EXIT_OK


def cmd_decode(args) -> int:
    src = Path(args.dir)
    even = hypergraph.read_l3h(src / "even.l3h")
    odd = hypergraph.read_l3h(src / "odd.l3h")
    paving = codec_mod.decode(codec_mod.CodecPair(even, odd))
    payload = matroid3.serialize_pav(paving)
    if args.output:
        Path(args.output).write_text(payload, encoding="ascii")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


# --- counting ----------------------------------------------------------------


def _store(args, n: int, r: int, predicate: str, value: int, provenance: str):
    """Append one record to the counts file, validating against prior rows."""
    if not args.table:
        return
    path = Path(args.table)
    table = search.CountsTable.load(path) if path.exists() else search.CountsTable()
    known = table.has(n, r, predicate)
    table.add(n, r, predicate, value, provenance)  # raises on conflict
    if not known:
        with open(path, "a", encoding="ascii") as fh:
            fh.write(
                json.dumps(
                    {"n": n, "r": r, "predicate": predicate, "value": value,
                     "provenance": provenance},
                    sort_keys=True,
                )
                + "\n"
            )


def cmd_count(args) -> int:
    t0 = time.monotonic()
    budget = _budget_from(args)
    kind = args.kind
    if kind == "sparse":
        if args.r is None:
            raise OutOfRange("count sparse needs -r RANK")
        value = search.count_sparse_paving(args.n, args.r, budget)
        key = {"n": args.n, "r": args.r, "predicate": "sparse:all"}
        provenance = "stable-set-count"
        _store(args, args.n, args.r, "sparse:all", value, provenance)
    elif kind == "sparse-table":
        table = search.CountsTable()
        search.sparse_table(args.n, budget, table)
        for row in table.rows():
            _store(args, row.n, row.r, row.predicate, row.value, row.provenance)
        for row in table.rows():
            _emit(
                args,
                {
                    "record": "count",
                    "key": {"n": row.n, "r": row.r, "predicate": row.predicate},
                    "value": row.value,
                    "provenance": row.provenance,
                },
                f"s({row.n},{row.r}) = {row.value}",
            )
        if args.format == "human":
            sys.stderr.write(f"elapsed: {time.monotonic() - t0:.2f}s\n")
        return EXIT_OK
    else:
        predicate = args.predicate
        if kind == "linear":
            value = search.count_linear_systems(args.n, predicate, budget)
            provenance = "exhaustive"
        elif kind == "paving":
            value = search.count_paving(args.n, predicate, budget)
            provenance = "exhaustive"
        elif kind == "rank3":
            value = search.count_rank3(args.n, predicate, budget)
            provenance = "composed"
        else:
            raise OutOfRange(f"unknown count kind {kind!r}")
        name = f"{kind}:{predicate}"
        key = {"n": args.n, "r": 3, "predicate": name}
        _store(args, args.n, 3, name, value, provenance)
    _emit(
        args,
        {"record": "count", "key": key, "value": value, "provenance": provenance},
        f"{key['predicate']} at n={args.n}: {value}",
    )
    if args.format == "human":
        sys.stderr.write(f"elapsed: {time.monotonic() - t0:.2f}s\n")
    return EXIT_OK


def cmd_f_count(args) -> int:
    budget = _budget_from(args)
    value = search.count_f(args.n, budget)
    name = "linear:induced-free(fano,w3)"
    _store(args, args.n, 3, name, value, "exhaustive")
    _emit(
        args,
        {
            "record": "count",
            "key": {"n": args.n, "r": 3, "predicate": name},
            "value": value,
            "provenance": "exhaustive",
        },
        f"f({args.n}) = {value}",
    )
    return EXIT_OK


def cmd_rs_max(args) -> int:
    budget = _budget_from(args)
    value, witness = search.rs_max(args.n, budget)
    _store(args, args.n, 3, "rs-max", value, "search")
    _emit(
        args,
        {
            "record": "rs-max",
            "key": {"n": args.n, "r": 3, "predicate": "rs-max"},
            "value": value,
            "witness": [list(e) for e in witness.edges],
            "provenance": "search",
        },
        f"rs-max({args.n}) = {value}; witness edges: "
        + " ".join("".join(map(str, e)) for e in witness.edges),
    )
    if args.output:
        hypergraph.write_l3h(witness, args.output)
    return EXIT_OK


def cmd_extremal(args) -> int:
    budget = _budget_from(args)
    names = _split_patterns(args.free)
    mode = _mode_of(args.mode)
    seed = None
    if args.seed:
        seed = hypergraph.read_l3h(args.seed)
    value, witness = search.extremal_max(args.n, names, mode, budget, seed=seed)
    name = f"extremal:{args.mode}-free({','.join(names)})"
    _emit(
        args,
        {
            "record": "extremal",
            "key": {"n": args.n, "r": 3, "predicate": name},
            "value": value,
            "witness": [list(e) for e in witness.edges],
            "provenance": "search",
        },
        f"{name} at n={args.n}: {value}",
    )
    if args.output:
        hypergraph.write_l3h(witness, args.output)
    return EXIT_OK


# --- verify / report -----------------------------------------------------------


def _load_or_build_sparse(args, nmax: int) -> search.CountsTable:
    if args.table and Path(args.table).exists():
        table = search.CountsTable.load(args.table)
        missing = [
            (n, r)
            for n in range(nmax + 1)
            for r in range(n + 1)
            if not table.has(n, r, bounds_mod.SPARSE_PREDICATE)
        ]
        if not missing:
            return table
        raise MissingCount(
            f"table {args.table} lacks sparse counts up to n={nmax}: {missing[:5]}..."
        )
    return search.sparse_table(nmax, _budget_from(args))


def cmd_verify(args) -> int:
    budget = _budget_from(args)
    kind = args.inequality
    if kind == "entropy":
        rs_value = args.rs_value
        if rs_value is None:
            rs_value, _ = search.rs_max(args.n, budget)
        report = bounds_mod.entropy_count_bound(args.n, rs_value)
    elif kind == "blowup":
        if args.r is None or args.t is None:
            raise OutOfRange("verify blowup needs N -r R -t T")
        table = _load_or_build_sparse(args, args.n)
        report = bounds_mod.verify_blowup(
            table, bounds_mod.SPARSE_PREDICATE, args.n, args.r, args.t
        )
    elif kind == "gs-lower":
        table = _load_or_build_sparse(args, args.n)
        report = bounds_mod.gs_lower_check(table, args.n)
    elif kind == "f-bound":
        f_value = args.f_value
        if f_value is None:
            f_value = search.count_f(args.n, budget)
        report = bounds_mod.trivial_f_bound(args.n, f_value)
    else:
        raise OutOfRange(f"unknown inequality {kind!r}")
    record = {
        "record": "verify",
        "inequality": report.name,
        "params": report.params,
        "left": report.left,
        "right": report.right,
        "scale": report.scale,
        "verdict": report.verdict,
        "slack": report.slack,
        "note": report.note,
    }
    human = (
        f"{report.name} {report.params}: left={report.left:.6g} "
        f"right={report.right:.6g} [{report.scale}] -> "
        f"{'TRUE' if report.verdict else 'FALSE'}"
        + (f" ({report.note})" if report.note else "")
    )
    _emit(args, record, human)
    return EXIT_OK if report.verdict else EXIT_FALSE


def cmd_report(args) -> int:
    table = search.CountsTable.load(args.table)
    rows = table.rows()
    if args.format == "json-lines":
        for row in rows:
            _emit(
                args,
                {
                    "record": "count",
                    "key": {"n": row.n, "r": row.r, "predicate": row.predicate},
                    "value": row.value,
                    "provenance": row.provenance,
                },
                "",
            )
    else:
        width = max((len(r.predicate) for r in rows), default=9)
        sys.stdout.write(
            f"{'n':>3} {'r':>3} {'predicate':<{width}} {'value':>14} provenance\n"
        )
        for row in rows:
            sys.stdout.write(
                f"{row.n:>3} {row.r:>3} {row.predicate:<{width}} "
                f"{row.value:>14} {row.provenance}\n"
            )
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("human", "json-lines"),
        default="human",
        help="output format (json-lines is stable for identical inputs)",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker processes for searches (default: ${search.WORKERS_ENV} or 1)",
    )
    common.add_argument(
        "--budget-seconds", type=float, default=None, help="wall-clock budget"
    )
    common.add_argument(
        "--budget-nodes", type=int, default=None, help="search-node budget"
    )
    parser = argparse.ArgumentParser(
        prog="linhyp",
        description="linear triple systems, paving structures, exact counts and bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common],
                       help="emit a named instance or family member")
    p.add_argument("name", help="w3 | mk4 | fan | fano | bose-burton | graham-sloane")
    p.add_argument("params", nargs="*", help="family parameters")
    p.add_argument("-o", "--output", help="output path (.l3h)")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("check", parents=[common], help="validate a file and test properties")
    p.add_argument("file")
    p.add_argument("--rs", action="store_true", help="test the six-vertex span cap")
    p.add_argument("--free", help="comma-separated pattern names to exclude")
    p.add_argument("--mode", choices=("subgraph", "induced"), default="subgraph")
    p.add_argument("--linearity", action="store_true", help="validate only")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("encode", parents=[common], help="paving .pav -> pair of .l3h files")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="pair of .l3h files -> paving .pav")
    p.add_argument("dir")
    p.add_argument("-o", "--output", help="output path (.pav)")
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("count", parents=[common], help="exact labeled counts")
    p.add_argument(
        "kind", choices=("linear", "paving", "rank3", "sparse", "sparse-table")
    )
    p.add_argument("n", type=int)
    p.add_argument("-r", type=int, default=None, help="rank (sparse only)")
    p.add_argument(
        "--predicate",
        default="all",
        help='all | rs | free(mk4,w3) | subgraph-free(...) | induced-free(...)',
    )
    p.add_argument("--table", help="counts table file to append to")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("f-count", parents=[common], help="systems with no induced w3 or fano")
    p.add_argument("n", type=int)
    p.add_argument("--table", help="counts table file to append to")
    p.set_defaults(fn=cmd_f_count)

    p = sub.add_parser("rs-max", parents=[common], help="maximum edges under the six-vertex cap")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", help="write the witness (.l3h)")
    p.add_argument("--table", help="counts table file to append to")
    p.set_defaults(fn=cmd_rs_max)

    p = sub.add_parser("extremal", parents=[common], help="maximum edges avoiding patterns")
    p.add_argument("n", type=int)
    p.add_argument("--free", required=True, help="comma-separated pattern names")
    p.add_argument("--mode", choices=("subgraph", "induced"), default="subgraph")
    p.add_argument("--seed", help="certificate .l3h file used as a pruning floor")
    p.add_argument("-o", "--output", help="write the witness (.l3h)")
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("verify", parents=[common], help="check a counting inequality")
    p.add_argument("inequality", choices=("entropy", "blowup", "gs-lower", "f-bound"))
    p.add_argument("n", type=int)
    p.add_argument("-r", type=int, default=None)
    p.add_argument("-t", type=int, default=None)
    p.add_argument("--rs-value", type=int, default=None)
    p.add_argument("--f-value", type=int, default=None)
    p.add_argument("--table", help="counts table to consume")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="render a counts table")
    p.add_argument("--table", required=True)
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (OutOfRange, MissingCount, FormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except LinhypError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
