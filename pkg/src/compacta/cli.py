"""Command-line surface.

Exit codes: 0 success, 1 domain error (budget, bad input data), 2 usage
error.  Output is deterministic for fixed flags; CSV is the machine
format, aligned columns the human one.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import asympt, dfinite, exhaustive, recurrences
from .compaction import uid_compact
from .exhaustive import BudgetExceededError, GenFilter
from .operators import build_operator, format_operator
from .trees import ParseError, dag_to_text, parse_tree

# streamed counts can exceed the default int->str guard by a wide margin
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(10_000_000)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compacta",
        description="Exact enumeration and asymptotics of compacted and "
        "relaxed binary trees (hash-consed DAGs) of bounded right height.",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for partitionable work (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compact", help="hash-cons a tree file into a DAG")
    p.add_argument("file", help="s-expression tree file")

    p = sub.add_parser("enumerate", help="exhaustively generate DAGs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-right-height", type=int, default=None)
    p.add_argument("--kind", choices=("relaxed", "compacted"), default="relaxed")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--emit", metavar="FILE", default=None)
    p.add_argument("--budget", type=int, default=None,
                   help="object budget (default 10^8 or COMPACTA_BUDGET)")

    p = sub.add_parser("count", help="counts from the exact tables")
    p.add_argument("--kind", choices=("relaxed", "compacted"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", action="store_true", help="dump the full table as CSV")

    p = sub.add_parser("sequence", help="stream bounded-right-height counts")
    p.add_argument("--family", choices=("relaxed", "compacted"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("operator", help="print a family operator")
    p.add_argument("--family", choices=("L", "M", "relaxed", "compacted"),
                   required=True)
    p.add_argument("--k", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--plain", action="store_true", default=True)
    fmt.add_argument("--latex", action="store_true")

    p = sub.add_parser("asymptotics", help="singularity data and constant fits")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", choices=("relaxed", "compacted"), required=True)
    p.add_argument("--fit", action="store_true")
    p.add_argument("--upto", type=int, default=2000)
    p.add_argument("--emit-plot", metavar="FILE", default=None,
                   help="write (n, u_n) pairs as CSV")

    sub.add_parser("table1", help="growth/exponent table for k = 1..7")
    sub.add_parser("selftest", help="cross-oracle consistency suite")
    return parser


def _cmd_compact(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        tree = parse_tree(fh.read())
    dag, table = uid_compact(tree)
    print("label,uid_left,uid_right,uid")
    for (label, ul, ur), uid in table.rows:
        print(f"{label if label is not None else ''},{ul},{ur},{uid}")
    print(dag_to_text(dag))
    return 0


def _cmd_enumerate(args) -> int:
    f = GenFilter(args.n, args.max_right_height, args.kind)
    if args.count_only and args.kind == "relaxed":
        # product shortcut; no object is materialized
        print(exhaustive.count_relaxed_spine_product(args.n, args.max_right_height))
        return 0
    if args.count_only:
        print(_count_compacted_partitioned(args))
        return 0
    stream = exhaustive.generate(f, args.budget)
    if args.emit:
        count = 0
        with open(args.emit, "w", encoding="utf-8") as fh:
            for dag in stream:
                fh.write(dag_to_text(dag) + "\n")
                count += 1
        print(count)
        return 0
    for dag in stream:
        print(dag_to_text(dag))
    return 0


def _count_compacted_partitioned(args) -> int:
    """Per-spine work shares no state, so spines partition across workers."""
    from .compaction import is_compacted
    from .exhaustive import current_budget, gen_spines, spine_assignments

    estimate = exhaustive.count_relaxed_spine_product(args.n, args.max_right_height)
    limit = current_budget(args.budget)
    if estimate > limit:
        raise BudgetExceededError(estimate, limit)

    def count_one(spine):
        return sum(1 for dag in spine_assignments(spine) if is_compacted(dag))

    spines = gen_spines(args.n, args.max_right_height)
    if args.threads <= 1:
        return sum(count_one(s) for s in spines)
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        return sum(pool.map(count_one, spines))


def _cmd_count(args) -> int:
    table = recurrences.build_table(args.kind, args.n)
    if args.table:
        print("n,p,value")
        for n in range(args.n + 1):
            for p in range(args.n - n + 1):
                print(f"{n},{p},{table.value(n, p)}")
        return 0
    print(table.count(args.n))
    return 0


def _cmd_sequence(args) -> int:
    values = dfinite.sequence_values(args.k, args.family, args.upto)
    if args.csv:
        print("n,value")
        for n, v in enumerate(values):
            print(f"{n},{v}")
    else:
        width = len(str(args.upto))
        for n, v in enumerate(values):
            print(f"{n:>{width}} {v}")
    return 0


def _cmd_operator(args) -> int:
    op = build_operator(args.family, args.k)
    print(format_operator(op, latex=args.latex))
    return 0


def _cmd_asymptotics(args) -> int:
    data = asympt.singularity_data(args.k, args.family)
    print(f"k: {data.k}")
    print(f"family: {data.family}")
    print(f"rho: {float(data.rho):.12f}")
    print(f"growth: {float(data.growth):.12f}")
    delta1 = data.delta1
    if isinstance(delta1, Fraction):
        print(f"delta1: {delta1} ({float(delta1):.12f})")
    else:
        print(f"delta1: {float(delta1):.12f}")
    exponent = data.exponent
    if isinstance(exponent, Fraction):
        print(f"exponent: {exponent} ({float(exponent):.12f})")
    else:
        print(f"exponent: {float(exponent):.12f}")
    roots = ", ".join(
        str(r) if isinstance(r, (int, Fraction)) else f"{float(r):.9f}"
        for r in data.indicial_roots
    )
    print(f"indicial roots: [{roots}]")
    if args.fit:
        fit = asympt.fit_constant(args.k, args.family, args.upto)
        print(f"constant estimate: {fit.estimate:.9f}")
        for n, u in fit.ladder:
            print(f"  u({n}) = {u:.9f}")
    if args.emit_plot:
        _emit_plot(args, data)
    return 0


def _emit_plot(args, data) -> None:
    from mpmath import mp

    rows = []
    with mp.workprec(asympt.WORK_PREC):
        for n, count in dfinite.iter_sequence(args.k, args.family):
            if n >= 1:
                u = mp.exp(asympt.scaled_ratio_log(count, n, data.growth, data.exponent))
                rows.append((n, float(u)))
            if n >= args.upto:
                break
    with open(args.emit_plot, "w", encoding="utf-8") as fh:
        fh.write("n,u\n")
        for n, u in rows:
            fh.write(f"{n},{u!r}\n")


def _cmd_table1(args) -> int:
    rows = asympt.table1()
    print(f"{'k':>2} {'growth':>20} {'~':>7} {'alpha':>34} {'~':>7} "
          f"{'beta':>5} {'~':>7} {'check':>5}")
    ok = True
    for r in rows:
        status = "PASS" if r.matches_reference else "FAIL"
        ok = ok and r.matches_reference
        print(f"{r.k:>2} {r.growth_expr:>20} {r.growth:>7.3f} {r.alpha_expr:>34} "
              f"{r.alpha:>7.3f} {str(r.beta):>5} {r.beta_float:>7.1f} {status:>5}")
    return 0 if ok else 1


def _cmd_selftest(args) -> int:
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    ct = recurrences.build_table("compacted", 9)
    rt = recurrences.build_table("relaxed", 9)
    check("compacted counts n<=9",
          ct.counts() == [1, 1, 3, 15, 111, 1119, 14487, 230943, 4395855, 97608831])
    check("relaxed counts n<=9",
          rt.counts() == [1, 1, 3, 16, 127, 1363, 18628, 311250, 6173791, 142190703])
    check("spine product = relaxed table",
          [exhaustive.count_relaxed_spine_product(n) for n in range(10)] == rt.counts())

    def brute_pair(n):
        return (exhaustive.brute_count(n, "relaxed"),
                exhaustive.brute_count(n, "compacted"))

    with ThreadPoolExecutor(max_workers=max(args.threads, 1)) as pool:
        brute = list(pool.map(brute_pair, range(6)))
    check("brute force n<=5",
          brute == [(rt.count(n), ct.count(n)) for n in range(6)])

    strm_ok = True
    for fam in ("relaxed", "compacted"):
        for k in range(0, 4):
            vals = dfinite.sequence_values(k, fam, 5)
            bf = [exhaustive.brute_count(n, fam, max_right_height=k) for n in range(6)]
            strm_ok = strm_ok and vals == bf
    check("streams = height-filtered brute force (k<=3, n<=5)", strm_ok)

    cf_ok = True
    for n in range(21):
        cf_ok = cf_ok and dfinite.closed_form_oracle(0, "relaxed", n) == dfinite.sequence_values(0, "relaxed", n)[-1]
    for (k, fam) in ((1, "relaxed"), (2, "relaxed"), (1, "compacted")):
        vals = dfinite.sequence_values(k, fam, 20)
        cf_ok = cf_ok and all(
            dfinite.closed_form_oracle(k, fam, n) == vals[n] for n in range(21)
        )
    check("closed forms n<=20", cf_ok)

    from .operators import coeff_recurrences_check
    check("operator coefficient recurrences k<=12",
          all(coeff_recurrences_check(k) is None for k in range(2, 13)))

    check("growth/exponent table", all(r.matches_reference for r in asympt.table1()))
    print(f"{'-' * 40}\n{'OK' if failures == 0 else f'{failures} FAILURES'}")
    return 0 if failures == 0 else 1


_COMMANDS = {
    "compact": _cmd_compact,
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "sequence": _cmd_sequence,
    "operator": _cmd_operator,
    "asymptotics": _cmd_asymptotics,
    "table1": _cmd_table1,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, dfinite.SeedUnavailableError, dfinite.IntegralityError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
