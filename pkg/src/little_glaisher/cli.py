"""Command-line front end.

Partitions are written as ``part^mult`` tokens (``"1^2 3^5 5^3"``), over-lined
parts with a trailing ``~`` (``"5~"``), the empty partition as ``∅``.

Exit status: 0 success, 1 a verification failed or found a discrepancy,
2 bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Sequence

from . import bijection as bij
from . import companions, glaisher, mixed_radix, qseries
from .partitions import (
    Partition,
    enumerate_partitions,
    format_partition,
    is_kl_regular,
    parse_partition,
    regular_partitions,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _factorization_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--strategy", choices=bij.STRATEGIES, default="optimal")
    p.add_argument("--factors", help="explicit factorisation, e.g. '2/2,3'")


def _format_arg(p: argparse.ArgumentParser, choices=("human", "tsv", "json")) -> None:
    p.add_argument("--format", choices=choices, default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="little-glaisher",
        description="Bijections between k,l-regular and l,k-regular partitions.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("map", "inverse"):
        p = sub.add_parser(name, help=f"{name} a single partition")
        _factorization_args(p)
        p.add_argument("partition")
        p.add_argument("--show-grid", action="store_true",
                       help="print intermediate grids with parts scaled back")
        p.add_argument("--trace", action="store_true",
                       help="print Glaisher merge steps as JSON lines")
        _format_arg(p)

    p = sub.add_parser("enumerate", help="list partitions of n, optionally k,l-regular")
    p.add_argument("--n", type=_nonnegative, required=True)
    p.add_argument("--k", type=_positive)
    p.add_argument("--l", type=_positive)
    _format_arg(p)

    p = sub.add_parser("series", help="coefficients of a generating function as TSV")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--n", type=_nonnegative, help="truncation order "
                   f"(default ${qseries.ORDER_ENV} or {qseries.DEFAULT_ORDER})")
    p.add_argument("--form", choices=("product", "eta"), default="product")

    p = sub.add_parser("verify", help="run invariant sweeps")
    p.add_argument("--bijection", action="store_true")
    p.add_argument("--series", action="store_true")
    p.add_argument("--glaisher", action="store_true")
    p.add_argument("--mixed-radix", action="store_true")
    p.add_argument("--k-max", type=_positive, default=6)
    p.add_argument("--n-max", type=_nonnegative, default=20)
    p.add_argument("--order", type=_nonnegative, help="series truncation order")
    p.add_argument("--policies", type=_positive, default=100,
                   help="random merge orders per partition")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("table", help="every k,l-regular partition of n with intermediates")
    _factorization_args(p)
    p.add_argument("--n", type=_nonnegative, required=True)
    _format_arg(p, ("human", "tsv"))

    p = sub.add_parser("companions", help="equinumerosity with Schur-type companions")
    p.add_argument("--k", type=int, choices=(3, 4, 5), required=True)
    p.add_argument("--variant", choices=tuple(companions.VARIANTS))
    p.add_argument("--n-max", type=_nonnegative, default=40)

    p = sub.add_parser("factorize", help="prime and optimal compatible factorisations")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    _format_arg(p)

    p = sub.add_parser("order-report", help="does reordering prime factors change the map?")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--n-max", type=_nonnegative, default=20)
    return parser


# -- rendering ----------------------------------------------------------------------

def format_grid(rows: Sequence[Sequence[Partition]]) -> str:
    inner = ["(" + ", ".join(format_partition(c) for c in row) + ")" for row in rows]
    if len(inner) == 1:
        return inner[0]
    return "[" + "; ".join(inner) + "]"


def _source_orientation(grid: bij.PartitionGrid) -> tuple[tuple[Partition, ...], ...]:
    # image grids have l-factors as rows; show them with the source's (u, v) layout
    return grid.transposed().scaled_entries()


def table_rows(k: int, l: int, n: int, strategy: str = "optimal", factors=None):
    rows = []
    for lam in regular_partitions(n, k, l):
        steps = bij.little_glaisher_steps(lam, k, l, strategy, factors)
        rows.append((format_partition(lam),
                     format_grid(steps.source_grid.scaled_entries()),
                     format_grid(_source_orientation(steps.image_grid)),
                     format_partition(steps.image)))
    return rows


def render_table(k: int, l: int, n: int, strategy: str = "optimal", factors=None,
                 fmt: str = "human") -> str:
    header = (f"λ in R_{k},{l}({n})", "λ grid", "μ grid", "μ")
    rows = table_rows(k, l, n, strategy, factors)
    if fmt == "tsv":
        return "\n".join("\t".join(r) for r in [header, *rows]) + "\n"
    widths = [max(len(r[c]) for r in [header, *rows]) for c in range(4)]
    lines = [" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
             for r in [header, *rows]]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# -- commands ---------------------------------------------------------------------

def _read_partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _map_traces(steps: bij.MapSteps) -> list[str]:
    lines = []
    grid = steps.source_grid
    for u, row in enumerate(grid.entries, start=1):
        for v, cell in enumerate(row, start=1):
            ku = grid.row_factors.factors[u - 1]
            lv = grid.col_factors.factors[v - 1]
            if ku == lv or not cell:
                continue
            _, trace = glaisher.phi_forward_iterative(glaisher.phi_inverse(cell, lv), ku)
            for line in filter(None, trace.to_jsonl().split("\n")):
                record = json.loads(line)
                record["cell"] = [u, v]
                lines.append(json.dumps(record, sort_keys=True))
    return lines


def cmd_map(args, out) -> int:
    lam = _read_partition(args.partition)
    k, l = args.k, args.l
    if args.command == "inverse":
        # the inverse is the forward map on the swapped factorisation
        cf = bij.resolve_factorization(k, l, args.strategy, args.factors).swapped()
        k, l = l, k
    else:
        cf = bij.resolve_factorization(k, l, args.strategy, args.factors)
    if not is_kl_regular(lam, k, l):
        raise UsageError(f"{format_partition(lam)} is not {k},{l}-regular")
    steps = bij.little_glaisher_steps(lam, k, l, factors=cf)
    image = steps.image
    if args.format == "json":
        record = {"command": args.command, "k": args.k, "l": args.l,
                  "factors": str(bij.resolve_factorization(args.k, args.l, args.strategy,
                                                           args.factors)),
                  "input": lam.to_json(), "output": image.to_json()}
        if args.show_grid:
            record["source_grid"] = [[c.to_json() for c in row]
                                     for row in steps.source_grid.scaled_entries()]
            record["image_grid"] = [[c.to_json() for c in row]
                                    for row in _source_orientation(steps.image_grid)]
        print(json.dumps(record), file=out)
    elif args.format == "tsv":
        print(f"{format_partition(lam)}\t{format_partition(image)}", file=out)
    else:
        if args.show_grid:
            print(f"factors: {cf}", file=out)
            print(f"source grid: {format_grid(steps.source_grid.scaled_entries())}", file=out)
            print(f"image grid: {format_grid(_source_orientation(steps.image_grid))}",
                  file=out)
        print(format_partition(image), file=out)
    if args.trace:
        for line in _map_traces(steps):
            print(line, file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if (args.k is None) != (args.l is None):
        raise UsageError("--k and --l must be given together")
    if args.k is None:
        parts = enumerate_partitions(args.n)
    else:
        parts = regular_partitions(args.n, args.k, args.l)
    if args.format == "json":
        print(json.dumps([p.to_json() for p in parts]), file=out)
    else:
        for p in parts:
            print(format_partition(p), file=out)
    return EXIT_OK


def cmd_series(args, out) -> int:
    order = args.n if args.n is not None else qseries.default_order()
    if args.form == "eta":
        s = qseries.eta_quotient_side(args.k, args.l, order)
    else:
        s = qseries.regular_product_side(args.k, args.l, order)
    for n, c in enumerate(s):
        print(f"{n}\t{c}", file=out)
    return EXIT_OK


def _verify_bijection(args, out) -> bool:
    ok = True
    for strategy in bij.STRATEGIES:
        for k in range(2, args.k_max + 1):
            for l in range(2, args.k_max + 1):
                problems = []
                for n in range(args.n_max + 1):
                    problems += bij.verify_bijection(k, l, n, strategy)
                status = "ok" if not problems else "FAIL: " + problems[0]
                ok &= not problems
                print(f"bijection\t{strategy}\tk={k}\tl={l}\t{status}", file=out)
    return ok


def _verify_series(args, out) -> bool:
    order = args.order if args.order is not None else qseries.default_order()
    ok = True
    for k in range(1, args.k_max + 1):
        for l in range(1, args.k_max + 1):
            a = qseries.regular_product_side(k, l, order)
            good = a == qseries.regular_product_side(l, k, order) == \
                qseries.eta_quotient_side(k, l, order)
            ok &= good
            print(f"series\tk={k}\tl={l}\tN={order}\t{'ok' if good else 'FAIL'}", file=out)
        forms = qseries.glaisher_series(k, order)
        good = forms.lhs == forms.eta == forms.rhs
        ok &= good
        print(f"glaisher-series\tk={k}\tN={order}\t{'ok' if good else 'FAIL'}", file=out)
    return ok


def _verify_glaisher(args, out) -> bool:
    rng = random.Random(args.seed)
    ok = True
    for k in range(2, args.k_max + 1):
        problems = []
        for n in range(args.n_max + 1):
            for lam in enumerate_partitions(n, lambda p: all(i % k for i in p.support)):
                direct = glaisher.phi_forward_direct(lam, k)
                if glaisher.phi_inverse(direct, k) != lam:
                    problems.append(f"round trip fails on {lam}")
                for _ in range(args.policies):
                    img, trace = glaisher.phi_forward_iterative(
                        lam, k, glaisher.random_policy(rng))
                    if img != direct or len(trace) > glaisher.termination_bound(lam, k):
                        problems.append(f"merge order matters on {lam}")
                        break
        ok &= not problems
        print(f"glaisher\tk={k}\t{'ok' if not problems else 'FAIL: ' + problems[0]}", file=out)
    return ok


def _verify_mixed_radix(args, out) -> bool:
    ok = True
    for factors in ([2, 3], [2, 2, 2], [3, 5, 7], [4, 1, 6], [2, 3, 4, 5], [7, 8, 9]):
        f = mixed_radix.FactorList(factors)
        d = f.product
        good = all(mixed_radix.compose_digits(mixed_radix.decompose_digits(r, f), f) == r
                   for r in range(d))
        good &= all(mixed_radix.unfactor_form(*mixed_radix.factor_form(i, f), f) == i
                    for i in range(1, 10 * d + 1) if i % d)
        ok &= good
        print(f"mixed-radix\t{f}\t{'ok' if good else 'FAIL'}", file=out)
    return ok


def cmd_verify(args, out) -> int:
    chosen = [name for name in ("bijection", "series", "glaisher", "mixed_radix")
              if getattr(args, name)]
    if not chosen:
        chosen = ["bijection", "series", "glaisher", "mixed_radix"]
    runners = {"bijection": _verify_bijection, "series": _verify_series,
               "glaisher": _verify_glaisher, "mixed_radix": _verify_mixed_radix}
    ok = True
    for name in chosen:
        start = time.perf_counter()
        good = runners[name](args, out)
        ok &= good
        print(f"# {name}: {'PASS' if good else 'FAIL'} "
              f"({time.perf_counter() - start:.2f}s)", file=out)
    print("PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args, out) -> int:
    out.write(render_table(args.k, args.l, args.n, args.strategy, args.factors, args.format))
    return EXIT_OK


def cmd_companions(args, out) -> int:
    variant = args.variant or companions.DEFAULT_VARIANT[args.k]
    try:
        report = companions.equinumerosity_report(args.n_max, args.k, variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"n\tR_{args.k},2\t{variant}\tmatch", file=out)
    for row in report.rows:
        print(f"{row.n}\t{row.regular}\t{row.companion}\t{'yes' if row.match else 'NO'}",
              file=out)
    if report.first_mismatch is None:
        print(f"PASS: counts agree for n <= {args.n_max}", file=out)
        return EXIT_OK
    n = report.first_mismatch
    print(f"{report.verdict}: first mismatch at n = {n}", file=out)
    print(f"R_{args.k},2({n}): " + ", ".join(map(str, report.regular_objects)), file=out)
    print(f"{variant}({n}): " + ", ".join(map(str, report.companion_objects)), file=out)
    return EXIT_FAIL


def cmd_factorize(args, out) -> int:
    prime = bij.prime_factorization(args.k, args.l)
    optimal = bij.optimal_factorization(args.k, args.l)
    if args.format == "json":
        print(json.dumps({name: {"k": list(cf.k_factors), "l": list(cf.l_factors)}
                          for name, cf in (("prime", prime), ("optimal", optimal))}), file=out)
    elif args.format == "tsv":
        print(f"prime\t{prime}\noptimal\t{optimal}", file=out)
    else:
        print(f"prime:   k = {prime.k_factors or 1}   l = {prime.l_factors or 1}", file=out)
        print(f"optimal: k = {optimal.k_factors or 1}   l = {optimal.l_factors or 1}",
              file=out)
    return EXIT_OK


def cmd_order_report(args, out) -> int:
    report = bij.order_dependence_report(args.k, args.l, args.n_max)
    print(f"orderings: {len(report.orderings)} "
          f"({', '.join(str(cf) for cf in report.orderings)})", file=out)
    print(f"partitions checked: {report.checked}", file=out)
    if report.coincide:
        print("all orderings give the same image", file=out)
    else:
        print("orderings disagree, e.g.:", file=out)
        for lam, images in report.differences:
            print(f"  {format_partition(lam)} -> "
                  + " | ".join(format_partition(m) for m in images), file=out)
    return EXIT_OK


COMMANDS = {
    "map": cmd_map, "inverse": cmd_map, "enumerate": cmd_enumerate,
    "series": cmd_series, "verify": cmd_verify, "table": cmd_table,
    "companions": cmd_companions, "factorize": cmd_factorize,
    "order-report": cmd_order_report,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
