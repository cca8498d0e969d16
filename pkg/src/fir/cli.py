"""Command line interface: ``fir analyze``, ``fir ctable``, ``fir corpus``.

Exit codes for ``analyze``: 0 if the group has a faithful irreducible
representation in the requested characteristic, 1 if not, 2 on error.
``ctable`` exits 0 on success; ``corpus`` exits 1 if any invariant fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from fir.characters import dixon_table
from fir.corpus import run_corpus
from fir.exceptions import FirError
from fir.groupspec import GroupSpec
from fir.report import analyze

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _characteristic(text: str) -> int:
    from fir.linalg import is_prime

    try:
        c = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if c != 0 and not is_prime(c):
        raise argparse.ArgumentTypeError(f"characteristic must be 0 or a prime, got {c}")
    return c


def cmd_analyze(args) -> int:
    report = analyze(args.group, args.char, oracle=args.oracle, timing=args.timing)
    print(report.to_json() if args.json else report.to_text())
    if not report.consistent:
        print("error: oracle disagrees with the criteria", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_TRUE if report.verdict else EXIT_FALSE


def ctable_dict(spec: GroupSpec) -> dict:
    G = spec.build()
    table = dixon_table(G)
    cd = table.class_data
    return {
        "group": str(spec),
        "order": G.n,
        "exponent": table.e,
        "ell": table.ell,
        "classes": [
            {"size": int(c.size), "representative": int(c[0]), "element_order": int(G.element_order[c[0]])}
            for c in cd.classes
        ],
        "characters": [
            {
                "degree": table.degrees[i],
                "values": table.multiplicities[i].tolist(),
                "kernel_order": table.kernel_orders[i],
            }
            for i in range(len(table))
        ],
    }


def cmd_ctable(args) -> int:
    spec = GroupSpec.parse(args.group)
    if args.json:
        print(json.dumps(ctable_dict(spec), indent=2))
        return EXIT_TRUE
    G = spec.build()
    table = dixon_table(G)
    cd = table.class_data
    header = ["deg", "ker"] + [f"{int(G.element_order[c[0]])}/{c.size}" for c in cd.classes]
    rows = [
        [str(table.degrees[i]), str(table.kernel_orders[i])] + [table.value_text(i, k) for k in range(len(cd))]
        for i in range(len(table))
    ]
    widths = [max(len(r[j]) for r in [header] + rows) for j in range(len(header))]
    print(f"{spec}: order {G.n}, {len(table)} classes; z = exp(2 pi i / {table.e}); column = element order/class size")
    for r in [header] + rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return EXIT_TRUE


def cmd_corpus(args) -> int:
    results = run_corpus(with_oracle=args.with_oracle, jobs=args.jobs)
    if args.json:
        print(json.dumps([
            {"group": r.spec, "order": r.order, "pi": r.pi, "verdict": r.verdict,
             "degrees": r.degrees, "checks": r.checks, "violations": r.violations}
            for r in results
        ], indent=2))
    else:
        width = max(len(r.spec) for r in results)
        for r in results:
            degs = ""
            if r.degrees is not None:
                degs = " degrees " + ",".join(f"{d}^{k}" if k > 1 else str(d) for d, k in sorted(Counter(r.degrees).items()))
            status = "PASS" if r.ok else "FAIL"
            print(f"{status}  {r.spec:<{width}}  order {r.order:>4}  Pi {str(r.pi):<8} verdict {str(r.verdict):<5}"
                  f"  checks {sum(r.checks.values())}/{len(r.checks)}{degs}")
            for v in r.violations:
                print(f"      {v}")
        failed = sum(not r.ok for r in results)
        print(f"{len(results)} groups, {failed} with violations")
    return EXIT_TRUE if all(r.ok for r in results) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fir",
        description="Decide whether a finite group has a faithful irreducible representation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run every criterion on one group")
    p.add_argument("--group", required=True, help="group spec, e.g. burnside, gdq:2,3, perm:(1 2 3);(1 2)")
    p.add_argument("--char", type=_characteristic, default=0, help="field characteristic (0 or a prime)")
    p.add_argument("--oracle", action="store_true", help="also compute the complex character table")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--timing", action="store_true", help="fill timing_ms (otherwise null, keeping output reproducible)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ctable", help="print the exact complex character table")
    p.add_argument("--group", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ctable)

    p = sub.add_parser("corpus", help="check every invariant over the builtin corpus")
    p.add_argument("--with-oracle", action="store_true", help="include the character-table oracle")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FirError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
