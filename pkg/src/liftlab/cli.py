"""The liftlab command line: table, ibr, special, verify, corpus."""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .brauer import decomposition_matrix, ibr, lifts, restrict_to_p_regular
from .chartab import character_table
from .errors import LiftLabError
from .permgroup import DEFAULT_ORDER_BOUND, cycle_string
from .pspecial import factorize, is_p_prime_special, is_p_special
from .vertex import VerifierReport


def _add_group_arg(sub):
    sub.add_argument("groupfile", help="group description file "
                     "(name/degree/gen lines)")


def _load_group(args):
    bound = getattr(args, "order_bound", None) or DEFAULT_ORDER_BOUND
    return harness.parse_group_file(args.groupfile, order_bound=bound)


def _table_payload(G):
    table = character_table(G)
    classes = [{"representative": cycle_string(c.members[0]),
                "order": c.element_order, "size": c.size}
               for c in G.classes]
    rows = [[v.serialize() for v in chi.values] for chi in table]
    return {"classes": classes, "irreducibles": rows}


def cmd_table(args) -> int:
    G = _load_group(args)
    payload = _table_payload(G)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    reps = [c["representative"] for c in payload["classes"]]
    widths = [max(len(r), *(len(row[i]) for row in payload["irreducibles"]))
              for i, r in enumerate(reps)]
    print(f"{G.name or 'group'}: order {G.order}, {len(reps)} classes")
    print("  " + "  ".join(r.rjust(w) for r, w in zip(reps, widths)))
    for row in payload["irreducibles"]:
        print("  " + "  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return 0


def cmd_ibr(args) -> int:
    G = _load_group(args)
    p = args.prime
    brs = ibr(G, p)
    table = character_table(G)
    dec = decomposition_matrix(G, p)
    lift_map = {i: [table.irreducibles.index(chi) for chi in lifts(phi).members]
                for i, phi in enumerate(brs)}
    if args.json:
        payload = {"ibr": [[v.serialize() for v in b.values] for b in brs],
                   "decomposition": [list(r) for r in dec.rows],
                   "lifts": {str(i): v for i, v in lift_map.items()}}
        print(json.dumps(payload, indent=2))
        return 0
    print(f"{G.name or 'group'}: IBr_{p} degrees "
          f"{[b.degree for b in brs]}")
    print("decomposition matrix (rows = ordinary irreducibles):")
    for chi, row in zip(table, dec.rows):
        print(f"  deg {chi.degree}: {list(row)}")
    for i, phi in enumerate(brs):
        print(f"  |L_phi| for phi_{i} (deg {phi.degree}): {len(lift_map[i])}")
    return 0


def cmd_special(args) -> int:
    G = _load_group(args)
    p = args.prime
    print(f"{G.name or 'group'}: irreducibles at p = {p}")
    for i, chi in enumerate(character_table(G)):
        flags = []
        if is_p_special(chi, p):
            flags.append(f"{p}-special")
        if is_p_prime_special(chi, p):
            flags.append(f"{p}'-special")
        fac = factorize(chi, p)
        if fac is not None:
            flags.append("factorable "
                         f"({fac.p_part.degree} x {fac.p_prime_part.degree})")
        print(f"  chi_{i} deg {chi.degree}: {', '.join(flags) or 'none'}")
    return 0


def cmd_verify(args) -> int:
    G = _load_group(args)
    p = args.prime
    names = harness.resolve_checks(args.check.split(",") if args.check else None)
    results = [harness.run_check(G, p, name) for name in names]
    failed = 0
    for res in results:
        status = res["outcome"]
        print(f"{res['name']}: {res['passed']}/{res['instances']} passed "
              f"({res['vacuous']} vacuous) [{status}]")
        if status == "fail":
            failed += 1
            for w in res["witnesses"]:
                if not w["passed"]:
                    print("  counterexample:", json.dumps(w, sort_keys=True))
        elif status in ("unsupported", "skipped"):
            print(f"  {res['reason']}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"group": G.name, "order": G.order, "p": p,
                       "checks": results}, fh, indent=2, sort_keys=True)
    return 1 if failed else 0


def cmd_corpus(args) -> int:
    workers = args.workers
    if args.config:
        cfg = harness.read_config(args.config)
        workers = cfg.get("workers", workers)
    groups = [args.filter] if args.filter else None
    primes = [args.prime] if args.prime else None
    checks = args.check.split(",") if args.check else None
    report = harness.run_suite(groups=groups, primes=primes, checks=checks,
                               workers=workers)
    print(harness.render_report(report, "markdown"))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(harness.render_report(report, "json"))
    return 0 if report.failed_nonvacuous == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftlab",
        description="Exact character data and lift-counting verifiers for "
                    "small p-solvable permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="print the character table")
    _add_group_arg(p_table)
    p_table.add_argument("--json", action="store_true")
    p_table.set_defaults(func=cmd_table)

    p_ibr = sub.add_parser("ibr", help="Brauer characters, decomposition "
                           "matrix, lift counts")
    _add_group_arg(p_ibr)
    p_ibr.add_argument("-p", "--prime", type=int, required=True)
    p_ibr.add_argument("--json", action="store_true")
    p_ibr.set_defaults(func=cmd_ibr)

    p_special = sub.add_parser("special", help="p-speciality flags per "
                               "irreducible")
    _add_group_arg(p_special)
    p_special.add_argument("-p", "--prime", type=int, required=True)
    p_special.set_defaults(func=cmd_special)

    p_verify = sub.add_parser("verify", help="run claim verifiers on a group")
    _add_group_arg(p_verify)
    p_verify.add_argument("-p", "--prime", type=int, required=True)
    p_verify.add_argument("--check", default="all",
                          help="comma list of: "
                               + "|".join(harness.CHECK_NAMES) + "|all")
    p_verify.add_argument("--json", metavar="PATH",
                          help="also write results as JSON")
    p_verify.set_defaults(func=cmd_verify)

    p_corpus = sub.add_parser("corpus", help="run the verifier suite over "
                              "the built-in corpus")
    p_corpus.add_argument("--filter", metavar="NAME",
                          help="restrict to one corpus group")
    p_corpus.add_argument("-p", "--prime", type=int,
                          help="override the per-entry prime list")
    p_corpus.add_argument("--check", metavar="LIST",
                          help="comma list of checks (default all)")
    p_corpus.add_argument("--json", metavar="PATH",
                          help="write the JSON report here")
    p_corpus.add_argument("--workers", type=int, default=1)
    p_corpus.add_argument("--config", metavar="PATH",
                          help="key-value file overriding workers")
    p_corpus.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LiftLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
