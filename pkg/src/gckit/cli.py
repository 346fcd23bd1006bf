"""Command-line front end: `gckit verify|table|examples|pierce`.

Exit codes: 0 everything passed, 1 a check failed, 2 input or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from gckit import instances, suites, worked
from gckit.conv import ConvAlgebra
from gckit.errors import GckitError, ParseError, SizeLimit, UnknownExample, UnknownSuite
from gckit.pierce import PierceSpectrum
from gckit.report import FAIL
from gckit.skew import skew_ring

SUITE_NAMES = list(suites.SUITES) + ["all"]


def format_table(labels, cell):
    """Square table with row/column labels; cell(i, j) gives the entry label."""
    n = len(labels)
    rows = [[""] + list(labels)] + [[labels[i]] + [cell(i, j) for j in range(n)] for i in range(n)]
    width = max(len(x) for r in rows for x in r)
    return "\n".join(" ".join(x.rjust(width) for x in r).rstrip() for r in rows)


def _table_of(reg, oid):
    kind = reg.kind(oid)
    obj = reg.get(oid)
    if kind == "semigroup":
        return format_table(list(obj.labels), lambda i, j: obj.labels[obj(i, j)])
    if kind == "ring":
        R = obj
    elif kind == "sheaf":
        R = ConvAlgebra(obj).ring
    elif kind == "spectral_action":
        R = skew_ring(obj).ring
    elif kind == "boolalg":
        labels = [obj.label(i) for i in range(obj.n)]
        return format_table(labels, lambda i, j: labels[obj.m(i, j)])
    else:
        raise ParseError(f"no multiplication table for a {kind}")
    labels = R.labels()
    return format_table(labels, lambda i, j: labels[R.times(i, j)])


def cmd_verify(args):
    reg = instances.load(args.file)
    report = suites.run_suite(reg, args.suite)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for c in report.checks:
            print(c.line())
        counts = report.counts()
        print(f"suite {report.suite}: {counts['pass']} passed, {counts['fail']} failed, "
              f"{counts['skipped']} skipped")
        if args.timing:
            print(f"elapsed {report.elapsed:.2f}s")
    return 0 if report.ok else 1


def cmd_table(args):
    reg = instances.load(args.file)
    print(_table_of(reg, args.object_id))
    return 0


def cmd_examples(args):
    if args.action == "list":
        for name in worked.names():
            print(f"{name}: {worked.REGISTRY[name][0]}")
        return 0
    if not args.name:
        raise UnknownExample("examples run needs a name")
    lines, ok = worked.run(args.name)
    print(f"example {args.name}: {worked.REGISTRY[args.name][0]}")
    for line in lines:
        print(line)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_pierce(args):
    reg = instances.load(args.file)
    R = reg.get(args.ring_id, "ring")
    P = PierceSpectrum(R)
    B = P.B
    print("B = {" + ", ".join(R.label(e) for e in B.elements) + "}")
    print("atoms: " + ", ".join(B.label(a) for a in B.atoms()))
    for lam, st in zip(P.points, P.stalks):
        atom = next(a for a in B.atoms() if lam[a])
        ideal = ", ".join(R.label(x) for x in sorted(st.ideal.members))
        print(f"stalk at λ{B.label(atom)}: {st.ring.n} elements, kernel {{{ideal}}}")
    print("Psi:")
    C = P.sections
    for r in range(R.n):
        print(f"  {R.label(r)} -> {C.label(C.vals(P.gelfand_iso(r)))}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="gckit", description="Finite skew rings, groupoid algebras "
                                "and Pierce spectra, checked exhaustively.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite over an instance file")
    v.add_argument("file", help="instance JSON, or pack:<name> for a shipped pack")
    v.add_argument("--suite", default="all", help="one of " + ", ".join(SUITE_NAMES))
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.add_argument("--timing", action="store_true", help="print elapsed time")
    v.set_defaults(fn=cmd_verify)
    t = sub.add_parser("table", help="print the multiplication table of an object")
    t.add_argument("file")
    t.add_argument("object_id")
    t.set_defaults(fn=cmd_table)
    e = sub.add_parser("examples", help="list or run the worked examples")
    e.add_argument("action", choices=["list", "run"])
    e.add_argument("name", nargs="?")
    e.set_defaults(fn=cmd_examples)
    pc = sub.add_parser("pierce", help="Pierce spectrum, stalks and Gelfand map of a ring")
    pc.add_argument("file")
    pc.add_argument("ring_id")
    pc.set_defaults(fn=cmd_pierce)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, UnknownSuite, UnknownExample) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GckitError as exc:
        print(f"{FAIL}: {type(exc).__name__}: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
