"""Command-line front end.  Exit codes: 0 ok, 1 check failure, 2 usage or config error, 3 inconsistency."""

from __future__ import annotations

import argparse
import json
import sys

from .brauer import build_system, solve
from .burnside import BurnsideError, inc_class, nfca
from .config import ConfigError, load, validate_standard_form
from .finabelian import FinAbGroup
from .groupcoh import FiniteGroupSpec, UnknownGroupError, cohomology
from .report import Exact, InconsistencyError, InvariantReport, OrderOnly, compute_report
from .suite import generate_dj, oracle, paper_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3


def _factors(text: str) -> FinAbGroup:
    text = text.strip()
    if text in ("", "0"):
        return FinAbGroup()
    try:
        return FinAbGroup.from_orders([int(t) for t in text.replace(" ", "").split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated orders, got {text!r}") from None


def _group(text: str) -> FiniteGroupSpec:
    try:
        if text[:1].isdigit():
            return FiniteGroupSpec(abelian=tuple(int(t) for t in text.split(",")))
        return FiniteGroupSpec(name=text)
    except (ValueError, UnknownGroupError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dump(doc) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False))


def _report_text(rep: InvariantReport) -> str:
    h1 = rep.h1_pic
    if isinstance(h1, Exact):
        h1s = str(h1.group)
    elif isinstance(h1, OrderOnly):
        h1s = f"order {h1.order}, one of: " + ", ".join(map(str, h1.candidates))
    else:
        h1s = f"undetermined ({h1.reason})"

    def status(s):
        name = type(s).__name__.lower()
        detail = getattr(s, "reason", None) or getattr(s, "evidence", None)
        return f"{name} ({detail})" if detail else name

    rows = [
        ("Br([X/G])", str(rep.brauer)),
        ("H^2(G, k^x)", str(rep.h2)),
        ("H^3(G, k^x)", str(rep.h3)),
        ("H^1(G, Pic X)", h1s),
        ("Amitsur", status(rep.amitsur)),
        ("delta_3", status(rep.delta3)),
    ]
    lines = [f"{k:<15}{v}" for k, v in rows]
    lines += [f"  note: {n}" for n in rep.notes]
    return "\n".join(lines)


def cmd_report(args) -> int:
    c = load(args.path)
    rep = compute_report(c, args.known_h1)
    warnings = validate_standard_form(c)
    if args.format == "json":
        _dump(rep.to_json_dict())
    else:
        print(_report_text(rep))
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_brauer(args) -> int:
    c = load(args.path)
    s = build_system(c)
    res = solve(s)
    if args.format == "json":
        _dump({
            "brauer": res.group.to_json(),
            "unknowns": [[u.curve, u.point, u.branch, u.modulus] for u in s.unknowns],
            "generators": [
                {"order": g.order, "residues": list(g.residues), **({"tag": g.tag} if g.tag else {})}
                for g in res.generators
            ],
        })
    else:
        print(f"Br([X/G]) = {res.group}")
        print(f"{len(s.unknowns)} unknowns, {len(s.constraints)} constraints, unramified part {s.free_part}")
        for g in res.generators:
            print(f"  order {g.order}: {g.tag or list(g.residues)}")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    t = cohomology(args.group)
    if args.format == "json":
        _dump({"group": str(args.group), "h1": t.h1.to_json(), "h2": t.h2.to_json(), "h3": t.h3.to_json()})
    else:
        for i in (1, 2, 3):
            print(f"H^{i}({args.group}, k^x) = {t[i]}")
    return EXIT_OK


def cmd_burnside(args) -> int:
    c = load(args.path)
    inc = inc_class(c)
    fca = nfca(c) if c.is_cyclic else None
    if args.format == "json":
        _dump({"inc": inc.to_json(), "nfca": fca.to_json() if fca else None})
    else:
        print(f"inc: {len(inc)} incompressible symbol(s)")
        for s in inc.symbols:
            print(f"  {s}")
        if fca is not None:
            for r, e in enumerate(fca.entries, start=1):
                print(f"  NFC(g^{r}): " + ("-" if e is None else f"genus {e.genus}, {e.label}"))
    return EXIT_OK


def cmd_dj(args) -> int:
    try:
        doc = generate_dj(args.n, args.r, args.fixed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _emit_checks(results, fmt) -> int:
    failed = [r for r in results if not r.ok]
    if fmt == "json":
        _dump([{"case": r.case, "check": r.check, "ok": r.ok,
                "expected": str(r.expected), "actual": str(r.actual)} for r in results])
    else:
        for r in results:
            print(r.line())
        print(f"{len(results) - len(failed)}/{len(results)} passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_paper_suite(args) -> int:
    return _emit_checks(paper_suite(args.fixtures), args.format)


def cmd_oracle(args) -> int:
    return _emit_checks(oracle(args.seed, args.count), args.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equicohom", description="Equivariant birational invariants of surface actions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("report", parents=[common], help="Br, H^i(G, k^x) and H^1(G, Pic X)")
    s.add_argument("path")
    s.add_argument("--known-h1", type=_factors, default=None, metavar="ORDERS",
                   help="H^1(G, Pic X) known from elsewhere, e.g. 3 or 2,2")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("brauer", parents=[common], help="solve the residue system")
    s.add_argument("path")
    s.set_defaults(func=cmd_brauer)

    s = sub.add_parser("cohomology", parents=[common], help="H^i(G, k^x), i = 1, 2, 3")
    s.add_argument("group", type=_group, help="comma-separated cyclic orders, or D8")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("burnside", parents=[common], help="incompressible symbols and NFCA")
    s.add_argument("path")
    s.set_defaults(func=cmd_burnside)

    s = sub.add_parser("dj", help="generate a de Jonquieres configuration")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--fixed", type=int, choices=[0, 2, 4], required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dj)

    s = sub.add_parser("paper-suite", parents=[common], help="check every fixture and the dJ grid")
    s.add_argument("--fixtures", default=None, help="fixture directory (default: bundled, or $EQUICOHOM_FIXTURES)")
    s.set_defaults(func=cmd_paper_suite)

    s = sub.add_parser("oracle", parents=[common], help="randomized solver cross-checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=200)
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"inconsistent configuration: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ConfigError, BurnsideError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
