"""Command-line entry point.

Exit codes: 0 success/true, 1 semantic false or refuted, 2 parse error,
3 unsupported construct (e.g. recursion), 4 missing loop invariant,
5 internal fault.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    MissingInvariant, ParseError, RecursionUnsupported, TruconcError, UndefinedConstant,
    UnsupportedConstruct,
)
from .hoare import HoareTriple, check_vcs
from .ippl import (
    DEFAULT_FUEL, Final, StateDomain, agreement_mismatches, check_interference,
    denote, exec_bigstep, find_difference, format_outcome, locations, parse_ippl,
    parse_state, parse_triple, render_bexp,
)
from .ippl.analysis import expr_locations
from .lts import build_lts, distinguishing_trace, dump_lts, format_label, to_dot
from .process import expand_constants, normalize, parse_spec, render

DEFAULT_LO, DEFAULT_HI = 0, 3
DEFAULT_QLO, DEFAULT_QHI = -4, 4

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_ANNOTATION, EXIT_FAULT = range(6)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


class _Out:
    def __init__(self, machine: bool):
        self.machine = machine
        self.lines = []

    def record(self, record_type, human, /, **fields):
        if self.machine:
            parts = [record_type] + [f"{k}={v}" for k, v in fields.items()]
            self.lines.append("\t".join(parts))
        else:
            self.lines.append(human)

    def flush(self):
        if self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _process(path):
    defs, main, ctx = parse_spec(_read(path))
    return expand_constants(main, defs), ctx


def _domain(cmds, args, extra=()):
    locs = set(extra)
    for c in cmds:
        locs |= locations(c)
    return StateDomain(tuple(sorted(locs)), args.lo, args.hi)


def cmd_normalize(args, out):
    term, ctx = _process(args.file)
    text = render(normalize(term, ctx))
    out.record("normal_form", text, term=text)
    return EXIT_OK


def cmd_lts(args, out):
    term, ctx = _process(args.file)
    lts = build_lts(term, ctx)
    text = to_dot(lts) if args.dot else dump_lts(lts)
    for line in text.rstrip("\n").split("\n"):
        out.lines.append(line)
    return EXIT_OK


def cmd_equiv(args, out):
    t1, ctx1 = _process(args.file1)
    t2, ctx2 = _process(args.file2)
    l1, l2 = build_lts(t1, ctx1), build_lts(t2, ctx2)
    trace = distinguishing_trace(l1, l2)
    if trace is None:
        out.record("equiv", "step-bisimilar", result="true")
        return EXIT_OK
    labels = " ".join(format_label(m) for m in trace)
    out.record("equiv", "not step-bisimilar", result="false")
    out.record("witness", f"distinguishing sequence: {labels or '(termination)'}",
               labels=labels or "-")
    return EXIT_FALSE


def cmd_run(args, out):
    com = parse_ippl(_read(args.file))
    state = parse_state(args.state).extend(locations(com))
    outcome = exec_bigstep(com, state, args.fuel)
    text = format_outcome(outcome)
    out.record("outcome", text, code=outcome.code, detail=text[len(outcome.code):].strip())
    return EXIT_OK if isinstance(outcome, Final) else EXIT_FALSE


def cmd_denote(args, out):
    com = parse_ippl(_read(args.file))
    relation = denote(com, _domain([com], args))
    for a, b in relation:
        out.record("pair", f"{{{a}}} -> {{{b}}}", input=a, output=b)
    if not out.lines:
        out.record("empty", "(empty relation: undefined on every store)")
    return EXIT_OK


def cmd_check_equiv(args, out):
    c0 = parse_ippl(_read(args.file1))
    c1 = parse_ippl(_read(args.file2))
    diff = find_difference(c0, c1, _domain([c0, c1], args), args.fuel)
    if diff is None:
        out.record("equiv", "equivalent on the domain", result="true")
        return EXIT_OK
    out.record("equiv", "not equivalent", result="false")
    out.record("witness", f"from {{{diff.state}}}: {format_outcome(diff.left)}"
               f" / {format_outcome(diff.right)}",
               state=diff.state, left=format_outcome(diff.left),
               right=format_outcome(diff.right))
    return EXIT_FALSE


def cmd_agree(args, out):
    com = parse_ippl(_read(args.file))
    dom = _domain([com], args)
    mismatches = agreement_mismatches(com, dom, args.fuel)
    if not mismatches:
        out.record("agree", f"operational and denotational semantics agree on {len(dom)} states",
                   result="true", states=len(dom))
        return EXIT_OK
    out.record("agree", "semantics disagree", result="false", states=len(dom))
    for m in mismatches:
        den = "undefined" if m.denotational is None else f"{{{m.denotational}}}"
        out.record("mismatch", f"{{{m.state}}}: {format_outcome(m.operational)} vs {den}",
                   state=m.state, operational=format_outcome(m.operational), denotational=den)
    return EXIT_FALSE


def cmd_verify(args, out):
    pre, com, post = parse_triple(_read(args.file))
    triple = HoareTriple(pre, com, post)
    locs = expr_locations(pre) | expr_locations(post)
    dom = _domain([com], args, locs)
    qbound = range(args.qlo, args.qhi + 1)
    results, bounds = check_vcs(triple, dom, qbound, args.fuel)
    failed = [r for r in results if r[1] is not None]
    verdict = "refuted" if failed else "proven"
    out.record("verdict", f"{verdict.upper()} (values [{bounds['lo']},{bounds['hi']}], "
               f"quantifiers [{bounds['qlo']},{bounds['qhi']}], "
               f"{bounds['extra_states']} reached states beyond the domain)",
               result=verdict, **bounds)
    for i, (vc, witness) in enumerate(results, 1):
        status = "ok" if witness is None else "FAILED"
        human = f"VC {i} [{status}] {vc.description}: {render_bexp(vc.assertion)}"
        if witness is not None:
            human += f"\n  witness: {witness}"
        out.record("vc", human, index=i, status=status.lower(),
                   assertion=render_bexp(vc.assertion),
                   witness="-" if witness is None else witness)
    return EXIT_FALSE if failed else EXIT_OK


def cmd_interference(args, out):
    com = parse_ippl(_read(args.file))
    reports = check_interference(com)
    if not reports:
        out.record("interference", "no interference between parallel branches", races=0)
        return EXIT_OK
    for r in reports:
        out.record("race", f"{r.kind} on {r.location} in: {r.command}",
                   location=r.location, kind=r.kind, command=r.command)
    return EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truconc",
        description="Process-term normalization, step bisimulation and the IPPL toolchain.",
        epilog=f"Defaults: values [{DEFAULT_LO},{DEFAULT_HI}], quantifiers "
               f"[{DEFAULT_QLO},{DEFAULT_QHI}], fuel {DEFAULT_FUEL}. Use '-' to read stdin.")
    parser.add_argument("--format", choices=("human", "machine"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    def bounds(p, quantifiers=False):
        p.add_argument("--lo", type=int, default=DEFAULT_LO, help="lowest store value")
        p.add_argument("--hi", type=int, default=DEFAULT_HI, help="highest store value")
        if quantifiers:
            p.add_argument("--qlo", type=int, default=DEFAULT_QLO)
            p.add_argument("--qhi", type=int, default=DEFAULT_QHI)

    def fuel(p):
        p.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="interpreter step budget")

    p = sub.add_parser("normalize", help="print the canonical normal form of main")
    p.add_argument("file")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("lts", help="dump the transition system of main")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit Graphviz instead of text")
    p.set_defaults(func=cmd_lts)

    p = sub.add_parser("equiv", help="decide step bisimilarity of two term files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("run", help="execute a program")
    p.add_argument("file")
    p.add_argument("--state", default="", help="initial store, e.g. 'X=0, Y=1'")
    fuel(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("denote", help="print the denotation over a finite domain")
    p.add_argument("file")
    bounds(p)
    p.set_defaults(func=cmd_denote)

    p = sub.add_parser("check-equiv", help="compare two programs on every store of a domain")
    p.add_argument("file1")
    p.add_argument("file2")
    bounds(p)
    fuel(p)
    p.set_defaults(func=cmd_check_equiv)

    p = sub.add_parser("agree", help="check operational against denotational semantics")
    p.add_argument("file")
    bounds(p)
    fuel(p)
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("verify", help="verify a Hoare triple file")
    p.add_argument("file")
    bounds(p, quantifiers=True)
    fuel(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("interference", help="report races between parallel branches")
    p.add_argument("file")
    p.set_defaults(func=cmd_interference)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "lo", 0) > getattr(args, "hi", 0):
        parser.error("--lo must not exceed --hi")
    if getattr(args, "qlo", 0) > getattr(args, "qhi", 0):
        parser.error("--qlo must not exceed --qhi")
    if getattr(args, "fuel", 0) < 0:
        parser.error("--fuel must be non-negative")
    out = _Out(args.format == "machine")
    try:
        code = args.func(args, out)
    except (ParseError, UndefinedConstant) as exc:
        code = _fail(f"parse error: {exc}", EXIT_PARSE)
    except (RecursionUnsupported, UnsupportedConstruct) as exc:
        code = _fail(f"unsupported: {exc}", EXIT_UNSUPPORTED)
    except MissingInvariant as exc:
        code = _fail(str(exc), EXIT_ANNOTATION)
    except (TruconcError, OSError, ValueError) as exc:
        code = _fail(f"error: {exc}", EXIT_FAULT)
    else:
        out.flush()
    return code


def _fail(message, code):
    print(message, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
