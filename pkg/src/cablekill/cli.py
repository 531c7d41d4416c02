"""Command line interface.

Exit codes:

==========  =============================================================
0           success / certified / certificate accepted
1           refuted, certificate rejected, or an unexpected equivalence
2           usage error (bad flags, unreadable or malformed input)
3           inconclusive (coset enumeration overflow)
==========  =============================================================
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import cable_space as cs
from . import inequiv as iq
from . import knots
from .coset_enum import default_max_cosets, is_trivial_quotient
from .fpres import PresentationError, format_presentation, h1_invariants, parse_presentation
from .suite import DEFAULT_SEED, run_acceptance
from .words import WordError

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_VERDICT_EXIT = {"certified": EXIT_OK, "refuted": EXIT_REFUTED, "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


def _params(args) -> cs.CableParams:
    try:
        return cs.make_params(args.m, args.n)
    except cs.CableError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _spec(text: str):
    try:
        return knots.parse_knotspec(text)
    except knots.KnotError as exc:
        raise UsageError(f"bad knot spec: {exc}") from None


def cmd_nf(args, out):
    p = _params(args)
    try:
        a = cs.parse_element(" ".join(args.element), p)
    except (cs.CableError, WordError) as exc:
        raise UsageError(str(exc)) from None
    print(cs.format_element(a), file=out)
    return EXIT_OK


def cmd_claim1(args, out):
    if args.check_cert:
        try:
            cert = cs.parse_certificate(_read(args.check_cert))
        except cs.CableError as exc:
            raise UsageError(f"{args.check_cert}: {exc}") from None
    else:
        if args.m is None or args.n is None or args.l is None:
            raise UsageError("claim1 needs --m, --n and --l (or --check-cert FILE)")
        if args.l < 1:
            raise UsageError("--l must be >= 1")
        cert = cs.claim1_certificate(args.l, _params(args))
        text = cs.format_certificate(cert)
        if args.emit_cert:
            Path(args.emit_cert).write_text(text)
        out.write(text)
    check = cs.verify_certificate(cert)
    if check.accepted:
        print("certificate accepted", file=out)
        return EXIT_OK
    print(f"certificate rejected: residual {cs.format_element(check.residual)}", file=out)
    return EXIT_REFUTED


def cmd_quotient(args, out):
    try:
        pres = parse_presentation(_read(args.pres))
        kills = [pres.word(w) for w in args.kill]
    except (PresentationError, WordError) as exc:
        raise UsageError(str(exc)) from None
    verdict = is_trivial_quotient(pres, kills, args.max_cosets, transcript=bool(args.transcript),
                                  strategy=args.strategy)
    res = verdict.result
    if args.transcript:
        Path(args.transcript).write_text("\n".join(res.transcript) + "\n")
    if res.completed:
        print(f"index {res.index}", file=out)
    else:
        print(f"overflow {res.max_cosets}", file=out)
    print(f"cosets defined {res.stats.defined}, coincidences {res.stats.coincidences}", file=out)
    return _VERDICT_EXIT[verdict.status]


def cmd_make_pres(args, out):
    spec = _spec(args.spec)
    pres, _ = knots.build(spec, args.d)
    text = f"# {spec} d={args.d}\n" + format_presentation(pres)
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}", file=out)
    return EXIT_OK


def _l_range(text: str) -> range:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b) if sep else int(a)
    except ValueError:
        raise UsageError(f"bad --l-range {text!r} (expected A..B)") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"bad --l-range {text!r}")
    return range(lo, hi + 1)


def cmd_killers(args, out):
    companion = _spec(args.spec)
    _params(args)
    ls = _l_range(args.l_range)
    spec = knots.Cable(args.m, args.n, companion)
    pres, _ = knots.build(spec, args.d)
    print(f"knot {spec} d={args.d}", file=out)
    worst = EXIT_OK
    for l in ls:
        w = knots.killer_word(pres, l)
        v = knots.killer_test(pres, w, args.max_cosets, strategy=args.strategy)
        extra = f", {v.result.stats.defined} cosets" if v.result is not None else ""
        print(f"killer l={l} {w} -> {v.status} ({v.reason}{extra})", file=out)
        worst = max(worst, _VERDICT_EXIT[v.status])
    return worst


def cmd_inequiv(args, out):
    p = _params(args)
    if args.k < 1 or args.l < 1:
        raise UsageError("--k and --l must be >= 1")
    v = iq.inequivalence_verdict(args.k, args.l, p)
    out.write(iq.format_report(v))
    if v.inequivalent or args.k == args.l:
        return EXIT_OK
    return EXIT_REFUTED


def cmd_h1(args, out):
    try:
        pres = parse_presentation(_read(args.pres))
    except PresentationError as exc:
        raise UsageError(str(exc)) from None
    h1 = h1_invariants(pres)
    torsion = " ".join(str(d) for d in h1.torsion) or "none"
    print(f"betti {h1.betti}", file=out)
    print(f"torsion {torsion}", file=out)
    print(f"H1 = {h1}", file=out)
    return EXIT_OK


def cmd_suite(args, out):
    if args.which != "acceptance":
        raise UsageError(f"unknown suite {args.which!r}")
    ok = True
    timings = []
    for row in run_acceptance(args.seed):
        print(row.line(), file=out, flush=True)
        ok &= row.passed
        if row.timing:
            timings.append(f"timing {row.key} {row.timing}")
    print("suite " + ("passed" if ok else "failed"), file=out)
    # wall-clock numbers vary run to run, so they follow the comparable table
    print("--", file=out)
    for line in timings:
        print(line, file=out)
    return EXIT_OK if ok else EXIT_REFUTED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cablekill", description="Killers of cable knot groups, checked by machine.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cable_flags(sp, required=True):
        sp.add_argument("--m", type=int, required=required)
        sp.add_argument("--n", type=int, required=required)

    def tc_flags(sp):
        sp.add_argument("--max-cosets", type=int, default=default_max_cosets())
        sp.add_argument("--strategy", choices=("felsch", "hlt"), default="felsch")

    sp = sub.add_parser("nf", help="normal form w t^z of a cable space element")
    cable_flags(sp)
    sp.add_argument("element", nargs="+", help="e.g. 't x1 t^-1' or 'x1^2 ; t^3'")
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("claim1", help="emit or check a killer certificate")
    cable_flags(sp, required=False)
    sp.add_argument("--l", type=int)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--emit-cert", metavar="FILE")
    group.add_argument("--check-cert", metavar="FILE")
    sp.set_defaults(func=cmd_claim1)

    sp = sub.add_parser("quotient", help="coset enumeration of a quotient")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--kill", nargs="*", default=[], metavar="WORD")
    sp.add_argument("--transcript", metavar="FILE")
    tc_flags(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("make-pres", help="write the presentation of a knot group")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--d", type=int, default=0)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_make_pres)

    sp = sub.add_parser("killers", help="killer tests for g_l on a cable about SPEC")
    sp.add_argument("--spec", required=True, help="companion knot")
    cable_flags(sp)
    sp.add_argument("--l-range", default="1..4")
    sp.add_argument("--d", type=int, default=0)
    tc_flags(sp)
    sp.set_defaults(func=cmd_killers)

    sp = sub.add_parser("inequiv", help="inequivalence case analysis for g_k, g_l")
    cable_flags(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.set_defaults(func=cmd_inequiv)

    sp = sub.add_parser("h1", help="first homology of a presentation")
    sp.add_argument("--pres", required=True)
    sp.set_defaults(func=cmd_h1)

    sp = sub.add_parser("suite", help="run a batch suite")
    sp.add_argument("which", choices=("acceptance",))
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_suite)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        if getattr(args, "max_cosets", 1) < 1:
            raise UsageError("--max-cosets must be >= 1")
        return args.func(args, out)
    except UsageError as exc:
        print(f"cablekill: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except knots.KnotError as exc:
        print(f"cablekill: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
