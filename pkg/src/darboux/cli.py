"""Command-line front end.

Subcommands: ``analyze`` runs the full pipeline and writes report.json,
integral.txt and the proximity-graph DOT files; ``generate`` emits a
seeded benchmark input with a ground-truth sidecar; ``verify`` checks a
given product integral against a system; ``prox`` prints certified
continued-fraction digits and the proximity graph of a ratio.

Exit codes: 0 success/verified, 10 algorithmic Zero, 1 failed
verification, and one code per hard-error class (20+, see errors module).
Diagnostics go to stderr; artifacts are only written on success or Zero.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import AnalysisOptions
from .errors import DarbouxError, InputError
from .fields import ConstantSymbol, Tower
from .inputlang import InputDocument, parse, parse_integral
from .integrals import extended_report, first_integral
from .poly import Polynomial
from .projective import cofactor
from .reduction import continued_fraction, prox_of
from .report import build_report, chain_dot, omega_dot, report_json

EXIT_ZERO = 10
EXIT_UNVERIFIED = 1

PI_DIGITS = "3.14159265358979323846264338327950288419716939937510582097494459230781640629"


def _merge_options(doc_options, args):
    opts = doc_options
    for key in ("budget_points", "cf_depth", "precision_max", "seed", "jobs"):
        val = getattr(args, key, None)
        if val is not None:
            opts = replace(opts, **{key: val})
    return opts


def _add_option_flags(sub):
    sub.add_argument("--budget-points", dest="budget_points", type=int)
    sub.add_argument("--cf-depth", dest="cf_depth", type=int)
    sub.add_argument("--precision-max", dest="precision_max", type=int)
    sub.add_argument("--seed", dest="seed", type=int)
    sub.add_argument("--jobs", dest="jobs", type=int)


def cmd_analyze(args):
    text = Path(args.input).read_text(encoding="utf-8")
    doc = parse(text)
    options = _merge_options(doc.options, args)
    doc.options = options
    system, content = doc.system()
    result = first_integral(system, options)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    chains = None
    if result.integral is not None and result.integral.verified and result.rho is not None:
        chains = extended_report(result, options)
    report = build_report(doc, result, chains=chains, content=content)
    (out / "report.json").write_text(report_json(report), encoding="utf-8")
    (out / "omega.dot").write_text(omega_dot(result), encoding="utf-8")
    if chains:
        chain_dir = out / "chains"
        chain_dir.mkdir(exist_ok=True)
        for ch in chains:
            (chain_dir / ("S_P%d.dot" % ch.s_pid)).write_text(chain_dot(ch), encoding="utf-8")
    if result.zero is not None:
        print("0 (%s): %s" % (result.zero.stage, result.zero.reason), file=sys.stderr)
        return EXIT_ZERO
    integral = result.integral
    (out / "integral.txt").write_text(integral.text() + "\n", encoding="utf-8")
    label = "DPWAI first integral" if integral.dpwai_certified else "Darboux integral, not DPWAI-certified"
    print("%s: %s" % (label, integral.text()))
    for note in integral.dpwai_notes:
        print("note: %s" % note, file=sys.stderr)
    return 0


def cmd_verify(args):
    text = Path(args.input).read_text(encoding="utf-8")
    doc = parse(text)
    system, _ = doc.system()
    integral_text = Path(args.integral).read_text(encoding="utf-8").strip()
    factors = parse_integral(integral_text, doc.tower)
    tower = doc.tower
    residual = Polynomial.zero(tower, ("x", "y"))
    for f, lam in factors:
        k = cofactor(system, f)
        if k is None:
            print("curve %s is not invariant" % f.text(), file=sys.stderr)
            return EXIT_UNVERIFIED
        residual = residual + k * lam
    if residual.is_zero():
        print("verified: sum of exponent-weighted cofactors vanishes identically")
        return 0
    print("not a first integral: residual cofactor sum %s" % residual.text(), file=sys.stderr)
    return EXIT_UNVERIFIED


def cmd_prox(args):
    if args.input:
        doc = parse(Path(args.input).read_text(encoding="utf-8"))
        tower = doc.tower
    else:
        tower = Tower([ConstantSymbol("pi", "transcendental", PI_DIGITS)])
    from .inputlang import _Parser

    parser = _Parser(args.ratio)
    node = parser.expr()
    poly = parser._eval_poly(node, tower, ("x", "y"))
    if not poly.is_constant():
        raise InputError("prox needs a constant ratio expression")
    value = poly.constant_term()
    depth = args.cf_depth if args.cf_depth else AnalysisOptions().cf_depth
    cf = continued_fraction(value, tower.one(), depth)
    chain = prox_of(cf)
    print("digits: %s" % cf.render())
    if chain.multiplicities is not None:
        print("multiplicities: %s" % (tuple(chain.multiplicities),))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "prox.dot").write_text(chain.graph().dot(), encoding="utf-8")
    else:
        sys.stdout.write(chain.graph().dot())
    return 0


def cmd_generate(args):
    from .synth import build_form, random_spec

    tower = Tower([ConstantSymbol("pi", "transcendental", PI_DIGITS)])
    spec = random_spec(args.seed if args.seed is not None else 0, tower)
    system, _ = build_form(spec)
    doc = InputDocument(
        symbols=list(tower.symbols),
        tower=tower,
        block_kind="system",
        first=system.p,
        second=system.q,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "input.dbx").write_text(doc.render(), encoding="utf-8")
    truth = {
        "curves": [f.text() for f in spec.curves],
        "exponents": [str(e) for e in spec.exponents],
        "seed": args.seed if args.seed is not None else 0,
    }
    (out / "truth.json").write_text(json.dumps(truth, indent=2) + "\n", encoding="utf-8")
    print("wrote %s and %s" % (out / "input.dbx", out / "truth.json"))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="darboux",
        description="Exact Darboux first integrals from blow-ups over the line at infinity",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the full pipeline on an input document")
    an.add_argument("input")
    an.add_argument("--out", default="analysis-out")
    _add_option_flags(an)
    an.set_defaults(func=cmd_analyze)

    ve = sub.add_parser("verify", help="check a product integral against a system")
    ve.add_argument("input")
    ve.add_argument("--integral", required=True)
    ve.set_defaults(func=cmd_verify)

    px = sub.add_parser("prox", help="continued fraction digits and Prox graph of a ratio")
    px.add_argument("ratio")
    px.add_argument("--input")
    px.add_argument("--cf-depth", dest="cf_depth", type=int)
    px.add_argument("--out")
    px.set_defaults(func=cmd_prox)

    ge = sub.add_parser("generate", help="emit a seeded benchmark input with ground truth")
    ge.add_argument("--seed", type=int)
    ge.add_argument("--out", default="generated")
    ge.set_defaults(func=cmd_generate)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DarbouxError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
