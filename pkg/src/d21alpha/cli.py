"""Command-line front end.

Exit codes: 0 all checks pass, 2 usage error, 3 excluded parameter, 4 a check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import report
from .models import ExcludedParameterError, UnsupportedQuotientError
from .report import RunConfig, UsageError
from .scalars import PoleError, ScalarParseError
from .superpoly import SuperPolynomial

EXIT_OK, EXIT_USAGE, EXIT_EXCLUDED, EXIT_FAILED = 0, 2, 3, 4

COMMANDS = ("verify-jacobi", "verify-jordan", "verify-tkk", "verify-rep", "verify-skew", "gram",
            "kernel-check", "gk-growth", "decompose", "sb", "recurrences", "report-all")


def _common(p, lam_choices=("alpha", "one")):
    p.add_argument("--alpha", default="symbolic", help="'symbolic' or a rational p/q")
    p.add_argument("--lambda", dest="lam", default="alpha", choices=lam_choices)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized sweeps (printed)")


def build_parser():
    ap = argparse.ArgumentParser(prog="d21alpha", description="Exact checks for D(2,1;alpha) and its models.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-jacobi", help="super-Jacobi identity on all basis triples")
    _common(p)
    p.add_argument("--sigma", help="comma-separated s1,s2,s3 for the family Gamma(s1,s2,s3)")

    for name, helptext in (("verify-jordan", "Jordan identity of D_alpha and the g_+ product"),
                           ("verify-tkk", "TKK dictionary is a Lie superalgebra isomorphism")):
        _common(sub.add_parser(name, help=helptext))

    p = sub.add_parser("verify-rep", help="representation property of pi and rho")
    _common(p, ("alpha", "one", "zero-mode"))
    p.add_argument("--max-degree", type=int, default=4)

    p = sub.add_parser("verify-skew", help="skew-supersymmetry of rho for the Bessel-Fischer product")
    _common(p)
    p.add_argument("--max-degree", type=int, default=4)

    p = sub.add_parser("gram", help="Gram matrix of the Bessel-Fischer product on one level")
    _common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--det", action="store_true", help="also report the determinant")

    p = sub.add_parser("kernel-check", help="reproducing property of the kernel")
    _common(p)
    p.add_argument("--max-degree", type=int, default=6)

    p = sub.add_parser("gk-growth", help="dimensions of U_k(g).1")
    _common(p)
    p.add_argument("--max-k", type=int, default=8)

    p = sub.add_parser("decompose", help="k0 decomposition of one level, Fock and W side")
    _common(p)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("sb", help="Segal-Bargmann transform of one element")
    _common(p)
    p.add_argument("--input", required=True, help="polynomial JSON, inline or a file path")
    p.add_argument("--direction", choices=("forward", "inverse"), default="inverse")

    p = sub.add_parser("recurrences", help="Omega recurrences and the summation lemma")
    _common(p)
    p.add_argument("--max-k", type=int, default=10)

    p = sub.add_parser("report-all", help="every check at moderate sizes")
    _common(p)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--max-k", type=int, default=8)
    p.add_argument("--degree", type=int, default=3)
    return ap


def _read_poly(text):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--input is not valid JSON: {exc}") from exc
    try:
        return SuperPolynomial.from_json(data)
    except (KeyError, TypeError, ValueError, ScalarParseError) as exc:
        raise UsageError(f"--input is not a polynomial: {exc}") from exc


def _config(args):
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2 ** 31)
    cfg = RunConfig(alpha=report.parse_alpha(args.alpha), lam=args.lam, seed=seed)
    for attr in ("degree", "max_degree", "max_k"):
        v = getattr(args, attr, None)
        if v is not None:
            if v < 0:
                raise UsageError(f"--{attr.replace('_', '-')} must be non-negative")
            setattr(cfg, attr, v)
            cfg.extra[attr] = v
    if getattr(args, "sigma", None):
        parts = args.sigma.split(",")
        if len(parts) != 3:
            raise UsageError("--sigma needs three comma-separated values")
        cfg.sigma = tuple(parts)
        cfg.extra["sigma"] = args.sigma
    return cfg


def _dispatch(args, cfg):
    cmd = args.command
    if cmd == "verify-jacobi":
        return report.run_jacobi(cfg)
    if cmd == "verify-jordan":
        return report.run_jordan(cfg)
    if cmd == "verify-tkk":
        return report.run_tkk(cfg)
    if cmd == "verify-rep":
        return report.run_rep(cfg)
    if cmd == "verify-skew":
        return report.run_skew(cfg)
    if cmd == "gram":
        return report.run_gram(cfg, with_det=args.det)
    if cmd == "kernel-check":
        return report.run_kernel(cfg)
    if cmd == "gk-growth":
        return report.run_gk(cfg)
    if cmd == "decompose":
        return report.run_decompose(cfg)
    if cmd == "sb":
        return report.run_sb(cfg, _read_poly(args.input), args.direction)
    if cmd == "recurrences":
        return report.run_recurrences(cfg)
    return report.run_all(cfg)


def _emit(doc, fmt, out):
    if fmt == "json":
        json.dump(doc, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    out.write(f"{doc['command']} seed={doc.get('seed')} {json.dumps(doc.get('parameters', {}), sort_keys=True)}\n")
    for r in doc.get("checks", []):
        status = "PASS" if r["pass"] else "FAIL"
        out.write(f"{status} {r['name']}")
        if r.get("lambda"):
            out.write(f" [lambda={r['lambda']}]")
        if not r["pass"]:
            out.write(f" failures={json.dumps(r['failures'][:5])}")
        out.write("\n")
    if "error" in doc:
        out.write(f"ERROR {doc['error']}\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on parse errors
    doc = {"schema_version": report.SCHEMA_VERSION, "command": args.command}
    try:
        cfg = _config(args)
        results = _dispatch(args, cfg)
    except UsageError as exc:
        doc.update({"pass": False, "error": f"usage: {exc}"})
        _emit(doc, args.format, out)
        return EXIT_USAGE
    except (ExcludedParameterError, PoleError, ZeroDivisionError) as exc:
        doc.update({"pass": False, "error": f"excluded parameter: {exc}"})
        _emit(doc, args.format, out)
        return EXIT_EXCLUDED
    except UnsupportedQuotientError as exc:
        doc.update({"pass": False, "error": f"usage: {exc}"})
        _emit(doc, args.format, out)
        return EXIT_USAGE
    doc = report.envelope(args.command, cfg, results)
    _emit(doc, args.format, out)
    return EXIT_OK if doc["pass"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
