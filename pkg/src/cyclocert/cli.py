"""Command-line front end.

Exit codes: 0 success, 1 mathematical negative (no certificate, failed
verification), 2 usage, parse or engine error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import Sequence

from . import __version__
from .arith import primes_in_class
from .certifier import (
    DEFAULT_BOUND,
    CertificateFormatError,
    CertificationFailure,
    NumberFieldSpec,
    certificate_from_json,
    certificate_to_dict,
    certificate_to_json,
    certify,
    failure_to_dict,
    verify_certificate,
)
from .cyclotomic import cyclotomic_poly
from .errors import ContractError, RangeError
from .quadratic import (
    QuadFieldSpec,
    conductor_oracle,
    prop3_field,
    prop3_search_classes,
    quad_character,
    quad_semi_split,
)
from .solvability import AcceptedPrimes, obstruction_report, report_to_dict

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclocert", description="Irreducibility certificates for cyclotomic polynomials.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, threads=False):
        p.add_argument("--json", action="store_true", help="emit a single JSON document")
        p.add_argument("--verbose", action="store_true", help="one progress line per residue class on stderr")
        if threads:
            p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("phi", help="print the n-th cyclotomic polynomial")
    p.add_argument("n", type=_positive)
    common(p)

    p = sub.add_parser("certify", help="certify irreducibility of Phi_n over Q[x]/(f)")
    p.add_argument("--field-poly", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
    p.add_argument("--out", help="write the certificate JSON to this path")
    common(p, threads=True)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("path")
    p.add_argument("--lenient", action="store_true", help="accept valid but non-canonical certificates")
    common(p)

    p = sub.add_parser("quad", help="conductor and oracle verdict for Q(sqrt m)")
    p.add_argument("--m", type=_integer, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--certify", action="store_true", help="also run the certifier and compare")
    p.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
    common(p, threads=True)

    p = sub.add_parser("prop3", help="reciprocity search classes for an odd prime")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, default=10**4)
    common(p)

    p = sub.add_parser("scan", help="residue-class obstruction scan")
    p.add_argument("--field-poly", required=True)
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, required=True)
    common(p, threads=True)

    p = sub.add_parser("density", help="fraction of primes accepted as witnesses")
    p.add_argument("--field-poly", required=True)
    p.add_argument("--bound", type=_positive, required=True)
    common(p)
    return parser


class _Output:
    def __init__(self, stdout, stderr, verbose: bool):
        self.stdout, self.stderr, self.verbose = stdout, stderr, verbose
        self.color = stdout.isatty() and "NO_COLOR" not in os.environ

    def line(self, text: str = ""):
        print(text, file=self.stdout)

    def verdict(self, text: str, good: bool):
        if self.color:
            text = f"\033[{32 if good else 31}m{text}\033[0m"
        self.line(text)

    def json(self, doc: dict):
        print(json.dumps(doc, indent=2), file=self.stdout)

    def progress(self, text: str):
        if self.verbose:
            print(text, file=self.stderr)


def _cmd_phi(args, out: _Output) -> int:
    f = cyclotomic_poly(args.n)
    if args.json:
        out.json({"n": args.n, "degree": f.degree, "poly": str(f), "coefficients": list(f.coeffs), "version": FORMAT_VERSION})
    else:
        out.line(str(f))
    return 0


def _render_result(result, out: _Output, as_json: bool):
    if isinstance(result, CertificationFailure):
        if as_json:
            out.json(failure_to_dict(result))
            return
        out.verdict(f"no certificate for Phi_{result.n} over Q[x]/({result.field.f}) up to {result.search_bound}", False)
        out.line("generators without witness: " + ", ".join(str(g.a) for g in result.missing_generators))
        out.line(f"empty classes mod {result.n}: " + ", ".join(str(c.a) for c in result.missing_classes))
        out.line("(not a proof of reducibility)")
        return
    if as_json:
        out.stdout.write(certificate_to_json(result))
        return
    out.verdict(f"Phi_{result.n} is irreducible over Q[x]/({result.field.f})", True)
    out.line(f"search bound: {result.search_bound}")
    for g, w in zip(result.generators, result.witnesses):
        out.line(f"  class {g.a} mod {g.n}: p = {w.p}, root {w.root}")
    for warning in result.warnings:
        out.line(f"warning: {warning}")


def _cmd_certify(args, out: _Output) -> int:
    field = NumberFieldSpec.parse(args.field_poly)
    result = certify(field, args.n, args.bound, threads=args.threads, progress=out.progress)
    if args.out and not isinstance(result, CertificationFailure):
        with open(args.out, "w") as fh:
            fh.write(certificate_to_json(result))
    _render_result(result, out, args.json)
    return 1 if isinstance(result, CertificationFailure) else 0


def _cmd_verify(args, out: _Output) -> int:
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}")
    try:
        cert = certificate_from_json(text)
    except CertificateFormatError as exc:
        ok, reasons = False, [f"malformed certificate: {exc}"]
    else:
        check = verify_certificate(cert, strict=not args.lenient)
        ok, reasons = check.ok, check.reasons
    if args.json:
        out.json({"valid": ok, "reasons": reasons, "version": FORMAT_VERSION})
    else:
        out.verdict("certificate valid" if ok else "certificate INVALID", ok)
        for r in reasons:
            out.line(f"  {r}")
    return 0 if ok else 1


def _cmd_quad(args, out: _Output) -> int:
    spec = QuadFieldSpec(args.m)
    char = quad_character(spec)
    verdict = conductor_oracle(spec, args.n)
    doc = {"m": args.m, "n": args.n, "conductor": char.conductor, "oracle": verdict.value}
    result = None
    if args.certify:
        field = NumberFieldSpec.parse(spec.poly_text)
        result = certify(field, args.n, args.bound, threads=args.threads, progress=out.progress)
        certified = not isinstance(result, CertificationFailure)
        doc["certifier"] = "certificate" if certified else "failure"
        doc["agree"] = certified == (verdict.value == "irreducible")
        doc["result"] = certificate_to_dict(result) if certified else failure_to_dict(result)
    doc["version"] = FORMAT_VERSION
    if args.json:
        out.json(doc)
    else:
        out.line(f"Q(sqrt {args.m}): conductor {char.conductor}")
        out.line(f"oracle: Phi_{args.n} is {verdict.value}")
        if result is not None:
            _render_result(result, out, False)
            out.line("agreement: " + ("yes" if doc["agree"] else "NO"))
    if args.certify and not doc["agree"]:
        return 1
    return 0


def _cmd_prop3(args, out: _Output) -> int:
    spec = prop3_field(args.p)
    rows = []
    for target, search in prop3_search_classes(args.p):
        q = next(iter(primes_in_class(search, args.bound)), None)
        split = quad_semi_split(spec, q) if q is not None else None
        rows.append({"a": target.a, "search_a": search.a, "search_n": search.n, "first_prime": q, "semi_split": split})
    if args.json:
        out.json({"p": args.p, "field_m": spec.m, "bound": args.bound, "classes": rows, "version": FORMAT_VERSION})
    else:
        out.line(f"field Q(sqrt {spec.m}), classes mod {4 * args.p}")
        for r in rows:
            first = r["first_prime"] if r["first_prime"] is not None else f"none <= {args.bound}"
            out.line(f"  a = {r['a']} mod {args.p}: search {r['search_a']} mod {r['search_n']}, first prime {first}")
    return 0 if all(r["semi_split"] for r in rows) else 1


def _cmd_scan(args, out: _Output) -> int:
    field = NumberFieldSpec.parse(args.field_poly)
    report = obstruction_report(field, args.max_n, args.bound, progress=out.progress)
    if args.json:
        out.json(report_to_dict(report))
        return 0
    out.line(f"field Q[x]/({field.f}), primes up to {report.bound}, mode: {report.mode}")
    out.line(f"density: {report.accepted_count}/{report.prime_count} = {float(report.density):.6f}")
    if not report.findings:
        out.line(f"no empty classes for 3 <= n <= {args.max_n}")
    for n, empty in report.findings:
        out.line(f"  n = {n}: empty classes " + ", ".join(map(str, empty)))
    out.line(report.disclaimer)
    return 0


def _cmd_density(args, out: _Output) -> int:
    field = NumberFieldSpec.parse(args.field_poly)
    if args.bound < 2:
        raise ContractError("bound must be at least 2")
    accepted = AcceptedPrimes(field, args.bound)
    num, den, d = len(accepted.primes), accepted.total, accepted.density()
    if args.json:
        out.json({"field_poly": str(field.f), "bound": args.bound, "density": {"num": num, "den": den},
                  "decimal": f"{float(d):.6f}", "version": FORMAT_VERSION})
    else:
        out.line(f"{num}/{den} = {float(d):.6f}")
    return 0


_COMMANDS = {
    "phi": _cmd_phi,
    "certify": _cmd_certify,
    "verify": _cmd_verify,
    "quad": _cmd_quad,
    "prop3": _cmd_prop3,
    "scan": _cmd_scan,
    "density": _cmd_density,
}


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        # argparse prints --version and --help itself; keep that on our stream
        with contextlib.redirect_stdout(stdout):
            args = build_parser().parse_args(list(argv))
        out = _Output(stdout, stderr, args.verbose)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"cyclocert: error: {exc}", file=stderr)
        return 2
    except (ContractError, RangeError, OSError) as exc:
        print(f"cyclocert: error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:
        # --version and --help exit through argparse
        return int(exc.code or 0)


def main():
    sys.exit(run(sys.argv[1:]))
