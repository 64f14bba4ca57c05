"""Command-line front end.

Four subcommands over a shared problem-file format:

    torelli   evaluate the deformation-triviality equivalences for (F, R)
    jacobian  graded quotient dimensions and ideal membership of R
    adjoint   run the pipeline for one explicit W-system
    macaulay  socle dimension and duality pairings

Exit codes: 0 success, 1 input error, 2 hypothesis violation, 3 internal
inconsistency (an equivalence trial disagreed with ideal membership, which
must never happen on valid inputs).

JSON reports (--json) are emitted with sorted keys and no volatile content,
so identical inputs produce byte-identical output; wall-clock timings are
opt-in via --timings.  Certificates can be large and are included only
under --certificates.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import adjoint as adjoint_mod
from . import jacobian as jacobian_mod
from . import torelli as torelli_mod
from .errors import HypothesisViolationError, NotSmoothError, ParseError
from .fields import field_from_name
from .parsing import load_problem

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2
EXIT_INCONSISTENT = 3


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjtorelli",
        description="Exact adjoint-form and deformation-triviality computations "
                    "on smooth projective hypersurfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="problem file (lines: n = ..., F = ..., R = ...)")
        p.add_argument("--field", default="q",
                       help="coefficient field: q (rationals) or p:PRIME")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--certificates", action="store_true",
                       help="include exact certificates in the report")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock timings in the report")

    p = sub.add_parser("torelli", help="deformation-triviality equivalence suite")
    common(p)
    p.add_argument("--trials", type=int, default=3, help="generic W trials (default 3)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")

    p = sub.add_parser("jacobian", help="quotient dimensions and membership")
    common(p)
    p.add_argument("--degree", type=int, default=None,
                   help="graded degree to inspect (default: the degree of F)")

    p = sub.add_parser("adjoint", help="pipeline for one explicit W-system")
    common(p)
    p.add_argument("--w", required=True,
                   help="comma-separated one-form basis pairs, e.g. 01,02,03 or 0-1,0-2,0-3")
    p.add_argument("--seed", type=int, default=0, help=argparse.SUPPRESS)

    p = sub.add_parser("macaulay", help="socle and duality pairing checks")
    common(p)
    p.add_argument("--a", default=None,
                   help="comma-separated pairing degrees (default: all 0..socle)")
    return parser


def _parse_pairs(text: str, nvars: int):
    pairs = []
    for token in text.split(","):
        token = token.strip()
        if "-" in token:
            left, _, right = token.partition("-")
            i, j = int(left), int(right)
        elif len(token) == 2 and token.isdigit():
            i, j = int(token[0]), int(token[1])
        else:
            raise ParseError(f"cannot read one-form pair {token!r}")
        if not 0 <= i < nvars or not 0 <= j < nvars or i == j:
            raise ParseError(f"pair ({i},{j}) out of range for {nvars} coordinates")
        pairs.append((i, j))
    return pairs


def _emit(report: dict, as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(report, sort_keys=True, indent=2))
        stream.write("\n")
        return
    _emit_human(report, stream)


def _emit_human(report: dict, stream, prefix: str = "") -> None:
    width = max((len(k) for k in report), default=0)
    for key, value in report.items():
        if isinstance(value, dict):
            stream.write(f"{prefix}{key}:\n")
            _emit_human(value, stream, prefix + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            stream.write(f"{prefix}{key}:\n")
            for item in value:
                _emit_human(item, stream, prefix + "  ")
                stream.write(f"{prefix}  --\n")
        else:
            stream.write(f"{prefix}{key.ljust(width)} : {value}\n")


def _input_echo(args, problem, F, R) -> dict:
    echo = {
        "file": os.path.basename(args.file),
        "n": problem.n,
        "field": args.field,
        "F": str(F),
        "R": str(R) if R is not None else None,
    }
    return echo


def _load(args):
    field = field_from_name(args.field)
    problem = load_problem(args.file)
    F, R = problem.build(field)
    return field, problem, F, R


def _cert_parts(cert) -> Optional[list]:
    if cert is None:
        return None
    return [str(p) for p in cert.parts]


def cmd_torelli(args, stream) -> int:
    started = time.perf_counter()
    field, problem, F, R = _load(args)
    if R is None:
        raise ParseError("torelli needs an R = <expr> line in the problem file")
    h = jacobian_mod.Hypersurface(F)
    parsed = time.perf_counter()
    report = torelli_mod.check(h, R, trials=args.trials, seed=args.seed)
    finished = time.perf_counter()
    trials = []
    for o in report.trials:
        entry = {
            "trial": o.index,
            "provenance": o.provenance,
            "attempts": o.attempts,
            "degenerate": o.degenerate,
            "fixed_divisor": str(o.divisor_witness) if o.divisor_witness else None,
            "in_image": o.in_image,
            "in_jacobian_ideal": o.in_jacobian,
        }
        trials.append(entry)
    out = {
        "command": "torelli",
        "input": {**_input_echo(args, problem, F, R),
                  "trials": args.trials, "seed": args.seed},
        "verdicts": {
            "r_in_jacobian_ideal": report.r_in_jacobian,
            "verdict": report.verdict,
            "consistency": report.consistency,
            "reduced_representative": str(report.reduced_representative),
            "trials": trials,
        },
    }
    if args.certificates:
        out["certificates"] = {
            "r_membership": _cert_parts(report.r_certificate),
            "trials": [
                {
                    "trial": o.index,
                    "image_multipliers":
                        [str(p) for p in o.image_certificate.multipliers]
                        if o.image_certificate else None,
                    "image_principal":
                        str(o.image_certificate.principal)
                        if o.image_certificate else None,
                    "adjoint_membership": _cert_parts(o.jacobian_certificate),
                }
                for o in report.trials
            ],
        }
    if args.timings:
        out["timings"] = {
            "parse_s": round(parsed - started, 6),
            "check_s": round(finished - parsed, 6),
        }
    _emit(out, args.json, stream)
    return EXIT_OK if report.consistency else EXIT_INCONSISTENT


def cmd_jacobian(args, stream) -> int:
    started = time.perf_counter()
    field, problem, F, R = _load(args)
    h = jacobian_mod.Hypersurface(F)
    degree = args.degree if args.degree is not None else h.degree
    if degree < 0:
        raise ParseError("--degree must be non-negative")
    dim = jacobian_mod.jacobian_ring_dim(h, degree)
    expected = jacobian_mod.hilbert_expected(h.n, h.degree, degree)
    membership = None
    cert = None
    if R is not None:
        cert = jacobian_mod.graded_membership(R, h)
        membership = cert is not None
    finished = time.perf_counter()
    out = {
        "command": "jacobian",
        "input": {**_input_echo(args, problem, F, R), "degree": degree},
        "verdicts": {
            "smooth": True,
            "smooth_witness_dimension": h.smooth_witness,
            "socle_degree": h.socle_degree,
            "degree": degree,
            "quotient_dimension": dim,
            "expected_dimension": expected,
            "r_in_jacobian_ideal": membership,
        },
    }
    if args.certificates:
        out["certificates"] = {"r_membership": _cert_parts(cert)}
    if args.timings:
        out["timings"] = {"total_s": round(finished - started, 6)}
    _emit(out, args.json, stream)
    return EXIT_OK


def cmd_adjoint(args, stream) -> int:
    started = time.perf_counter()
    field, problem, F, R = _load(args)
    h = jacobian_mod.Hypersurface(F)
    pairs = _parse_pairs(args.w, h.nvars)
    if len(pairs) != h.n:
        raise ParseError(f"--w needs exactly {h.n} pairs, got {len(pairs)}")
    forms = [
        adjoint_mod.directed_one_form(h.nvars, i, j, field) for i, j in pairs
    ]
    system = adjoint_mod.wsystem_from_forms(forms, provenance="explicit")
    bundle = adjoint_mod.build_bundle(h, system)
    witness = None
    subsystem_membership = []
    sub_certs = []
    if not bundle.degenerate:
        witness = adjoint_mod.fixed_divisor_witness(bundle)
    for omega in bundle.subsystem:
        cert = jacobian_mod.graded_membership(omega, h)
        subsystem_membership.append(cert is not None)
        sub_certs.append(cert)
    in_image = None
    in_jacobian = None
    image_cert = None
    adjoint_cert = None
    adjoint_poly = None
    if R is not None and not bundle.degenerate:
        image_cert = adjoint_mod.image_membership(bundle, R)
        in_image = image_cert is not None
        adjoint_poly = adjoint_mod.canonical_adjoint(bundle, R)
        adjoint_cert = jacobian_mod.graded_membership(adjoint_poly, h)
        in_jacobian = adjoint_cert is not None
    finished = time.perf_counter()
    out = {
        "command": "adjoint",
        "input": {**_input_echo(args, problem, F, R), "w": args.w},
        "verdicts": {
            "degenerate": bundle.degenerate,
            "base_polynomial": str(bundle.top_poly),
            "subsystem": [str(p) for p in bundle.subsystem],
            "subsystem_in_jacobian_ideal": subsystem_membership,
            "fixed_divisor": str(witness) if witness else None,
            "canonical_adjoint": str(adjoint_poly) if adjoint_poly is not None else None,
            "in_image": in_image,
            "in_jacobian_ideal": in_jacobian,
        },
    }
    if args.certificates:
        out["certificates"] = {
            "subsystem_membership": [_cert_parts(c) for c in sub_certs],
            "image_multipliers":
                [str(p) for p in image_cert.multipliers] if image_cert else None,
            "image_principal": str(image_cert.principal) if image_cert else None,
            "adjoint_membership": _cert_parts(adjoint_cert),
        }
    if args.timings:
        out["timings"] = {"total_s": round(finished - started, 6)}
    _emit(out, args.json, stream)
    return EXIT_OK


def cmd_macaulay(args, stream) -> int:
    started = time.perf_counter()
    field, problem, F, R = _load(args)
    h = jacobian_mod.Hypersurface(F)
    sigma = h.socle_degree
    if args.a is None:
        degrees = list(range(sigma + 1))
    else:
        degrees = [int(tok) for tok in args.a.split(",")]
    pairings = []
    for a in degrees:
        matrix = jacobian_mod.pairing_matrix(h, a)
        perfect = jacobian_mod.macaulay_pairing_check(h, a)
        pairings.append({
            "a": a,
            "left_dimension": matrix.rows,
            "right_dimension": matrix.cols,
            "perfect": perfect,
        })
    finished = time.perf_counter()
    out = {
        "command": "macaulay",
        "input": _input_echo(args, problem, F, R),
        "verdicts": {
            "socle_degree": sigma,
            "socle_dimension": jacobian_mod.jacobian_ring_dim(h, sigma),
            "pairings": pairings,
        },
    }
    if args.timings:
        out["timings"] = {"total_s": round(finished - started, 6)}
    _emit(out, args.json, stream)
    return EXIT_OK


_HANDLERS = {
    "torelli": cmd_torelli,
    "jacobian": cmd_jacobian,
    "adjoint": cmd_adjoint,
    "macaulay": cmd_macaulay,
}


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _HANDLERS[args.command](args, stream)
    except (HypothesisViolationError, NotSmoothError) as exc:
        sys.stderr.write(f"hypothesis violation: {exc}\n")
        return EXIT_HYPOTHESIS
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
