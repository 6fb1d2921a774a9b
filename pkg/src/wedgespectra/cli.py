"""Command-line front end: curves, well-posedness checks, finite sections and self-validation

Exit codes: 0 success (well-posed), 1 failed validation, 2 invalid input,
3 ill-posed transmission problem.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
from typing import List, Optional

import numpy

from . import config
from .errors import DomainError
from .numerics import eigenvalues
from .operators import containment, nystrom_T, toeplitz_section
from .symbols import WedgeParams, sample_curve
from .transmission import TransmissionQuery, check, epsilon_boundary
from . import validation

__all__ = [ "SCHEMA_VERSION", "build_parser", "main" ]

logger = logging.getLogger(__name__)

SCHEMA_VERSION = '1.0'

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DOMAIN = 2
EXIT_ILLPOSED = 3


def _write(text: str, out: Optional[str]) -> None:
    """Write text to out atomically (temp file + rename), or to stdout"""
    if out is None or out == '-':
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    handle, temp = tempfile.mkstemp(dir=directory, prefix='.wedgespectra-', suffix='.tmp')
    try:
        with os.fdopen(handle, 'w', newline='') as stream:
            stream.write(text)
        os.replace(temp, out)
    except BaseException:
        if os.path.exists(temp):
            os.unlink(temp)
        raise


def _number(value: float):
    """JSON-safe float: None for inf/nan"""
    value = float(value)
    return value if math.isfinite(value) else None


def _dump(record: dict) -> str:
    return json.dumps(record, indent=2, allow_nan=False) + '\n'


def _alpha(args) -> float:
    if args.alpha_deg is not None:
        return math.radians(args.alpha_deg)
    return args.alpha


def _echo(args) -> dict:
    return {key: value for key, value in sorted(vars(args).items()) if key not in ('handler',)}


def cmd_curve(args) -> int:
    p = WedgeParams(_alpha(args), args.a)
    if args.tol is not None and not args.tol > 0:
        raise DomainError(f'--tol must be positive, got {args.tol}')
    curve = sample_curve(p, args.tol)
    xi = numpy.concatenate(([-math.inf], curve.xi, [math.inf]))
    if args.plane == 'epsilon':
        plus, minus = epsilon_boundary(p, args.tol)
    else:
        plus, minus = curve.points, -curve.points
    branches = (('plus', plus), ('minus', minus))
    if args.format == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['xi', 're', 'im', 'branch'])
        for name, points in branches:
            for x, w in zip(xi, points):
                writer.writerow([format(x, '.17g'), format(w.real, '.17g'), format(w.imag, '.17g'), name])
        text = buffer.getvalue()
    else:
        text = _dump({
            "schema_version": SCHEMA_VERSION,
            "command": _echo(args),
            "params": {"alpha": p.alpha, "a": p.a},
            "plane": args.plane,
            "branches": {name: {"xi": [_number(x) for x in xi],
                                "points": [[_number(w.real), _number(w.imag)] for w in points]}
                         for name, points in branches},
        })
    _write(text, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    query = TransmissionQuery(complex(args.eps_re, args.eps_im), _alpha(args), args.problem,
                              0.0 if args.a is None else args.a)
    verdict = check(query)
    record = {"schema_version": SCHEMA_VERSION, "command": _echo(args)}
    record.update(verdict.as_dict())
    _write(_dump(record), args.out)
    return EXIT_OK if verdict.wellposed else EXIT_ILLPOSED


def cmd_discretize(args) -> int:
    p = WedgeParams(_alpha(args), args.a)
    if not (args.tolerance > 0 and math.isfinite(args.tolerance)):
        raise DomainError(f'--tolerance must be positive, got {args.tolerance}')
    if args.operator == 'T':
        matrix = nystrom_T(p, args.n, args.L)
        grid = {"L": args.L}
    else:
        matrix = toeplitz_section(p, args.n, args.h)
        grid = {"h": args.h}
    eigs = eigenvalues(matrix)
    eigs = eigs[numpy.lexsort((eigs.imag, eigs.real))]
    stats = containment(eigs, sample_curve(p), args.tolerance)
    params = {"alpha": p.alpha, "a": p.a, "operator": args.operator, "n": args.n}
    params.update(grid)
    _write(_dump({
        "schema_version": SCHEMA_VERSION,
        "command": _echo(args),
        "params": params,
        "eigenvalues": [[float(w.real), float(w.imag)] for w in eigs],
        "containment": stats._asdict(),
    }), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = validation.run_suite(args.suite)
    failed = [r for r in results if not r.passed]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": _echo(args),
        "passed": not failed,
        "checks": [{k: (_number(v) if isinstance(v, float) else v) for k, v in r.as_dict().items()}
                   for r in results],
    }
    _write(_dump(report), args.report)
    for r in failed:
        print(f'FAILED {r.suite}/{r.name}: residual {r.residual:.3e} > {r.tolerance:g} {r.detail}', file=sys.stderr)
    return EXIT_VALIDATION if failed else EXIT_OK


def _add_angle(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--alpha', type=float, help='opening angle in radians')
    group.add_argument('--alpha-deg', type=float, help='opening angle in degrees')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='wedgespectra',
                                     description='Spectra of layer potentials on a three-dimensional wedge')
    parser.add_argument('-v', '--verbose', action='store_true', help='log at DEBUG level')
    parser.add_argument('--threads', type=int, help=f'worker cap, overrides {config.THREADS_ENV}')
    parser.add_argument('--on-curve-tol', type=float, help='distance counted as lying on a curve')
    commands = parser.add_subparsers(dest='command', required=True)

    curve = commands.add_parser('curve', help='sample the spectral curve and its reflection')
    _add_angle(curve)
    curve.add_argument('--a', type=float, default=0.0, help='weight exponent in (-1, 3)')
    curve.add_argument('--tol', type=float, help='largest chord between samples')
    curve.add_argument('--format', choices=('csv', 'json'), default='csv')
    curve.add_argument('--plane', choices=('lambda', 'epsilon'), default='lambda')
    curve.add_argument('--out', help='output file, stdout when omitted')
    curve.set_defaults(handler=cmd_curve)

    query = commands.add_parser('check', help='well-posedness of a transmission problem')
    _add_angle(query)
    query.add_argument('--eps-re', type=float, required=True)
    query.add_argument('--eps-im', type=float, default=0.0)
    query.add_argument('--problem', choices=('L', 'E'), default='L')
    query.add_argument('--a', type=float, help='weight exponent of problem L')
    query.add_argument('--out', help='output file, stdout when omitted')
    query.set_defaults(handler=cmd_check)

    section = commands.add_parser('discretize', help='eigenvalues of a finite section')
    _add_angle(section)
    section.add_argument('--a', type=float, default=0.0)
    section.add_argument('--operator', choices=('T', 'I'), default='T')
    section.add_argument('--n', type=int, required=True)
    section.add_argument('--L', type=float, default=8.0, help='log-window half-width of the T section')
    section.add_argument('--h', type=float, default=0.05, help='grid step of the I section')
    section.add_argument('--tolerance', type=float, default=0.05, help='containment tolerance')
    section.add_argument('--out', help='output file, stdout when omitted')
    section.set_defaults(handler=cmd_discretize)

    report = commands.add_parser('validate', help='run the self-checks')
    report.add_argument('--suite', choices=validation.SUITES + ('all',), default='all')
    report.add_argument('--report', help='JSON report file, stdout when omitted')
    report.set_defaults(handler=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        config.install(config.current().replace(threads=args.threads, on_curve_tol=args.on_curve_tol))
        return args.handler(args)
    except DomainError as exc:
        print(f'wedgespectra: error: {exc}', file=sys.stderr)
        return EXIT_DOMAIN
