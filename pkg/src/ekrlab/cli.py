"""ekrlab command line: params, trial, sweep, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .containers import ContainerCertificate, ContainerConfig, reconstruct
from .errors import InconsistentFingerprintError, ParameterError
from .experiment import (
    ConfigError,
    format_summary,
    load_config,
    run_sweep,
    run_trial,
    summarize,
    write_csv,
)
from .graph import ExplicitGraph
from .indep import DEFAULT_BUDGET
from .kneser import kneser_params
from .regimes import DEFAULT_C, DEFAULT_EPSILON, DEFAULT_MARGIN, thresholds
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--margin", type=float, default=DEFAULT_MARGIN, help="multiplicative margin for << and >>")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--bigC", type=float, default=DEFAULT_C, help="constant C of the principal threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ekrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", help="Kneser parameters and regime thresholds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--bigC", type=float, default=DEFAULT_C)

    p = sub.add_parser("trial", help="one Monte Carlo trial as a CSV row")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit of the exact solver")
    p.add_argument("--timing", action="store_true", help="fill runtime_ms (makes output machine dependent)")
    p.add_argument("--out", type=Path)
    _model_flags(p)

    p = sub.add_parser("sweep", help="run a JSON-configured sweep over p")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, help="CSV destination (default stdout)")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite or check a certificate")
    p.add_argument("suite", nargs="?", choices=sorted(SUITES) + ["all"])
    p.add_argument("--graph", type=Path, help="edge-list file for certificate checking")
    p.add_argument("--certificate", type=Path)
    p.add_argument("--gamma", type=Fraction, default=None)
    return parser


def cmd_params(args) -> int:
    kp = kneser_params(args.n, args.k)
    th = thresholds(args.n, args.k, args.epsilon, args.bigC)
    print(f"n={kp.n} k={kp.k} N={kp.N} D={kp.D} lambda_min={kp.lambda_min} edges={kp.edge_count} star={kp.star_size}")
    print(f"p1={th.p1:.6g} p2={th.p2:.6g} p3={th.p3:.6g} p4={th.p4:.6g}")
    return EXIT_OK


def cmd_trial(args) -> int:
    if not (0 < args.p <= 1):
        raise ParameterError("--p must lie in (0, 1]")
    if args.budget < 1:
        raise ParameterError("--budget must be positive")
    rec = run_trial(args.n, args.k, args.p, args.seed, args.budget, args.epsilon, args.bigC, args.margin, args.timing)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv([rec], fh)
    else:
        write_csv([rec], sys.stdout)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.workers < 1:
        raise ParameterError("--workers must be at least 1")
    cfg = load_config(args.config)
    records = run_sweep(cfg, args.workers, args.timing)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
        print(format_summary(summarize(records)))
    else:
        write_csv(records, sys.stdout)
        print(format_summary(summarize(records)), file=sys.stderr)
    return EXIT_OK


def _check_certificate(args) -> int:
    if args.gamma is None:
        raise ParameterError("--gamma is required to replay a certificate")
    g = ExplicitGraph.from_edge_list(args.graph.read_text())
    cert = ContainerCertificate.from_text(args.certificate.read_text())
    cfg = ContainerConfig(args.gamma, len(cert.fingerprint_L))
    try:
        replay = reconstruct(g, cert.fingerprint_L, cfg, full=True)
    except InconsistentFingerprintError as exc:
        print(f"FAIL certificate: {exc}")
        return EXIT_FAIL
    ok = replay.container_P == cert.container_P and replay.branch == cert.branch
    print(f"{'PASS' if ok else 'FAIL'} certificate replay: |P|={len(replay.container_P)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.graph or args.certificate:
        if not (args.graph and args.certificate):
            raise ParameterError("--graph and --certificate go together")
        return _check_certificate(args)
    if args.suite is None:
        raise ParameterError("name a suite or pass --graph/--certificate")
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        for check in run_suite(name):
            print(check.line())
            failed += not check.ok
    print(f"{failed} failure(s)")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"params": cmd_params, "trial": cmd_trial, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParameterError, ConfigError) as exc:
        print(f"ekrlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ekrlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
