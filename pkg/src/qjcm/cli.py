"""Command-line front end: ``qjcm <subcommand> --config <path> [--out <path>]``.

Exit status is 0 on success, 1 when a validation or reference comparison
fails (or a computation cannot be carried out) and 2 for usage and
configuration errors.  Errors are reported as one line on stderr.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .dynamics import observe, time_series
from .errors import ParseError, QJCMError, ValidationError
from .oracle import build_hamiltonian, default_basis_size, evolve_many, initial_state
from .revival import analyze
from .scenario import Scenario, load_scenario
from .spectrum import dressed_energies
from .table1 import evaluate_table

__all__ = ["main", "run", "SUBCOMMANDS"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_THRESHOLD = 1e-6


def _fmt(x) -> str:
    """Shortest decimal string that round-trips the double."""
    return repr(float(x))


def _cell(v) -> str:
    if isinstance(v, (str, int)):
        return str(v)
    return _fmt(v)


def _csv(header, rows) -> str:
    out = [",".join(header)]
    out.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def _report(pairs) -> str:
    return "".join(f"{k}={_fmt(v)}\n" for k, v in pairs)


def cmd_dynamics(s: Scenario, args) -> tuple[str, int]:
    dist = s.distribution()
    params = s.params(dist)
    gt = np.linspace(0.0, s.gt_max, s.n_points)
    samples = time_series(params, s.atom(), dist, gt / s.g)
    rows = [(x, o.sigma3, o.sigma1, o.sigma2, o.f1, o.f2) for x, o in zip(gt, samples)]
    return _csv(("gt", "sigma3", "sigma1", "sigma2", "F1", "F2"), rows), EXIT_OK


def cmd_spectrum(s: Scenario, args) -> tuple[str, int]:
    spec = s.deformation()
    deltas = s.detuning_grid()
    rows = []
    for n in s.levels:
        e_plus, e_minus = dressed_energies(spec, n, deltas, s.g, s.m, s.omega)
        for d, ep, em in zip(deltas, e_plus, e_minus):
            rows.append((n, d / s.omega, ep / s.omega, em / s.omega))
    header = ("n", "delta_over_omega", "e_plus_over_omega", "e_minus_over_omega")
    return _csv(header, rows), EXIT_OK


def cmd_distribution(s: Scenario, args) -> tuple[str, int]:
    dist = s.distribution()
    rows = [(n, q.real, q.imag, p)
            for n, (q, p) in enumerate(zip(dist.coefficients, dist.probabilities))]
    return _csv(("n", "re_q", "im_q", "prob"), rows), EXIT_OK


def cmd_analyze(s: Scenario, args) -> tuple[str, int]:
    dist = s.distribution()
    report = analyze(s.params(dist), dist, s.tail_tol)
    return _report(report.as_dict().items()), EXIT_OK


def cmd_validate(s: Scenario, args) -> tuple[str, int]:
    dist = s.distribution()
    params = s.params(dist)
    atom = s.atom()
    times = s.time_grid()
    closed = time_series(params, atom, dist, times)
    h = build_hamiltonian(params, default_basis_size(dist, params.m))
    states = evolve_many(h, initial_state(params, atom, dist, h.n_max), times, s.tail_tol)
    ref = [observe(st) for st in states]
    dev = {
        key: max(abs(getattr(a, key) - getattr(b, key)) for a, b in zip(closed, ref))
        for key in ("sigma3", "sigma1", "sigma2")
    }
    ok = all(v < args.threshold for v in dev.values())
    pairs = [(f"max_dev_{k}", v) for k, v in dev.items()] + [("threshold", args.threshold)]
    return _report(pairs), EXIT_OK if ok else EXIT_FAIL


def cmd_table1(s: Scenario, args) -> tuple[str, int]:
    results = evaluate_table(z_sq=s.z_sq, g=s.g, omega=s.omega,
                             detuning=s.params().detuning, tail_tol=s.tail_tol)
    cols = [r.columns() for r in results]
    header = tuple(cols[0])
    rows = [tuple(c.values()) for c in cols]
    status = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    return _csv(header, rows), status


SUBCOMMANDS = {
    "dynamics": cmd_dynamics,
    "spectrum": cmd_spectrum,
    "analyze": cmd_analyze,
    "validate": cmd_validate,
    "table1": cmd_table1,
    "distribution": cmd_distribution,
}


def run(subcommand: str, scenario: Scenario, output_path=None, threshold=DEFAULT_THRESHOLD) -> int:
    """Run one subcommand and write its output; returns the exit status."""
    args = argparse.Namespace(threshold=threshold)
    text, status = SUBCOMMANDS[subcommand](scenario, args)
    if output_path is None:
        sys.stdout.write(text)
    else:
        with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qjcm", description="Deformed multi-photon Jaynes-Cummings simulations.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario file")
        p.add_argument("--out", help="output file (default: stdout)")
        if name == "validate":
            p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                           help="maximum allowed absolute deviation")
    return parser


def _die(kind: str, message: str, status: int) -> int:
    sys.stderr.write(f"qjcm: {kind}: {' '.join(str(message).split())}\n")
    return status


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return _die("UsageError", exc, EXIT_USAGE)
    try:
        scenario = load_scenario(args.config)
    except OSError as exc:
        return _die("UsageError", f"{args.config}: {exc.strerror}", EXIT_USAGE)
    except (ParseError, ValidationError) as exc:
        return _die(type(exc).__name__, f"{args.config}: {exc}", EXIT_USAGE)
    try:
        return run(args.subcommand, scenario, args.out, getattr(args, "threshold", DEFAULT_THRESHOLD))
    except QJCMError as exc:
        return _die(type(exc).__name__, exc, EXIT_FAIL)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stay quiet
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_FAIL
    except OSError as exc:
        return _die("OSError", exc, EXIT_FAIL)


if __name__ == "__main__":
    sys.exit(main())
