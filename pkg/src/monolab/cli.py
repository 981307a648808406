"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 dispatch error, 4 verification
failure.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .chain import chain_theorem3
from .copies import DEFAULT_M_CAP, copy_reports
from .errors import DispatchError, MonolabError
from .measures import MeasureId
from .monogamy import analyze_state
from .serialize import dumps
from .states import state_from_spec
from .sweep import haar_sweep, schmidt_sweep, to_csv
from .verify import format_table, run_verify

EXIT_OK, EXIT_INPUT, EXIT_DISPATCH, EXIT_VERIFY = 0, 2, 3, 4


def _measure(args):
    return MeasureId(args.measure, args.alpha)


def _emit(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as exc:
        raise MonolabError(f"cannot write {output}: {exc}") from None


def cmd_analyze(args):
    state = state_from_spec(args.state)
    report = analyze_state(state, _measure(args), pair_override=args.pair_override)
    payload = report.to_dict()
    payload["provenance"]["state_spec"] = args.state
    _emit(dumps(payload), args.output)
    return EXIT_OK


def cmd_sweep(args):
    measure = _measure(args)
    if args.kind == "schmidt":
        header, rows = schmidt_sweep(measure, args.resolution, args.lambda4_zero, args.phi,
                                     args.jobs)
    else:
        header, rows = haar_sweep(measure, args.samples, args.seed, args.jobs)
    _emit(to_csv(header, rows), args.output)
    return EXIT_OK


def cmd_copies(args):
    state = state_from_spec(args.state)
    _emit(dumps(copy_reports(state, _measure(args), args.m_cap)), args.output)
    return EXIT_OK


def cmd_chain(args):
    state = state_from_spec(args.state)
    _emit(dumps(chain_theorem3(state, _measure(args))), args.output)
    return EXIT_OK


def _tol_overrides(items):
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise MonolabError(f"--tol expects ID=VALUE, got {item!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise MonolabError(f"bad tolerance {value!r}") from None
    return out


def cmd_verify(args):
    try:
        rows = run_verify(args.filter, _tol_overrides(args.tol))
    except KeyError as exc:
        raise MonolabError(f"unknown criterion: {exc.args[0]}") from None
    if args.format == "json":
        text = dumps({"rows": rows, "all_pass": all(r.status != "FAIL" for r in rows)})
    else:
        text = format_table(rows)
    _emit(text, args.output)
    return EXIT_VERIFY if any(r.status == "FAIL" for r in rows) else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="monolab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def measure_opts(p, default="concurrence"):
        p.add_argument("--measure", default=default, type=str.upper,
                       choices=["TANGLE", "CONCURRENCE", "NEGATIVITY"])
        p.add_argument("--alpha", type=float, default=1.0, help="power applied to the measure")
        p.add_argument("-o", "--output", help="output path (default: stdout)")

    p = sub.add_parser("analyze", help="monogamy report of a tripartite pure state")
    p.add_argument("--state", required=True,
                   help="state spec: JSON, @file.json, named:LABEL, haar:DIMS:SEED, schmidt:L0,..,L4[:PHI]")
    p.add_argument("--pair-override", nargs=2, type=float, metavar=("E_AB", "E_AC"),
                   help="use externally given pair values")
    measure_opts(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="CSV sweep over Schmidt grids or Haar samples")
    p.add_argument("--kind", choices=["schmidt", "haar"], default="schmidt")
    p.add_argument("--resolution", type=int, default=8, help="grid points per angle")
    p.add_argument("--lambda4-zero", action="store_true", help="restrict to lambda4 = 0")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    measure_opts(p, "tangle")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("copies", help="minimal copy counts under three models")
    p.add_argument("--state", required=True)
    p.add_argument("--m-cap", type=int, default=DEFAULT_M_CAP)
    measure_opts(p)
    p.set_defaults(func=cmd_copies)

    p = sub.add_parser("chain", help="multipartite chain bound")
    p.add_argument("--state", required=True)
    measure_opts(p, "negativity")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify", help="run the reproduction checks")
    p.add_argument("--filter", help="comma-separated criterion ids or tags")
    p.add_argument("--tol", action="append", metavar="ID=VALUE", help="override a tolerance")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DispatchError as exc:
        sys.stderr.write(dumps({"error": "dispatch", "message": str(exc)}))
        return EXIT_DISPATCH
    except MonolabError as exc:
        sys.stderr.write(dumps({"error": "input", "message": str(exc)}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
