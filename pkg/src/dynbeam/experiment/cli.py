"""Command line entry point: ``run``, ``sweep``, ``overhead`` and ``pattern``."""

import argparse
import logging
import sys

from ..arraycore import format_pattern, pattern_samples
from ..codebook import CodebookState, format_descriptor, parse_descriptor
from ..errors import ConfigError, DegenerateCodebookError
from .config import SIM_METHODS, parse_config
from .montecarlo import run_monte_carlo, sweep, trace_dump, write_csv
from .overhead import format_overhead_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_RUNTIME = 5

# flag dest -> config key
_OVERRIDES = {
    "Nt": "Nt", "Nr": "Nr", "L": "L", "Ld": "L_d", "S0": "S0", "P": "P",
    "snr": "snr_db_list", "trials": "trials", "seed": "seed",
    "method": "method", "angle_mode": "angle_mode",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_sim_args(p):
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--out", default="-", help="CSV output path (default stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--Nt")
    p.add_argument("--Nr")
    p.add_argument("--L")
    p.add_argument("--Ld")
    p.add_argument("--S0")
    p.add_argument("--P")
    p.add_argument("--snr", help="SNR list in dB: 'start:step:stop' or comma separated")
    p.add_argument("--trials")
    p.add_argument("--seed")
    p.add_argument("--angle-mode", dest="angle_mode")


def build_parser():
    parser = _Parser(prog="dynbeam", description="Dynamic hierarchical codebook beam training simulator")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="simulate one method and write a CSV")
    _add_sim_args(run)
    run.add_argument("--method")
    run.add_argument("--trace", help="write the trial-0 measurement trace per SNR point here")

    sw = sub.add_parser("sweep", help="simulate several methods on one config")
    _add_sim_args(sw)
    sw.add_argument("--methods", default="dynamic,baseline_subtraction")

    ov = sub.add_parser("overhead", help="print the closed-form overhead table")
    ov.add_argument("--Nt", type=int, default=32)
    ov.add_argument("--Ld", type=int, default=3)
    ov.add_argument("--S0", type=int, default=2)
    ov.add_argument("--K", type=int, default=2)

    pat = sub.add_parser("pattern", help="dump the beam pattern of one codeword")
    pat.add_argument("--state", help="codebook descriptor 'N S0 removed=<list>'")
    pat.add_argument("--N", type=int)
    pat.add_argument("--S0", type=int, default=0)
    pat.add_argument("--remove", action="append", default=[], help="bottom indices to null (comma list, repeatable)")
    pat.add_argument("--layer", type=int, required=True)
    pat.add_argument("--pos", type=int, required=True)
    pat.add_argument("--grid", type=int, default=1024)
    pat.add_argument("--out", default="-")
    return parser


def _load_config(args, method=None):
    text = ""
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    overrides = {}
    for dest, key in _OVERRIDES.items():
        value = getattr(args, dest, None)
        if value is not None:
            overrides[key] = value
    if method is not None:
        overrides["method"] = method
    return parse_config(text, overrides)


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv_text(points):
    import io

    buf = io.StringIO()
    write_csv(points, buf)
    return buf.getvalue()


def _cmd_run(args):
    cfg = _load_config(args)
    points = run_monte_carlo(cfg, workers=args.workers)
    _write(args.out, _csv_text(points))
    if args.trace:
        _write(args.trace, trace_dump(cfg))
    return EXIT_OK


def _cmd_sweep(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in SIM_METHODS]
    if bad or not methods:
        raise _UsageError(f"unknown methods: {', '.join(bad) or '(none)'}")
    cfg = _load_config(args, method=methods[0])
    _write(args.out, _csv_text(sweep(cfg, methods, workers=args.workers)))
    return EXIT_OK


def _cmd_overhead(args):
    sys.stdout.write(format_overhead_table(args.Nt, args.Ld, args.S0, args.K))
    return EXIT_OK


def _cmd_pattern(args):
    try:
        if args.state:
            state = parse_descriptor(args.state)
        elif args.N is not None:
            state = CodebookState(args.N, args.S0)
            for chunk in args.remove:
                for tok in filter(None, chunk.split(",")):
                    state.remove_index(int(tok))
        else:
            raise _UsageError("pattern needs --state or --N")
        cw = state.codeword_at(args.layer, args.pos)
        samples = pattern_samples(cw.weights, args.grid)
    except (ValueError, IndexError) as exc:
        raise _UsageError(str(exc)) from None
    header = [
        f"codebook {format_descriptor(state)}",
        f"codeword layer={args.layer} pos={args.pos} set={','.join(map(str, sorted(cw.members)))}",
    ]
    _write(args.out, format_pattern(samples, header))
    return EXIT_OK


_COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "overhead": _cmd_overhead, "pattern": _cmd_pattern}


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"dynbeam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"dynbeam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"dynbeam: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"dynbeam: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DegenerateCodebookError as exc:
        print(f"dynbeam: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main():
    sys.exit(cli_main())
