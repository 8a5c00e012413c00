"""Command line interface.

    wavelab run <config> [--workers N] [--seed S] [--out DIR]
    wavelab preset <name>
    wavelab filters export <kind> [--m M] [--overlap K] [--oversample L]
                                  [--alpha A] [--roll-off R] [--out FILE]

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

import argparse
import sys
from dataclasses import replace

from .config import load_config, preset_names, preset_text
from .errors import ConfigError, WavelabError
from .filters import FILTER_KINDS, make_filter, write_taps_csv
from .runner import run_experiment

__all__ = ["main"]


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wavelab",
        description="Multicarrier waveform experiments: PAPR, PSD, and BER curves as CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment config and write CSV curves")
    run_p.add_argument("config", help="path to a TOML experiment config")
    run_p.add_argument("--workers", type=int, default=1, metavar="N",
                       help="parallel trial processes (default 1)")
    run_p.add_argument("--seed", type=int, default=None, metavar="S",
                       help="override the config seed")
    run_p.add_argument("--out", default=None, metavar="DIR",
                       help="override the config output directory")

    pre_p = sub.add_parser("preset", help="print a figure-reproduction config")
    pre_p.add_argument("name", help=f"one of: {', '.join(preset_names())}")

    filt_p = sub.add_parser("filters", help="prototype filter utilities")
    filt_sub = filt_p.add_subparsers(dest="filters_command", required=True)
    exp_p = filt_sub.add_parser("export", help="write prototype taps as CSV")
    exp_p.add_argument("kind", help=f"one of: {', '.join(FILTER_KINDS)}")
    exp_p.add_argument("--m", type=int, default=64, help="subcarrier count (default 64)")
    exp_p.add_argument("--overlap", type=int, default=4, help="overlapping factor K (default 4)")
    exp_p.add_argument("--oversample", type=int, default=1, help="samples per lattice step (default 1)")
    exp_p.add_argument("--alpha", type=float, default=None, help="egf spreading parameter")
    exp_p.add_argument("--roll-off", type=float, default=None, help="rrc roll-off")
    exp_p.add_argument("--out", default=None, metavar="FILE",
                       help="output file (default: stdout)")
    return parser


def _cmd_run(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed must be >= 0")
        cfg = replace(cfg, seed=args.seed)
    if args.workers < 1:
        raise ConfigError("--workers must be >= 1")
    paths = run_experiment(cfg, workers=args.workers, out_dir=args.out)
    for p in paths:
        print(p)
    return 0


def _cmd_preset(args):
    sys.stdout.write(preset_text(args.name))
    return 0


def _cmd_filters_export(args):
    params = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.roll_off is not None:
        params["roll_off"] = args.roll_off
    filt = make_filter(args.kind, args.m, K=args.overlap, L_os=args.oversample, **params)
    if args.out is None:
        write_taps_csv(filt, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_taps_csv(filt, fh)
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "preset":
            return _cmd_preset(args)
        return _cmd_filters_export(args)
    except ConfigError as err:
        print(f"wavelab: config error: {err}", file=sys.stderr)
        return 2
    except WavelabError as err:
        print(f"wavelab: {err}", file=sys.stderr)
        return 3
    except KeyboardInterrupt:
        return 3
    except Exception as err:  # runtime failures map to exit 3, not a traceback
        print(f"wavelab: {type(err).__name__}: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
