"""Command-line interface.

Subcommands mirror the run modes; a config file and a named preset can
be combined, with explicit config keys taking precedence over preset
values and command-line flags over both.

Exit codes: 0 success, 2 configuration error, 3 simulation error,
4 I/O error.
"""

import argparse
import sys
from pathlib import Path

from .config import PRESET_NAMES, ExperimentConfig, build_config, read_raw_config
from .errors import (
    ConfigurationError,
    GridMismatchError,
    MeasurementError,
    SimulationError,
)
from .runner import run, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIMULATION = 3
EXIT_IO = 4


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None,
                        help="path to a JSON config file")
    parser.add_argument("--preset", choices=PRESET_NAMES, default=None,
                        help="named experiment preset")
    parser.add_argument("--out", type=Path, default=None,
                        help="output directory (default: ./results)")
    parser.add_argument("--workers", type=int, default=None,
                        help="max concurrent sweep points")
    parser.add_argument("--compensate-loss", type=_parse_bool, default=None,
                        metavar="BOOL",
                        help="rescale pulse j by loss^-(j-0.5) in peak outputs")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grover-optics",
        description="Fourier-optics simulation of an optical Grover search",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "run": "single experiment in the mode set by the config (default: search)",
        "sweep": "Cartesian sweep over the config's sweep axes",
        "pulse-train": "slit-integrated pulse energies",
        "reference": "discrete amplitude-amplification model",
    }
    for name, help_text in descriptions.items():
        _add_common_arguments(subparsers.add_parser(name, help=help_text))
    return parser


def _assemble_config(args: argparse.Namespace) -> ExperimentConfig:
    raw = read_raw_config(args.config) if args.config is not None else {}
    if args.preset is not None:
        raw["preset"] = args.preset
    cfg = build_config(raw)

    overrides: dict = {}
    if args.command == "pulse-train":
        overrides["mode"] = "pulse-train"
    elif args.command == "reference":
        overrides["mode"] = "reference"
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.compensate_loss is not None:
        overrides["compensate_loss"] = args.compensate_loss
    if overrides:
        cfg = cfg.model_copy(update=overrides)
    return cfg


def _resolve_out_dir(args: argparse.Namespace, cfg: ExperimentConfig) -> Path:
    if args.out is not None:
        return args.out
    if cfg.output_dir is not None:
        return Path(cfg.output_dir)
    return Path("results")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_info:
        return int(exit_info.code or 0)

    try:
        cfg = _assemble_config(args)
        out_dir = _resolve_out_dir(args, cfg)
        if args.command == "sweep":
            summary = sweep(cfg, out_dir)
        else:
            summary = run(cfg, out_dir)
    except ConfigurationError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (SimulationError, MeasurementError, GridMismatchError) as err:
        print(f"simulation error: {err}", file=sys.stderr)
        return EXIT_SIMULATION
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO

    for line in _headline(summary):
        print(line)
    print(f"wrote {Path(out_dir) / 'summary.json'}"
          if "points" not in summary
          else f"wrote {Path(out_dir) / 'sweep.csv'}")
    return EXIT_OK


def _headline(summary: dict) -> list[str]:
    lines = []
    mode = summary.get("mode")
    if mode in ("search", "analyze") and summary.get("first_maximum") is not None:
        lines.append(
            f"first maximum at iteration {summary['first_maximum']:g} "
            f"-> N/m estimate {summary['estimate_nm']:g} "
            f"(geometric {summary['expected_nm']:g})"
        )
    elif mode == "reference":
        lines.append(
            f"max success probability {summary['max_success_probability']:g} "
            f"at iteration {summary['argmax_iteration']} "
            f"(optimum {summary['optimal_iterations']:g})"
        )
    elif mode == "pulse-train":
        ratios = summary.get("consecutive_energy_ratios", [])
        if ratios:
            lines.append(f"first consecutive energy ratio {ratios[0]:g}")
    elif "n_points" in summary:
        lines.append(f"swept {summary['n_points']} points")
    return lines


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
