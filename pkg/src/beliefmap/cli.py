"""Command-line front end.

Subcommands mirror the derived maps: ``extrapolate`` emits the combined
belief field itself, ``entropy``/``info``/``conflict`` emit scalar maps,
``plausible`` emits the best-value map, and ``suggest`` ranks candidate
measurement cells.  Every run reads one observation document plus grid
dimensions and writes PGM rasters and/or CSV tables.

Exit status: 0 on success, 1 on any input or configuration error, 2 when a
normalized whole-field run meets total conflict at every single cell.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .combination import CombinationConfig, InteractionModel
from .errors import BeliefMapError, UnsupportedDomainSizeError
from .fields import (
    BeliefField,
    binary_information_map,
    conflict_map,
    entropy_map,
    extrapolate_field,
    information_map,
    plausible_map,
    suggest_next_measurement,
)
from .obsio import (
    belief_shades,
    masses_csv_text,
    parse_observations,
    plausible_csv_text,
    plausible_shades,
    scalar_csv_text,
    suggestions_csv_text,
    pgm_bytes,
    value_shades,
    write_bytes,
    write_text,
)
from .persistence import DecayModel
from .spaces import GridSpace

STYLES = ("belief", "entropy", "info", "conflict")


def _parse_lambda(text: str) -> float:
    value = float(text)
    if math.isnan(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"persistence scale must be >= 0 or inf, got {text!r}")
    return value


def _add_common(p: argparse.ArgumentParser, default_mode: str = "normalized") -> None:
    p.add_argument("--obs", required=True, metavar="PATH", help="observation document")
    p.add_argument("--width", required=True, type=int, help="grid width in cells")
    p.add_argument("--height", required=True, type=int, help="grid height in cells")
    p.add_argument(
        "--lambda",
        dest="lam",
        type=_parse_lambda,
        default=3.0,
        metavar="F",
        help="uniform persistence scale ('inf' and 0 accepted; default 3)",
    )
    p.add_argument(
        "--lambda-value",
        action="append",
        default=[],
        metavar="NAME=F",
        help="per-value persistence scale override (repeatable)",
    )
    p.add_argument(
        "--lambda-mu",
        type=float,
        default=3.0,
        metavar="F",
        help="interaction scale between observations (default 3)",
    )
    p.add_argument("--mode", choices=("normalized", "unnormalized"), default=default_mode)
    p.add_argument("--discount", choices=("plain", "interaction"), default="interaction")
    p.add_argument("--out", metavar="PATH", help="PGM raster output")
    p.add_argument("--csv", metavar="PATH", help="CSV table output")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefmap",
        description="Extrapolate pointwise observations over a grid with belief functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extrapolate", help="combined belief field (raster and/or masses CSV)")
    _add_common(p)
    p.add_argument("--style", choices=STYLES, default="belief", help="raster style for --out")

    p = sub.add_parser("entropy", help="pignistic entropy map")
    _add_common(p)

    p = sub.add_parser("info", help="information level map")
    _add_common(p)

    p = sub.add_parser("conflict", help="contradiction mass map (unnormalized field)")
    _add_common(p, default_mode="unnormalized")

    p = sub.add_parser("plausible", help="most plausible value per cell")
    _add_common(p)
    p.add_argument(
        "--threshold",
        type=float,
        default=0.0,
        metavar="F",
        help="singleton belief below which a cell stays undetermined (default 0)",
    )

    p = sub.add_parser("suggest", help="rank next-measurement locations")
    _add_common(p)
    p.add_argument("--top", type=int, default=5, metavar="K", help="number of suggestions")
    p.add_argument("--stride", type=int, default=1, metavar="N", help="candidate subsampling")
    return parser


def _build_inputs(args):
    with open(args.obs, "r", encoding="utf-8") as fh:
        text = fh.read()
    grid = GridSpace(args.width, args.height)
    domain, obs = parse_observations(text, grid=grid)
    scales = {v: args.lam for v in domain.values}
    for spec in args.lambda_value:
        name, eq, val = spec.partition("=")
        if not eq:
            raise BeliefMapError(f"--lambda-value expects NAME=F, got {spec!r}")
        if name not in domain:
            raise BeliefMapError(f"--lambda-value names unknown value {name!r}")
        scales[name] = _parse_lambda(val)
    decay = DecayModel(scales)
    interaction = InteractionModel(args.lambda_mu)
    cfg = CombinationConfig(mode=args.mode, discount=args.discount)
    return grid, domain, obs, decay, interaction, cfg


def _entropy_shades(field: BeliefField):
    return entropy_map(field).values / math.log(field.domain.size)


def _info_shades(field: BeliefField):
    if field.domain.size == 2:
        return binary_information_map(field).values
    return information_map(field).values


def _field_raster(field: BeliefField, style: str, obs, out_path: str) -> None:
    if style == "belief":
        try:
            write_bytes(out_path, pgm_bytes(belief_shades(field, obs)))
        except UnsupportedDomainSizeError:
            # larger domains get one raster per value
            path = Path(out_path)
            ext = path.suffix or ".pgm"
            for value in field.domain.values:
                target = path.with_name(f"{path.stem}_{value}{ext}")
                write_bytes(target, pgm_bytes(value_shades(field, value)))
    elif style == "entropy":
        write_bytes(out_path, pgm_bytes(_entropy_shades(field)))
    elif style == "info":
        write_bytes(out_path, pgm_bytes(_info_shades(field)))
    elif style == "conflict":
        write_bytes(out_path, pgm_bytes(conflict_map(field).values))


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 2 reserved for the
        # all-cells-conflict outcome and report usage problems as 1
        return 0 if not exc.code else 1
    try:
        grid, domain, obs, decay, interaction, cfg = _build_inputs(args)
    except (BeliefMapError, OSError, ValueError) as exc:
        print(f"beliefmap: {exc}", file=sys.stderr)
        return 1

    if args.command != "suggest" and not (args.out or args.csv):
        print("beliefmap: nothing to do; pass --out and/or --csv", file=sys.stderr)
        return 1

    try:
        field = extrapolate_field(grid, obs, decay, interaction, cfg)
        if cfg.mode == "normalized" and field.conflicted.all():
            print("beliefmap: total conflict at every cell of the field", file=sys.stderr)
            return 2

        if args.command == "suggest":
            ranked = suggest_next_measurement(
                grid, obs, decay, interaction, cfg, k=args.top, stride=args.stride
            )
            text = suggestions_csv_text(ranked)
            if args.csv:
                write_text(args.csv, text)
            else:
                sys.stdout.write(text)
            return 0

        if args.command == "extrapolate":
            if args.out:
                _field_raster(field, args.style, obs, args.out)
            if args.csv:
                write_text(args.csv, masses_csv_text(field))
        elif args.command == "entropy":
            if args.out:
                write_bytes(args.out, pgm_bytes(_entropy_shades(field)))
            if args.csv:
                write_text(args.csv, scalar_csv_text(entropy_map(field), "entropy"))
        elif args.command == "info":
            if args.out:
                write_bytes(args.out, pgm_bytes(_info_shades(field)))
            if args.csv:
                write_text(args.csv, scalar_csv_text(information_map(field), "information"))
        elif args.command == "conflict":
            cmap = conflict_map(field)
            if args.out:
                write_bytes(args.out, pgm_bytes(cmap.values))
            if args.csv:
                write_text(args.csv, scalar_csv_text(cmap, "conflict"))
        elif args.command == "plausible":
            vf = plausible_map(field, threshold=args.threshold)
            if args.out:
                write_bytes(args.out, pgm_bytes(plausible_shades(vf)))
            if args.csv:
                write_text(args.csv, plausible_csv_text(vf))
    except (BeliefMapError, OSError, ValueError) as exc:
        print(f"beliefmap: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
