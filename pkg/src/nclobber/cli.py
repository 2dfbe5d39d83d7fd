"""Command-line front end: solve boards, simplify and compare values,
and run the 1xn censuses, with text, csv, and json output.

Exit codes: 0 on success, 2 on usage errors (bad flags or arguments),
3 on domain errors (unparseable board or value, no opening move).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .enumeration import (
    REGIMES,
    build_table,
    enumerate_values,
    render_reports,
)
from .game_core import BoardError, Position, parse_board
from .preferences import (
    ChainError,
    compare,
    prudent_compare,
    prudent_simplify,
    prune,
)
from .solver import (
    MODES,
    Class,
    NoMoveError,
    Raw,
    Simple,
    evaluate,
)
from .values import (
    DEFAULT_PROFILE,
    NormalizationProfile,
    ValueSyntaxError,
    choice,
    expand_simple,
    normalize,
    parse_value,
    render_value,
)


@dataclass(frozen=True)
class CliConfig:
    """Resolved run settings shared by the subcommands."""

    players: int = 3
    start: int = 1
    mode: str = "raw"
    profile: NormalizationProfile = DEFAULT_PROFILE
    format: str = "text"
    jobs: int = 1
    perspective: Optional[int] = None
    relation: str = "base"
    render: Optional[str] = None
    out: Optional[str] = None


def _profile_arg(text: str) -> NormalizationProfile:
    try:
        return NormalizationProfile[text.upper()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown profile {text!r}; expected one of L0, L1, L2"
        )


def _grid_arg(text: str) -> tuple[int, int]:
    rows, sep, cols = text.lower().partition("x")
    if not sep or not rows.isdigit() or not cols.isdigit():
        raise argparse.ArgumentTypeError(
            f"grid must look like ROWSxCOLS, e.g. 2x3, got {text!r}"
        )
    return int(rows), int(cols)


def _modes_arg(text: str) -> tuple[str, ...]:
    if text == "all":
        return REGIMES
    picked = tuple(part.strip() for part in text.split(",") if part.strip())
    for name in picked:
        if name not in REGIMES:
            raise argparse.ArgumentTypeError(
                f"unknown census regime {name!r}; expected from {', '.join(REGIMES)}"
            )
    if not picked:
        raise argparse.ArgumentTypeError("at least one census regime is required")
    return picked


def _config_from(args: argparse.Namespace) -> CliConfig:
    profile = getattr(args, "profile", None)
    return CliConfig(
        players=getattr(args, "players", 3),
        start=getattr(args, "start", 1),
        mode=getattr(args, "mode", "raw"),
        # L0 is falsy as an IntEnum, so an `or` default would swallow it
        profile=DEFAULT_PROFILE if profile is None else profile,
        format=getattr(args, "format", "text"),
        jobs=getattr(args, "jobs", 1),
        perspective=getattr(args, "perspective", None),
        relation=getattr(args, "relation", "base"),
        render=getattr(args, "render", None),
        out=getattr(args, "out", None),
    )


def _emit(text: str, cfg: CliConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _render_result(result, style: Optional[str]) -> str:
    if isinstance(result, Class):
        return str(result)
    if isinstance(result, Simple):
        if style == "brackets":
            return expand_simple(result.value).text
        return str(result.value)
    if isinstance(result, Raw):
        return render_value(result.value, style or "brackets")
    raise TypeError(f"cannot render {type(result).__name__}")


def _cmd_solve(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    shape = args.grid if args.grid else "line"
    graph, occupancy = parse_board(args.board, shape=shape, players=cfg.players)
    position = Position(graph, occupancy, cfg.start)
    try:
        result = evaluate(position, cfg.mode, cfg.profile, None, cfg.players)
    except NoMoveError:
        raise NoMoveError(f"no initial move on board {args.board!r}")
    style = cfg.render or ("bar" if cfg.mode == "prudent" else "brackets")
    rendered = _render_result(result, style)
    if cfg.format == "json":
        payload = {
            "board": args.board,
            "shape": "line" if shape == "line" else f"{shape[0]}x{shape[1]}",
            "start": cfg.start,
            "mode": cfg.mode,
            "profile": cfg.profile.name,
            "value": rendered,
        }
        _emit(json.dumps(payload), cfg)
    else:
        _emit(rendered, cfg)
    return 0


def _cmd_simplify(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    value = parse_value(args.value, players=cfg.players)
    simplified = normalize(value, cfg.profile, cfg.players)
    if cfg.mode != "raw":
        p = cfg.perspective
        if cfg.mode == "prudent":
            simple = prudent_simplify(simplified, p)
            style = cfg.render or "bar"
            rendered = (
                expand_simple(simple).text if style == "brackets" else str(simple)
            )
            return _finish_simplify(args, cfg, rendered)
        if simplified.children is not None:
            kept = prune(set(simplified.children), p, cfg.mode, cfg.players)
            simplified = normalize(choice(kept), cfg.profile, cfg.players)
    rendered = render_value(simplified, cfg.render or "brackets")
    return _finish_simplify(args, cfg, rendered)


def _finish_simplify(args: argparse.Namespace, cfg: CliConfig, rendered: str) -> int:
    if cfg.format == "json":
        payload = {
            "input": args.value,
            "mode": cfg.mode,
            "profile": cfg.profile.name,
            "perspective": cfg.perspective,
            "value": rendered,
        }
        _emit(json.dumps(payload), cfg)
    else:
        _emit(rendered, cfg)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    left = parse_value(args.left, players=cfg.players)
    right = parse_value(args.right, players=cfg.players)
    p = cfg.perspective
    if cfg.relation == "prudent":
        outcome = prudent_compare(left, right, p)
    elif cfg.relation == "indifferent":
        outcome = compare(left, right, p, "indifferent", cfg.players)
    else:
        outcome = compare(left, right, p, "selfish", cfg.players)
    if cfg.format == "json":
        payload = {
            "left": args.left,
            "right": args.right,
            "perspective": p,
            "relation": cfg.relation,
            "result": outcome.value,
        }
        _emit(json.dumps(payload), cfg)
    else:
        _emit(outcome.value, cfg)
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    report = enumerate_values(
        args.n,
        args.modes,
        cfg.profile,
        workers=cfg.jobs,
        collect_inventory=True if args.inventory else None,
        players=cfg.players,
    )
    if cfg.format == "json":
        _emit(render_reports([report], "json", args.modes), cfg)
    elif cfg.format == "csv":
        _emit(render_reports([report], "csv", args.modes), cfg)
    else:
        fields = [f"n={report.board_length}", f"games={report.games_analysed}"]
        fields += [f"{m}={report.unique_values[m]}" for m in args.modes]
        lines = [" ".join(fields)]
        if args.inventory and report.value_inventory is not None:
            for m in args.modes:
                lines.append(f"{m}: " + " ".join(report.value_inventory[m]))
        _emit("\n".join(lines), cfg)
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    reports = build_table(
        args.max_n, args.modes, cfg.profile, workers=cfg.jobs, players=cfg.players
    )
    fmt = "json" if cfg.format == "json" else "csv"
    _emit(render_reports(reports, fmt, args.modes), cfg)
    return 0


def _add_common(parser: argparse.ArgumentParser, *, formats: Sequence[str]) -> None:
    parser.add_argument("--players", type=int, default=3, help="number of players")
    parser.add_argument(
        "--profile",
        type=_profile_arg,
        default=None,
        help="normalization profile L0/L1/L2 (default: the calibrated repo default)",
    )
    parser.add_argument(
        "--format", choices=tuple(formats), default=formats[0], help="output format"
    )
    parser.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nclobber",
        description="Game values for N-player Clobber under normal play.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="evaluate a board position")
    solve.add_argument("board", help="board digits, e.g. 12223 (0 = empty cell)")
    solve.add_argument("--start", type=int, default=1, help="starting player")
    solve.add_argument("--mode", choices=MODES, default="raw")
    solve.add_argument(
        "--render", choices=("brackets", "bar"), default=None,
        help="value style (default: bar for prudent, brackets otherwise)",
    )
    solve.add_argument(
        "--grid", type=_grid_arg, default=None, metavar="ROWSxCOLS",
        help="read the digits as a grid instead of a line",
    )
    _add_common(solve, formats=("text", "json"))
    solve.set_defaults(handler=_cmd_solve)

    simplify = sub.add_parser("simplify", help="rewrite a value text")
    simplify.add_argument("value", help="value text, e.g. [[1,3]] or 2_1")
    simplify.add_argument(
        "--mode", choices=("raw", "selfish", "indifferent", "prudent"), default="raw",
        help="raw normalizes only; other modes also prune/merge options",
    )
    simplify.add_argument(
        "--perspective", type=int, default=None,
        help="whose view the options are pruned from (required unless raw)",
    )
    simplify.add_argument("--render", choices=("brackets", "bar"), default=None)
    _add_common(simplify, formats=("text", "json"))
    simplify.set_defaults(handler=_cmd_simplify)

    cmp_parser = sub.add_parser("compare", help="compare two values for a player")
    cmp_parser.add_argument("left")
    cmp_parser.add_argument("right")
    cmp_parser.add_argument(
        "-p", "--perspective", type=int, required=True, help="comparing player"
    )
    cmp_parser.add_argument(
        "--relation", choices=("base", "prudent", "indifferent"), default="base"
    )
    _add_common(cmp_parser, formats=("text", "json"))
    cmp_parser.set_defaults(handler=_cmd_compare)

    enum_parser = sub.add_parser("enumerate", help="census of one board length")
    enum_parser.add_argument("n", type=int, help="board length")
    enum_parser.add_argument("--modes", type=_modes_arg, default=REGIMES)
    enum_parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    enum_parser.add_argument(
        "--inventory", action="store_true", help="also list the distinct values"
    )
    _add_common(enum_parser, formats=("text", "csv", "json"))
    enum_parser.set_defaults(handler=_cmd_enumerate)

    table = sub.add_parser("table", help="censuses for lengths 2..MAX_N")
    table.add_argument("max_n", type=int, help="largest board length")
    table.add_argument("--modes", type=_modes_arg, default=REGIMES)
    table.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_common(table, formats=("csv", "json"))
    table.set_defaults(handler=_cmd_table)

    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    players = getattr(args, "players", 3)
    if not 1 <= players <= 9:
        parser.error(f"--players must be 1..9, got {players}")
    if args.command == "solve" and not 1 <= args.start <= players:
        parser.error(f"--start must be 1..{players}, got {args.start}")
    if args.command == "simplify" and args.mode != "raw" and args.perspective is None:
        parser.error(f"--mode {args.mode} needs --perspective")
    if args.command in ("simplify", "compare"):
        perspective = args.perspective
        if perspective is not None and not 1 <= perspective <= players:
            parser.error(f"--perspective must be 1..{players}, got {perspective}")
    if args.command in ("enumerate", "table"):
        if args.jobs < 1:
            parser.error(f"--jobs must be at least 1, got {args.jobs}")
        length = args.n if args.command == "enumerate" else args.max_n
        if not 2 <= length <= 13:
            parser.error(f"board length must be 2..13, got {length}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.handler(args)
    except (BoardError, ValueSyntaxError, NoMoveError, ChainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
