"""Memoized evaluation of positions into game values.

Evaluation walks the game tree bottom-up.  The tree has a node for
every (occupancy, player to move) pair: a player with no move passes,
so their node is the singleton choice over the same occupancy with the
next player to move.  Such a wrapper is invisible when the value below
is a bare winner (singleton-of-leaf identification) but real otherwise.
A move that empties the board of moves ends the game with the mover
winning, so such a child is the mover's leaf.  The node value is the
canonical choice over the child values, post-processed per mode:

  raw         keep the canonical choice untouched
  syntactic   rewrite with the session's normalization profile
  selfish     drop options the mover ranks strictly below another
  indifferent selfish pruning under loss-blind comparison, with
              indistinguishable options merged; the root is reported as
              the mover-relative class it lands in
  prudent     evaluate entirely in simple values: prune to the best
              chain coordinate and merge the survivors (three players
              only; every position collapses to one simple value)

Results are wrapped in one of three variants: Raw carries a value tree,
Simple a simple value, Class a loss-blind class.  A cache maps resolved
(occupancy, mover) pairs to results and may be shared across positions
on the same board graph, mode, and profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .game_core import (
    BoardGraph,
    Position,
    apply_move,
    legal_moves,
    movers_mask,
    parse_board,
)
from .preferences import (
    ChainError,
    chain_coordinate,
    indifferent_class,
    merge_incomparable_simples,
    prune,
)
from .values import (
    DEFAULT_PROFILE,
    GameValue,
    NormalizationProfile,
    SimpleValue,
    choice,
    leaf,
    normalize,
)

MODES = ("raw", "syntactic", "selfish", "indifferent", "prudent")


class NoMoveError(ValueError):
    """No player can move from the given root position."""


@dataclass(frozen=True)
class Raw:
    value: GameValue

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Simple:
    value: SimpleValue

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Class:
    """A loss-blind equality class, relative to the starting mover.

    mine=True is the guaranteed win.  Other classes are named by the
    exponent of an opposing simple value in them; the class (False, j)
    also contains the mover's own simple of exponent j+1.
    """

    mine: bool
    exponent: int

    def __str__(self) -> str:
        return "win" if self.mine else f"other_{self.exponent}"


EvalResult = Union[Raw, Simple, Class]


@dataclass
class EvalCache:
    """Memo of resolved (occupancy, mover) pairs for one evaluation setup.

    A cache is bound to a board graph, mode, profile, and player count;
    reusing it under any other setup is an error.
    """

    graph: BoardGraph
    mode: str
    profile: NormalizationProfile
    players: int = 3
    entries: dict[tuple[bytes, int], Union[GameValue, SimpleValue]] = field(
        default_factory=dict
    )

    def compatible_with(
        self, graph: BoardGraph, mode: str, profile: NormalizationProfile, players: int
    ) -> bool:
        return (
            self.graph == graph
            and self.mode == mode
            and self.profile is profile
            and self.players == players
        )


def _next(player: int, players: int) -> int:
    return player % players + 1


def evaluate(
    position: Position,
    mode: str = "raw",
    profile: Optional[NormalizationProfile] = None,
    cache: Optional[EvalCache] = None,
    players: int = 3,
) -> EvalResult:
    """Value of a position for the mover given in it (skips resolve first)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if profile is None:
        profile = DEFAULT_PROFILE
    if not 1 <= position.mover <= players:
        raise ValueError(f"mover {position.mover} out of range for {players} players")
    if mode == "prudent" and players != 3:
        raise ValueError("prudent evaluation is defined for exactly three players")
    graph = position.graph
    if cache is None:
        cache = EvalCache(graph, mode, profile, players)
    elif not cache.compatible_with(graph, mode, profile, players):
        raise ValueError("cache was built for a different evaluation setup")
    mask = movers_mask(graph, position.occupancy)
    if mask == 0:
        raise NoMoveError("no player can move from the root position")
    if mode == "prudent":
        simple = _eval_prudent(graph, position.occupancy, position.mover, cache)
        return Simple(simple)
    value = _eval_tree(graph, position.occupancy, position.mover, mode, profile, cache, players)
    if mode == "indifferent":
        tokens = sum(1 for b in position.occupancy if b)
        named = indifferent_class(value, position.mover, tokens + 1)
        if named is None:
            raise ChainError("evaluation produced a value outside the class ladder")
        return Class(*named)
    return Raw(value)


def _eval_tree(
    graph: BoardGraph,
    occupancy: bytes,
    mover: int,
    mode: str,
    profile: NormalizationProfile,
    cache: EvalCache,
    players: int,
) -> GameValue:
    key = (occupancy, mover)
    got = cache.entries.get(key)
    if got is not None:
        return got
    after = _next(mover, players)
    options = set()
    if movers_mask(graph, occupancy) & (1 << mover):
        for move in legal_moves(graph, occupancy, mover):
            child = apply_move(occupancy, move)
            if movers_mask(graph, child) == 0:
                options.add(leaf(mover))
            else:
                options.add(_eval_tree(graph, child, after, mode, profile, cache, players))
        if mode in ("selfish", "indifferent"):
            options = prune(options, mover, mode, players)
    else:
        # The mover passes: a forced continuation, one list level.
        options.add(_eval_tree(graph, occupancy, after, mode, profile, cache, players))
    value = choice(options)
    if mode != "raw":
        value = normalize(value, profile, players)
    cache.entries[key] = value
    return value


def _eval_prudent(
    graph: BoardGraph, occupancy: bytes, mover: int, cache: EvalCache
) -> SimpleValue:
    key = (occupancy, mover)
    got = cache.entries.get(key)
    if got is not None:
        return got
    after = _next(mover, 3)
    if movers_mask(graph, occupancy) & (1 << mover):
        options: set[SimpleValue] = set()
        for move in legal_moves(graph, occupancy, mover):
            child = apply_move(occupancy, move)
            if movers_mask(graph, child) == 0:
                options.add(SimpleValue(mover, 0))
            else:
                options.add(_eval_prudent(graph, child, after, cache))
        # The chain order is total across coordinates, so the undominated
        # options are exactly those sharing the best coordinate.
        best = max(chain_coordinate(s, mover).sort_key for s in options)
        survivors = {s for s in options if chain_coordinate(s, mover).sort_key == best}
        value = merge_incomparable_simples(survivors, mover)
    else:
        # A pass wraps the continuation in one level, which a simple
        # value absorbs: the singleton of a simple is that simple.
        value = _eval_prudent(graph, occupancy, after, cache)
    cache.entries[key] = value
    return value


def evaluate_all_starts(
    board: Union[str, Position],
    mode: str = "raw",
    profile: Optional[NormalizationProfile] = None,
    players: int = 3,
    shape: str = "line",
) -> dict[int, EvalResult]:
    """Evaluate the same board once per starting player 1..players."""
    if isinstance(board, Position):
        graph, occupancy = board.graph, board.occupancy
    else:
        graph, occupancy = parse_board(board, shape=shape, players=players)
    if profile is None:
        profile = DEFAULT_PROFILE
    results: dict[int, EvalResult] = {}
    # Memo keys carry the resolved mover, so one cache serves all starts.
    cache = EvalCache(graph, mode, profile, players)
    for start in range(1, players + 1):
        results[start] = evaluate(
            Position(graph, occupancy, start), mode, profile, cache, players
        )
    return results


def evaluate_text(
    board: str,
    start: int = 1,
    mode: str = "raw",
    profile: Optional[NormalizationProfile] = None,
    players: int = 3,
    shape: str = "line",
    cache: Optional[EvalCache] = None,
) -> EvalResult:
    """Parse a board string and evaluate it; convenience front door."""
    graph, occupancy = parse_board(board, shape=shape, players=players)
    return evaluate(Position(graph, occupancy, start), mode, profile, cache, players)
