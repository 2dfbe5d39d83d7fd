"""Boards and moves for N-player Clobber on an undirected graph.

A board is a graph plus an occupancy: one byte per vertex, 0 for empty
and 1..N for a token of that player.  A move picks up the mover's token
and clobbers an adjacent token of a different player; the source vertex
becomes empty.  Tokens never move onto empty vertices, so every move
removes exactly one token and empty vertices stay empty forever.

Turn order rotates 1, 2, ..., N, 1, ...  A player with no legal move is
skipped, and since the mover's options only ever shrink, a skipped
player never moves again.  The last player to make a move wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Union


class BoardError(ValueError):
    """Raised for malformed board text or illegal moves."""


@dataclass(frozen=True)
class BoardGraph:
    """An undirected graph with sorted adjacency lists."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]


class Move(NamedTuple):
    src: int
    dst: int


@dataclass(frozen=True)
class Position:
    """A board state with the player whose turn it nominally is."""

    graph: BoardGraph
    occupancy: bytes
    mover: int = 1


def _build_graph(vertex_count: int, edge_list: Sequence[tuple[int, int]]) -> BoardGraph:
    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edge_list))
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return BoardGraph(vertex_count, edges, tuple(tuple(sorted(a)) for a in adj))


@lru_cache(maxsize=None)
def line_graph(n: int) -> BoardGraph:
    """A path of n vertices, the 1xn board."""
    if n < 1:
        raise BoardError("a line board needs at least one vertex")
    return _build_graph(n, [(i, i + 1) for i in range(n - 1)])


@lru_cache(maxsize=None)
def grid_graph(rows: int, cols: int) -> BoardGraph:
    """A rows x cols grid, vertices row-major, orthogonally adjacent."""
    if rows < 1 or cols < 1:
        raise BoardError("a grid board needs positive dimensions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return _build_graph(rows * cols, edges)


Shape = Union[str, tuple[int, int]]


def parse_board(text: str, shape: Shape = "line", players: int = 3) -> tuple[BoardGraph, bytes]:
    """Turn a digit string into (graph, occupancy).

    shape is "line" or a (rows, cols) pair read row-major.  Digits must
    be 0..players.  Boards with no legal move parse fine; rejecting them
    is the evaluator's job.
    """
    if not 1 <= players <= 9:
        raise BoardError(f"player count must be 1..9, got {players}")
    if not text or not text.isdigit():
        raise BoardError(f"board must be a nonempty digit string, got {text!r}")
    cells = bytes(int(ch) for ch in text)
    bad = [ch for ch in text if int(ch) > players]
    if bad:
        raise BoardError(f"digit {bad[0]} exceeds player count {players}")
    if shape == "line":
        graph = line_graph(len(cells))
    else:
        rows, cols = shape
        graph = grid_graph(rows, cols)
        if graph.vertex_count != len(cells):
            raise BoardError(
                f"grid {rows}x{cols} needs {graph.vertex_count} digits, got {len(cells)}"
            )
    return graph, cells


def render_board(occupancy: bytes) -> str:
    return "".join(str(b) for b in occupancy)


def legal_moves(graph: BoardGraph, occupancy: bytes, player: int) -> list[Move]:
    """All clobbering moves for player, ascending by (src, dst)."""
    out = []
    neighbors = graph.neighbors
    for src in range(graph.vertex_count):
        if occupancy[src] != player:
            continue
        for dst in neighbors[src]:
            got = occupancy[dst]
            if got != 0 and got != player:
                out.append(Move(src, dst))
    return out


def apply_move(occupancy: bytes, move: Move, graph: Optional[BoardGraph] = None) -> bytes:
    """The occupancy after the move; validates what it can see."""
    src, dst = move
    mover = occupancy[src]
    target = occupancy[dst]
    if mover == 0:
        raise BoardError(f"no token to move at vertex {src}")
    if target == 0:
        raise BoardError(f"cannot move onto empty vertex {dst}")
    if target == mover:
        raise BoardError(f"cannot clobber own token at vertex {dst}")
    if graph is not None and dst not in graph.neighbors[src]:
        raise BoardError(f"vertices {src} and {dst} are not adjacent")
    out = bytearray(occupancy)
    out[src] = 0
    out[dst] = mover
    return bytes(out)


def movers_mask(graph: BoardGraph, occupancy: bytes) -> int:
    """Bitmask of players with at least one legal move.

    Adjacent tokens of different players can always clobber each other,
    so one scan over the edges finds every player that can move.
    """
    mask = 0
    for u, v in graph.edges:
        a = occupancy[u]
        if a:
            b = occupancy[v]
            if b and b != a:
                mask |= (1 << a) | (1 << b)
    return mask


def is_terminal(graph: BoardGraph, occupancy: bytes) -> bool:
    """True when no player has a legal move."""
    return movers_mask(graph, occupancy) == 0


def next_active_player(
    graph: BoardGraph, occupancy: bytes, after: int, players: int = 3
) -> Optional[int]:
    """The first player in rotation strictly after `after` who can move.

    Tries at most `players` candidates, so it wraps all the way around
    to `after` itself; returns None when nobody can move.
    """
    mask = movers_mask(graph, occupancy)
    if mask == 0:
        return None
    for step in range(1, players + 1):
        cand = (after - 1 + step) % players + 1
        if mask & (1 << cand):
            return cand
    return None
