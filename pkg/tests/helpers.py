"""Golden data and shared verification routines for the test suite.

The VALUE_* constants are reference results for specific boards, player 1
to move, quoted verbatim (spaces stripped) so regressions show up as raw
string diffs.  The *_violations helpers run whole ordering suites and
return human-readable descriptions of every failure, so a test can assert
the list is empty and still print exactly what broke.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from hypothesis import strategies as st

from nclobber.enumeration import BoardFilter, generate_boards
from nclobber.game_core import BoardGraph, apply_move, legal_moves, parse_board
from nclobber.preferences import (
    Comparison,
    compare,
    prudent_compare,
    prudent_incomparable,
    prudent_less,
    simple_compare,
)
from nclobber.values import GameValue, SimpleValue, choice, expand_simple, leaf

# ---------------------------------------------------------------------------
# reference values for the worked-example boards (1xn, player 1 starts)

VALUE_213 = "1"
VALUE_12223 = "[[1,3]]"
VALUE_123213 = "[[1,3],[1,[1,2]],[2,3]]"
VALUE_1232132321 = "[[[1, 3, [3, [[1, 3]]], [[1, 3, [2, 3]], [2, 3, [1, 2]]], [[[1, 2]]]], [3, [2, 3], [2, [1, 3]], [[1, 2]]], [3, [3, [1, 3]], [3, [[1, 3]]], [[1, 3], [2, 3]], [[1, 3]]], [3, [[1, 2], [2, 3]]], [[1, 3], [3, [1, 2], [[1, 2]]], [[1, 2, 3], [1, 2, [2, 3]]]], [[1, 3], [3, [1, 2], [[1, 2]]], [[1, 3], [2, 3, [2, 3]], [2, 3]]]], [[2, [1, 3], [2, 3], [[1, 3]]], [2, [3, [1, 3]]], [3, [1, [2, 3]], [[1, 3, [2, 3]]], [[1, 3], [[1, 2]]], [[2, 3], [[1, 3]]]], [[1, 3], [1, [2, 3]], [3, [2, 3]], [[2, 3]]], [[1, [1, 2, 3], [2, 3, [2, 3]]], [2, 3], [2, [[1, 2]]]], [[2, 3], [2, [1, 2]], [[1, 2, [2, 3]], [1, 2]]]], [[2, [2, 3]], [2, [3, [1, 3]], [3, [2, 3]]], [2, [3, [1, 3]]], [3, [2, 3], [[1, 3]], [[2, 3], [[1, 3]]]], [[1, 2], [1, 3, [1, 3]], [2, 3]], [[1, 2], [2, 3]]], [[[1, 2], [1, [2, 3]], [2, 3]], [[1, 2], [2, 3]], [[1, 3, [1, 2]]], [[2, 3]], [[3, [1, 3]], [[1, 3]]]]]".replace(" ", "")

SELFISH_1232132321 = "[[[1,2]]]"
PRUDENT_1232132321 = SimpleValue(3, 1)
SELFISH_132323123 = "[[[1,2],[[2,3],[[1,3]]]],[[1,2],[[2,3]]],[[[2,3],[[1,3]]]]]"
# The reference worked example prints 3_2 here.  That contradicts the
# reference's own ordering chain (3_2 is below 3_1 for player 1, and the
# option collapsing to 3_1 is available), and the prudent census column
# only matches when the chain is followed, so this library answers 3_1.
PRUDENT_132323123_REFERENCE = SimpleValue(3, 2)
PRUDENT_132323123_COMPUTED = SimpleValue(3, 1)

# Reference census inventory for length-8 boards, player 1 to move.  The
# selfish census is presented with every simple value written as its
# atom, i.e. after also collapsing singletons around simples (rule 1),
# so tests compare modulo the L2 profile.
INVENTORY_8_SELFISH = frozenset(
    {"1", "2", "3", "1_1", "2_1", "3_1", "1_2", "2_2", "[2_1,2_2]"}
)
INVENTORY_8_PRUDENT = INVENTORY_8_SELFISH - {"[2_1,2_2]"}

# ---------------------------------------------------------------------------
# hypothesis strategies and small corpora


def value_trees(max_players: int = 3, max_leaves: int = 20) -> st.SearchStrategy:
    """Random interned value trees over players 1..max_players."""
    base = st.integers(1, max_players).map(leaf)
    return st.recursive(
        base,
        lambda inner: st.lists(inner, min_size=1, max_size=4).map(choice),
        max_leaves=max_leaves,
    )


MOVABLE_BOARDS: dict[int, tuple[str, ...]] = {
    n: tuple(generate_boards(n)) for n in range(2, 8)
}


def movable_board_strategy(max_n: int = 7) -> st.SearchStrategy:
    pool = [b for n in range(2, max_n + 1) for b in MOVABLE_BOARDS[n]]
    return st.sampled_from(pool)


# ---------------------------------------------------------------------------
# ordering suites over simple values


def _others(p: int) -> tuple[int, int]:
    a, b = (x for x in (1, 2, 3) if x != p)
    return a, b


def base_ordering_violations(max_exponent: int = 8) -> list[str]:
    """Check the two opposing bases against the mover's own base.

    For every perspective p with opposing bases b and c, and every
    exponent i: b_i and c_i are prudently incomparable for p, and the
    strict order against p's own simple alternates with parity — even i
    puts b_i and c_i below p_i, odd i puts p_i below b_i and c_i.
    """
    bad = []
    for p in (1, 2, 3):
        b, c = _others(p)
        for i in range(max_exponent + 1):
            own = expand_simple(SimpleValue(p, i))
            eb = expand_simple(SimpleValue(b, i))
            ec = expand_simple(SimpleValue(c, i))
            if not prudent_incomparable(eb, ec, p):
                bad.append(f"{b}_{i} and {c}_{i} comparable for player {p}")
            if i % 2 == 0:
                pairs = [(eb, own, f"{b}_{i} < {p}_{i}"), (ec, own, f"{c}_{i} < {p}_{i}")]
            else:
                pairs = [(own, eb, f"{p}_{i} < {b}_{i}"), (own, ec, f"{p}_{i} < {c}_{i}")]
            for lo, hi, label in pairs:
                if not prudent_less(lo, hi, p):
                    bad.append(f"player {p}: expected {label}, not strict")
                if prudent_less(hi, lo, p):
                    bad.append(f"player {p}: {label} also holds reversed")
    return bad


def successor_incomparability_violations(max_exponent: int = 8) -> list[str]:
    """p's own simple of exponent i+1 is incomparable to either opposing
    simple of exponent i, for every perspective p."""
    bad = []
    for p in (1, 2, 3):
        b, c = _others(p)
        for i in range(max_exponent):
            own_up = expand_simple(SimpleValue(p, i + 1))
            for other in (b, c):
                against = expand_simple(SimpleValue(other, i))
                if not prudent_incomparable(own_up, against, p):
                    bad.append(
                        f"player {p}: {p}_{i + 1} comparable with {other}_{i}"
                    )
    return bad


def all_simples(max_exponent: int = 8) -> list[SimpleValue]:
    return [
        SimpleValue(base, exp)
        for base in (1, 2, 3)
        for exp in range(max_exponent + 1)
    ]


def closed_form_disagreements(max_exponent: int = 8) -> list[str]:
    """simple_compare must equal the prudent recursion on expansions,
    for every simple pair and every perspective."""
    bad = []
    simples = all_simples(max_exponent)
    for p in (1, 2, 3):
        for a in simples:
            for b in simples:
                fast = simple_compare(a, b, p)
                slow = prudent_compare(expand_simple(a), expand_simple(b), p)
                if fast is not slow:
                    bad.append(
                        f"player {p}: {a} vs {b}: chain says {fast.value}, "
                        f"recursion says {slow.value}"
                    )
    return bad


def indifferent_collapse_disagreements(max_exponent: int = 8) -> list[str]:
    """The indifferent relation keeps the prudent chain's strict order
    but turns each incomparable pair into an equality."""
    bad = []
    simples = all_simples(max_exponent)
    for p in (1, 2, 3):
        for a in simples:
            for b in simples:
                prudent = simple_compare(a, b, p)
                expected = (
                    Comparison.EQUAL
                    if prudent is Comparison.INCOMPARABLE
                    else prudent
                )
                got = compare(expand_simple(a), expand_simple(b), p, "indifferent")
                if got is not expected:
                    bad.append(
                        f"player {p}: {a} vs {b}: expected {expected.value}, "
                        f"got {got.value}"
                    )
    return bad


# ---------------------------------------------------------------------------
# board walks


def reachable_occupancies(graph: BoardGraph, occupancy: bytes, players: int = 3):
    """Every occupancy reachable by any sequence of moves by any players."""
    seen = {occupancy}
    queue = deque([occupancy])
    while queue:
        cur = queue.popleft()
        for player in range(1, players + 1):
            for move in legal_moves(graph, cur, player):
                nxt = apply_move(cur, move)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def isolation_violations(board: str, players: int = 3) -> list[str]:
    """Check that a player with no moves never regains one.

    Walks every reachable occupancy; whenever a player has no legal move,
    every single further move must leave them without one.  Empty-handed
    players count as stuck, so the check covers them too.
    """
    graph, occupancy = parse_board(board, players=players)
    bad = []
    for cur in reachable_occupancies(graph, occupancy, players):
        stuck = [
            p for p in range(1, players + 1) if not legal_moves(graph, cur, p)
        ]
        if not stuck:
            continue
        for player in range(1, players + 1):
            for move in legal_moves(graph, cur, player):
                nxt = apply_move(cur, move)
                for q in stuck:
                    if legal_moves(graph, nxt, q):
                        bad.append(
                            f"board {board}: player {q} had no move at "
                            f"{cur!r} but can move after {move} -> {nxt!r}"
                        )
    return bad
