"""Preference orders between game values, from one player's perspective.

A value is a guaranteed win for player p when p wins every leaf, a
guaranteed loss when p wins no leaf, and mixed otherwise.  A selfish
player orders values by a recursive relation: X <= Y holds when the
values are identical, when X's class is below Y's in loss < mixed <
win, or structurally, when every option of X is <= Y, or every option
of X is <= every option of Y.  Leaves carry no options, so they only
relate through identity and the class rules.

A prudent player refines this with a strict order that also discards an
option when every comparison between the two option sets is weaker-or-
incomparable with at least one strictly weaker witness.  The recursion
compares option against option, option against whole, and whole against
option; all three shapes are needed to reproduce the ladder of simple
values that prudent play collapses to.

For simple values the prudent order has a closed form.  Writing p_j for
the mover's own base and q_j for another player's, the coordinates

    p_0 -> top,   p_j -> asc((j-1)/2) for odd j, desc(j/2) for even j,
    q_j -> asc(j/2) for even j, desc((j+1)/2) for odd j

sort into one chain: asc(0) < asc(1) < ... < desc(2) < desc(1) < top,
with values sharing a coordinate mutually incomparable.  Incomparable
simples merge to the mover's own member of their coordinate group.

An indifferent player does not care which opponent wins.  That collapses
every losing leaf into one symbol; comparisons run over the collapsed
trees with a symmetric structural clause (whole against every option),
which turns each coordinate group into an equality class of one chain.
"""

from __future__ import annotations

import enum
from typing import Callable, Iterable, NamedTuple, Optional

from .values import (
    GameValue,
    NormalizationProfile,
    SimpleValue,
    choice,
    leaf,
    normalize,
)


class Comparison(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "Comparison":
        if self is Comparison.LESS:
            return Comparison.GREATER
        if self is Comparison.GREATER:
            return Comparison.LESS
        return self


class OutcomeClass(enum.Enum):
    LOSS = 0
    MIXED = 1
    WIN = 2


class ChainError(RuntimeError):
    """A set of simples straddled chain coordinates; an internal bug."""


def outcome_class(v: GameValue, p: int) -> OutcomeClass:
    """Win, loss or mixed for player p."""
    return OutcomeClass(_class_rank(v, p))


def _class_rank(v: GameValue, p: int) -> int:
    outs = v.outcomes
    if p in outs:
        return 2 if len(outs) == 1 else 1
    return 0


def _prepare(v: GameValue, players: int = 3) -> GameValue:
    # Comparisons are defined on fully rewritten values.
    if players == 3 and v.outcomes <= {1, 2, 3}:
        return normalize(v, NormalizationProfile.L2, 3)
    return normalize(v, NormalizationProfile.L1, players)


# ---------------------------------------------------------------------------
# the selfish relation


_LEQ_CACHE: dict[tuple[GameValue, GameValue, int], bool] = {}


def _leq(x: GameValue, y: GameValue, p: int) -> bool:
    if x is y:
        return True
    cx = _class_rank(x, p)
    cy = _class_rank(y, p)
    if cx != cy:
        # Any derivable <= respects loss < mixed < win, so a class gap
        # settles the question in either direction.
        return cx < cy
    if x.children is None:
        return False
    key = (x, y, p)
    got = _LEQ_CACHE.get(key)
    if got is not None:
        return got
    _LEQ_CACHE[key] = False  # protects against nothing; keeps reentry cheap
    result = all(_leq(xi, y, p) for xi in x.children)
    if not result and y.children is not None:
        result = all(_leq(xi, yj, p) for xi in x.children for yj in y.children)
    _LEQ_CACHE[key] = result
    return result


def leq(x: GameValue, y: GameValue, p: int, base: str = "selfish", players: int = 3) -> bool:
    """Whether x <= y for player p under the selfish or indifferent base."""
    if base == "selfish":
        return _leq(_prepare(x, players), _prepare(y, players), p)
    if base == "indifferent":
        return _ext_leq(
            _quotient(_prepare(x, players), p), _quotient(_prepare(y, players), p)
        )
    raise ValueError(f"unknown comparison base {base!r}")


def compare(
    x: GameValue, y: GameValue, p: int, base: str = "selfish", players: int = 3
) -> Comparison:
    """Full comparison under the given base relation."""
    fwd = leq(x, y, p, base, players)
    bwd = leq(y, x, p, base, players)
    if fwd and bwd:
        return Comparison.EQUAL
    if fwd:
        return Comparison.LESS
    if bwd:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def _strict_less(x: GameValue, y: GameValue, p: int) -> bool:
    return _leq(x, y, p) and not _leq(y, x, p)


# ---------------------------------------------------------------------------
# the prudent relation


_PLESS_CACHE: dict[tuple[GameValue, GameValue, int], bool] = {}


def _pless(x: GameValue, y: GameValue, p: int) -> bool:
    if x is y:
        return False
    key = (x, y, p)
    got = _PLESS_CACHE.get(key)
    if got is not None:
        return got
    result = _strict_less(x, y, p)
    if not result and x.children is not None:
        result = _pless_options(x.children, (y,), p)
    if not result and y.children is not None:
        result = _pless_options((x,), y.children, p)
    if not result and x.children is not None and y.children is not None:
        result = _pless_options(x.children, y.children, p)
    _PLESS_CACHE[key] = result
    return result


def _pless_options(xs: tuple[GameValue, ...], ys: tuple[GameValue, ...], p: int) -> bool:
    # Every pairing weaker or incomparable, at least one strictly weaker.
    witness = False
    for xi in xs:
        for yj in ys:
            if _pless(xi, yj, p):
                witness = True
            elif _pless(yj, xi, p):
                return False
    return witness


def prudent_less(x: GameValue, y: GameValue, p: int) -> bool:
    """Whether a prudent player p discards x when y is available."""
    return _pless(_prepare(x), _prepare(y), p)


def prudent_incomparable(x: GameValue, y: GameValue, p: int) -> bool:
    """Neither value prudently below the other (equal values included)."""
    x = _prepare(x)
    y = _prepare(y)
    return not _pless(x, y, p) and not _pless(y, x, p)


def prudent_compare(x: GameValue, y: GameValue, p: int) -> Comparison:
    x = _prepare(x)
    y = _prepare(y)
    if x is y:
        return Comparison.EQUAL
    fwd = _pless(x, y, p)
    bwd = _pless(y, x, p)
    if fwd and not bwd:
        return Comparison.LESS
    if bwd and not fwd:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


# ---------------------------------------------------------------------------
# the closed form on simple values


class ChainCoordinate(NamedTuple):
    """Position of a simple value in the prudent chain for some player.

    kind "asc" coordinates rise with index, "desc" coordinates fall with
    index, every asc sits below every desc, and "top" beats everything.
    """

    kind: str
    index: int

    @property
    def sort_key(self) -> tuple[int, int]:
        if self.kind == "asc":
            return (0, self.index)
        if self.kind == "desc":
            return (1, -self.index)
        return (2, 0)


def chain_coordinate(s: SimpleValue, p: int) -> ChainCoordinate:
    """Where the simple value s sits in player p's prudent chain."""
    base, j = s
    if base == p:
        if j == 0:
            return ChainCoordinate("top", 0)
        if j % 2 == 1:
            return ChainCoordinate("asc", (j - 1) // 2)
        return ChainCoordinate("desc", j // 2)
    if j % 2 == 0:
        return ChainCoordinate("asc", j // 2)
    return ChainCoordinate("desc", (j + 1) // 2)


def simple_compare(a: SimpleValue, b: SimpleValue, p: int) -> Comparison:
    """Closed-form prudent comparison of two simple values."""
    a = SimpleValue(*a)
    b = SimpleValue(*b)
    if a == b:
        return Comparison.EQUAL
    ca = chain_coordinate(a, p)
    cb = chain_coordinate(b, p)
    if ca == cb:
        return Comparison.INCOMPARABLE
    return Comparison.LESS if ca.sort_key < cb.sort_key else Comparison.GREATER


def merge_incomparable_simples(simples: Iterable[SimpleValue], p: int) -> SimpleValue:
    """Collapse pairwise incomparable simples into one simple value.

    A singleton is its own merge.  A wider set must share one chain
    coordinate; the merge is player p's own member of that group: for
    asc(k) the value p_(2k+1), for desc(k) the value p_(2k).
    """
    got = {SimpleValue(*s) for s in simples}
    if not got:
        raise ValueError("cannot merge an empty set of simples")
    if len(got) == 1:
        return next(iter(got))
    coords = {chain_coordinate(s, p) for s in got}
    if len(coords) != 1:
        raise ChainError(f"simples {sorted(got)} span coordinates {sorted(coords)}")
    (coord,) = coords
    if coord.kind == "asc":
        return SimpleValue(p, 2 * coord.index + 1)
    if coord.kind == "desc":
        return SimpleValue(p, 2 * coord.index)
    raise ChainError("two distinct simples cannot both sit at the top")


_PSIMP_CACHE: dict[tuple[GameValue, int], SimpleValue] = {}


def prudent_simplify(v: GameValue, mover: int) -> SimpleValue:
    """Collapse a value tree to the one simple value prudent play reaches.

    The mover owns the top-level choice and the turn rotates one player
    per level down; a singleton level is a pass and is absorbed.  At
    each choice the options collapse recursively, the mover keeps the
    ones at the best chain coordinate, and the survivors merge.  This is
    the value-space twin of the board evaluator's prudent mode, for
    three players only.  Wrapper levels carry turn information here, so
    the caller should not collapse singletons (rule 1) beforehand.
    """
    if not 1 <= mover <= 3:
        raise ValueError(f"mover {mover} out of range for three players")
    if not v.outcomes <= {1, 2, 3}:
        raise ValueError("prudent simplification is defined for three players")
    if v.children is None:
        return SimpleValue(v.winner, 0)
    key = (v, mover)
    got = _PSIMP_CACHE.get(key)
    if got is None:
        after = mover % 3 + 1
        if len(v.children) == 1:
            got = prudent_simplify(v.children[0], after)
        else:
            options = {prudent_simplify(c, after) for c in v.children}
            best = max(chain_coordinate(s, mover).sort_key for s in options)
            kept = {s for s in options if chain_coordinate(s, mover).sort_key == best}
            got = merge_incomparable_simples(kept, mover)
        _PSIMP_CACHE[key] = got
    return got


# ---------------------------------------------------------------------------
# the indifferent relation, over loss-collapsed trees


_WIN = 1
_LOSS = 2

_QUOT_CACHE: dict[tuple[GameValue, int], GameValue] = {}


def _quotient(v: GameValue, p: int) -> GameValue:
    """Relabel leaves to p's eye: own wins stay 1, every loss becomes 2.

    Collapsing makes sibling losses merge, so the result is again
    canonical and all downstream comparisons can fix perspective 1.
    """
    if v.children is None:
        return leaf(_WIN) if v.winner == p else leaf(_LOSS)
    key = (v, p)
    got = _QUOT_CACHE.get(key)
    if got is None:
        got = choice(_quotient(c, p) for c in v.children)
        _QUOT_CACHE[key] = got
    return got


_EXT_CACHE: dict[tuple[GameValue, GameValue], bool] = {}


def _ext_leq(x: GameValue, y: GameValue) -> bool:
    # The selfish clauses plus the mirrored one: x below every option of
    # y also puts x below y.  Without it, wrappers block the equalities
    # an indifferent player is supposed to see.
    if x is y:
        return True
    cx = _class_rank(x, _WIN)
    cy = _class_rank(y, _WIN)
    if cx != cy:
        return cx < cy
    if x.children is None and y.children is None:
        return False
    key = (x, y)
    got = _EXT_CACHE.get(key)
    if got is not None:
        return got
    result = False
    if x.children is not None:
        result = all(_ext_leq(xi, y) for xi in x.children)
    if not result and y.children is not None:
        result = all(_ext_leq(x, yj) for yj in y.children)
    if not result and x.children is not None and y.children is not None:
        result = all(_ext_leq(xi, yj) for xi in x.children for yj in y.children)
    _EXT_CACHE[key] = result
    return result


def _indifferent_strict(x: GameValue, y: GameValue, p: int) -> bool:
    qx = _quotient(x, p)
    qy = _quotient(y, p)
    return _ext_leq(qx, qy) and not _ext_leq(qy, qx)


def _indifferent_equal(x: GameValue, y: GameValue, p: int) -> bool:
    qx = _quotient(x, p)
    qy = _quotient(y, p)
    return _ext_leq(qx, qy) and _ext_leq(qy, qx)


def _ladder_step(prev_tier: GameValue, prev_mine: GameValue) -> GameValue:
    # Next loss tier: an option into the mover's tier and one staying put.
    return choice((prev_mine, prev_tier))


def indifferent_class(
    v: GameValue, p: int, max_exponent: int
) -> Optional[tuple[bool, int]]:
    """Name the equality class of v for an indifferent player p.

    Returns (True, 0) for a guaranteed win.  Other classes form one
    ladder; (False, j) means the class of an opposing simple value with
    exponent j (which also contains p's own simple of exponent j+1,
    since collapsing losses makes their trees literally identical).
    Returns None if no tier up to max_exponent matches, which evaluation
    of a three-player game can never produce.
    """
    q = _quotient(_prepare(v), p)
    win = leaf(_WIN)
    if _ext_leq(q, win) and _ext_leq(win, q):
        return (True, 0)
    tier = leaf(_LOSS)  # an opposing leaf: exponent 0
    mine = win
    for j in range(max_exponent + 1):
        if _ext_leq(q, tier) and _ext_leq(tier, q):
            return (False, j)
        mine, tier = tier, _ladder_step(tier, mine)
    return None


# ---------------------------------------------------------------------------
# pruning dominated options


def prune(
    options: Iterable[GameValue], p: int, mode: str = "selfish", players: int = 3
) -> set[GameValue]:
    """Drop options a player of the given mode would never pick.

    Keeps every option not strictly below another; never returns an
    empty set.  In indifferent mode, options the player cannot tell
    apart additionally collapse to one representative.
    """
    opts = set(options)
    if not opts:
        raise ValueError("cannot prune an empty set of options")
    if mode == "selfish":
        strict: Callable[[GameValue, GameValue], bool] = lambda a, b: _strict_less(a, b, p)
    elif mode == "prudent":
        strict = lambda a, b: _pless(a, b, p)
    elif mode == "indifferent":
        strict = lambda a, b: _indifferent_strict(a, b, p)
    else:
        raise ValueError(f"unknown preference mode {mode!r}")
    # Compare through fully rewritten proxies, but keep the options as
    # given: the caller owns their presentation.
    proxy = {v: _prepare(v, players) for v in opts}
    survivors = {
        v
        for v in opts
        if not any(strict(proxy[v], proxy[w]) for w in opts if proxy[w] is not proxy[v])
    }
    if not survivors:
        # A dominance cycle; the relations are not proven acyclic, so
        # refuse to invent a choice and keep everything.
        survivors = opts
    if mode == "indifferent" and len(survivors) > 1:
        merged: list[GameValue] = []
        for v in sorted(survivors, key=lambda v: v.text):
            if not any(_indifferent_equal(proxy[v], proxy[rep], p) for rep in merged):
                merged.append(v)
        survivors = set(merged)
    return survivors


def clear_caches() -> None:
    """Drop memoized comparison results."""
    _LEQ_CACHE.clear()
    _PLESS_CACHE.clear()
    _QUOT_CACHE.clear()
    _EXT_CACHE.clear()
    _PSIMP_CACHE.clear()
    _EXT_CACHE.clear()
