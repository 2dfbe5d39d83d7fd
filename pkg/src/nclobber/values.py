"""Game values for N-player normal-play games.

A value is either a leaf, naming the player who made the last move and
therefore wins, or a choice node listing the values the player to move
can reach.  Choice nodes behave like sets: order does not matter and
duplicates collapse.  A choice with a single leaf option is identified
with that leaf (the mover has no real decision about the winner), but a
singleton around a wider choice is kept, because it shifts whose turn it
is when the inner decision is made.  [1,3] and [[1,3]] are different
values; [[[3]]] and 3 are the same.

Values are interned: structurally equal trees are the same object, so
equality is identity and sets and cache keys stay cheap.  Construction
always canonicalizes (sorts children, drops duplicates, collapses leaf
singletons).  Children sort in the lexicographic order of their printed
forms, so rendering a canonical value reproduces reference printouts
byte for byte; the printed form is cached on the node as `text`.

On top of the raw trees live three rewrite rules that preserve outcome
structure for an N-player game:

* rule2 removes N nested singleton wrappers around any value,
* rule3 splices a list wrapped in N-1 singletons into its host list,
* rule1 drops a singleton wrapper around a simple value (3 players).

Simple values are the family written ``a_i`` (bar notation): ``a_0`` is
the leaf ``a`` and ``a_{i+1}`` is the choice between the other two
players' values at exponent ``i``.  ``1_1`` is [2,3], ``1_2`` is
[[1,3],[1,2]] and so on.
"""

from __future__ import annotations

import enum
from typing import Iterable, NamedTuple, Optional


class ValueSyntaxError(ValueError):
    """Raised when a value string cannot be parsed."""


class SimpleValue(NamedTuple):
    """The simple value base_exponent, e.g. SimpleValue(1, 2) for 1_2."""

    base: int
    exponent: int

    def __str__(self) -> str:
        return str(self.base) if self.exponent == 0 else f"{self.base}_{self.exponent}"


class NormalizationProfile(enum.IntEnum):
    """How aggressively values are rewritten.

    L0 only canonicalizes (dedup, sort, leaf-singleton collapse).
    L1 adds rule2 and rule3, the wrapper-count rewrites.
    L2 adds rule1, identifying [x] with x for simple x.
    """

    L0 = 0
    L1 = 1
    L2 = 2


# Pinned by the calibration experiment against the published unique-value
# counts over board lengths 2..9: the selfish column matches L1 exactly on
# every length and L2 on none past 6 (see enumeration.calibrate_normalization
# and reports/syntactic_discrepancy.md for the full grading).
DEFAULT_PROFILE = NormalizationProfile.L1


class GameValue:
    """An interned game value tree.  Use leaf() and choice() to build."""

    __slots__ = ("winner", "children", "outcomes", "text", "_hash", "_simple")

    winner: Optional[int]
    children: Optional[tuple["GameValue", ...]]
    outcomes: frozenset[int]
    text: str

    def __init__(self, winner, children, outcomes, text):
        self.winner = winner
        self.children = children
        self.outcomes = outcomes
        self.text = text
        self._hash = hash(text)
        self._simple = _UNRESOLVED

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def __hash__(self) -> int:
        return self._hash

    # Interning makes structural equality identity equality; the default
    # object __eq__ is exactly right.

    def __repr__(self) -> str:
        return render_value(self)

    def __reduce__(self):
        return (_rebuild_value, (render_value(self),))


_UNRESOLVED = object()
_LEAVES: dict[int, GameValue] = {}
_CHOICES: dict[tuple[GameValue, ...], GameValue] = {}


def _rebuild_value(text: str) -> GameValue:
    return parse_value(text, players=9)


def leaf(winner: int) -> GameValue:
    """The value of a finished game won by `winner`."""
    got = _LEAVES.get(winner)
    if got is not None:
        return got
    if not isinstance(winner, int) or winner < 1:
        raise ValueError(f"leaf winner must be a positive player id, got {winner!r}")
    v = GameValue(winner, None, frozenset((winner,)), str(winner))
    _LEAVES[winner] = v
    return v


def choice(options: Iterable[GameValue]) -> GameValue:
    """The value of a position whose mover can reach the given values."""
    uniq = set(options)
    if not uniq:
        raise ValueError("a choice needs at least one option")
    if len(uniq) == 1:
        (only,) = uniq
        if only.children is None:
            return only
    kids = tuple(sorted(uniq, key=lambda v: v.text))
    got = _CHOICES.get(kids)
    if got is not None:
        return got
    outcomes = frozenset().union(*(c.outcomes for c in kids))
    text = "[" + ",".join(c.text for c in kids) + "]"
    v = GameValue(None, kids, outcomes, text)
    _CHOICES[kids] = v
    return v


def canonicalize(v: GameValue) -> GameValue:
    """Rebuild a value bottom-up; identity on anything built by choice()."""
    if v.children is None:
        return v
    return choice(canonicalize(c) for c in v.children)


def contains(v: GameValue, w: GameValue) -> bool:
    """True when w occurs in v, including v itself."""
    if v is w:
        return True
    if v.children is None:
        return False
    return any(contains(c, w) for c in v.children)


def outcome_set(v: GameValue) -> frozenset[int]:
    """The set of players that win some leaf of v."""
    return v.outcomes


# ---------------------------------------------------------------------------
# rewrite rules


def _unwrap_exact(v: GameValue, levels: int) -> Optional[GameValue]:
    """Strip exactly `levels` singleton choice wrappers, else None."""
    cur = v
    for _ in range(levels):
        if cur.children is None or len(cur.children) != 1:
            return None
        cur = cur.children[0]
    return cur


def rule2(v: GameValue, players: int = 3) -> GameValue:
    """Collapse `players` nested singleton wrappers, one bottom-up sweep."""
    if v.children is None:
        return v
    node = choice(rule2(c, players) for c in v.children)
    inner = _unwrap_exact(node, players)
    return node if inner is None else inner


def rule3(v: GameValue, players: int = 3) -> GameValue:
    """Splice (players-1)-deep singleton-wrapped lists into their host list."""
    if v.children is None:
        return v
    kids = [rule3(c, players) for c in v.children]
    out: list[GameValue] = []
    for c in kids:
        mid = _unwrap_exact(c, players - 1)
        if mid is not None and mid.children is not None:
            out.extend(mid.children)
        else:
            out.append(c)
    return choice(out)


def rule1(v: GameValue) -> GameValue:
    """Drop singleton wrappers around simple values, one bottom-up sweep."""
    if v.children is None:
        return v
    node = choice(rule1(c) for c in v.children)
    if node.children is not None and len(node.children) == 1:
        only = node.children[0]
        if match_simple(only) is not None:
            return only
    return node


_NORMAL_CACHE: dict[tuple[GameValue, int, int], GameValue] = {}


def normalize(
    v: GameValue,
    profile: NormalizationProfile = DEFAULT_PROFILE,
    players: int = 3,
) -> GameValue:
    """Rewrite v to its fixed point under the profile's rules.

    Rules are applied bottom-up, at each node in the order rule2, rule3,
    then (at L2) rule1, until nothing changes.  The result is idempotent
    and has the same outcome set as v.
    """
    if profile == NormalizationProfile.L2 and players != 3:
        raise ValueError("rule1 needs simple values, which are defined for 3 players")
    if v.children is None:
        return v
    key = (v, int(profile), players)
    got = _NORMAL_CACHE.get(key)
    if got is not None:
        return got
    node = choice(normalize(c, profile, players) for c in v.children)
    if profile >= NormalizationProfile.L1:
        while node.children is not None:
            inner = _unwrap_exact(node, players)
            if inner is not None:
                node = inner
                continue
            spliced: list[GameValue] = []
            changed = False
            for c in node.children:
                mid = _unwrap_exact(c, players - 1)
                if mid is not None and mid.children is not None:
                    spliced.extend(mid.children)
                    changed = True
                else:
                    spliced.append(c)
            if changed:
                node = choice(spliced)
                continue
            if profile == NormalizationProfile.L2 and len(node.children) == 1:
                only = node.children[0]
                if match_simple(only) is not None:
                    node = only
                    continue
            break
    _NORMAL_CACHE[key] = node
    return node


# ---------------------------------------------------------------------------
# simple (bar) values


_EXPANSIONS: dict[SimpleValue, GameValue] = {}


def expand_simple(s: SimpleValue) -> GameValue:
    """The game value written s.base with s.exponent bars (3 players)."""
    s = SimpleValue(*s)
    if s.base not in (1, 2, 3):
        raise ValueError(f"simple values are defined for players 1..3, got base {s.base}")
    if s.exponent < 0:
        raise ValueError("simple value exponent must be >= 0")
    got = _EXPANSIONS.get(s)
    if got is not None:
        return got
    if s.exponent == 0:
        v = leaf(s.base)
    else:
        others = [b for b in (1, 2, 3) if b != s.base]
        v = choice(expand_simple(SimpleValue(b, s.exponent - 1)) for b in others)
    _EXPANSIONS[s] = v
    return v


def match_simple(v: GameValue) -> Optional[SimpleValue]:
    """The SimpleValue whose expansion is v, or None.

    Leaves match with exponent 0.  A two-option choice matches when both
    options are simple with the same exponent and distinct bases in
    {1,2,3}; the match is then the third player, one exponent up.
    """
    cached = v._simple
    if cached is not _UNRESOLVED:
        return cached
    result: Optional[SimpleValue] = None
    if v.children is None:
        result = SimpleValue(v.winner, 0)
    elif len(v.children) == 2:
        m1 = match_simple(v.children[0])
        m2 = match_simple(v.children[1])
        if (
            m1 is not None
            and m2 is not None
            and m1.exponent == m2.exponent
            and m1.base != m2.base
            and {m1.base, m2.base} <= {1, 2, 3}
        ):
            result = SimpleValue(6 - m1.base - m2.base, m1.exponent + 1)
    v._simple = result
    return result


# ---------------------------------------------------------------------------
# text form: digits, brackets, and bar atoms like 2_1


def parse_value(text: str, players: int = 3) -> GameValue:
    """Parse a value string.

    Grammar: value = atom | '[' value (',' value)* ']'; an atom is a
    player digit, optionally followed by '_' and an exponent, which
    denotes the expansion of that simple value.  Whitespace is ignored.
    The parsed tree is canonicalized.
    """
    s = text
    n = len(s)
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def fail(msg: str) -> ValueSyntaxError:
        return ValueSyntaxError(f"{msg} at offset {pos} in {text!r}")

    def parse_one() -> GameValue:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise fail("unexpected end of input")
        ch = s[pos]
        if ch == "[":
            pos += 1
            items = [parse_one()]
            skip_ws()
            while pos < n and s[pos] == ",":
                pos += 1
                items.append(parse_one())
                skip_ws()
            if pos >= n or s[pos] != "]":
                raise fail("expected ',' or ']'")
            pos += 1
            return choice(items)
        if ch.isdigit():
            base = int(ch)
            if base == 0 or base > players:
                raise fail(f"player digit must be 1..{players}")
            pos += 1
            if pos < n and s[pos] == "_":
                pos += 1
                start = pos
                while pos < n and s[pos].isdigit():
                    pos += 1
                if start == pos:
                    raise fail("expected an exponent after '_'")
                exponent = int(s[start:pos])
                if exponent > 0 and players != 3:
                    raise fail("bar values need a 3-player game")
                if exponent == 0:
                    return leaf(base)
                return expand_simple(SimpleValue(base, exponent))
            return leaf(base)
        raise fail(f"unexpected character {ch!r}")

    v = parse_one()
    skip_ws()
    if pos != n:
        raise fail("trailing input")
    return v


def render_value(v: GameValue, style: str = "brackets") -> str:
    """Serialize a value; parse_value inverts this.

    style "brackets" prints the raw tree.  style "bar" prints simple
    subtrees as base_exponent atoms and falls back to brackets around
    non-simple nodes.
    """
    if style == "brackets":
        return v.text
    if style == "bar":
        m = match_simple(v)
        if m is not None:
            return str(m)
        return "[" + ",".join(render_value(c, "bar") for c in v.children) + "]"
    raise ValueError(f"unknown render style {style!r}")


def clear_caches() -> None:
    """Drop memoized normalization results (interned values stay)."""
    _NORMAL_CACHE.clear()
