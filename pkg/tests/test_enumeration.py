"""Board generation, closed-form counting, censuses, and calibration."""

import itertools
import json

import pytest

from nclobber.enumeration import (
    PUBLISHED_COUNTS,
    REGIMES,
    BoardFilter,
    board_passes,
    build_table,
    calibrate_normalization,
    conservative_splice,
    count_boards,
    enumerate_values,
    generate_boards,
    render_reports,
)
from nclobber.values import NormalizationProfile, parse_value

ALL_ON = BoardFilter()
NO_MIRROR = BoardFilter(mirror_canonical=False)


# ---------------------------------------------------------------------------
# board generation and the closed-form count


def test_generate_boards_golden_n2():
    assert list(generate_boards(2)) == ["21", "31", "32"]
    assert list(generate_boards(2, BoardFilter(movable=False))) == [
        "11", "21", "22", "31", "32", "33",
    ]


def test_generated_boards_are_sorted_and_pass_their_own_filter():
    for n in (3, 4, 5, 6):
        for flt in (ALL_ON, NO_MIRROR, BoardFilter(movable=False)):
            boards = list(generate_boards(n, flt))
            assert boards == sorted(boards)
            assert len(set(boards)) == len(boards)
            assert all(board_passes(b, flt) for b in boards)


def test_board_passes_agrees_with_exhaustive_generation():
    for n in (2, 3, 4, 5):
        generated = set(generate_boards(n))
        brute = {
            "".join(cells)
            for cells in itertools.product("0123", repeat=n)
            if board_passes("".join(cells), ALL_ON)
        }
        assert generated == brute


def test_filters_have_the_advertised_meanings():
    wide_open = BoardFilter(
        no_edge_zeros=False,
        no_double_zeros=False,
        mirror_canonical=False,
        movable=False,
    )
    assert count_boards(2, wide_open) == 16  # all strings over 0..3
    assert not board_passes("012", ALL_ON)  # leading zero
    assert not board_passes("1002", BoardFilter(no_edge_zeros=False))
    assert not board_passes("12", BoardFilter())  # mirror: "12" < "21"
    assert board_passes("12", NO_MIRROR)
    assert not board_passes("11", ALL_ON)  # no move available
    assert not board_passes("142", ALL_ON)  # token above the player count


def test_mirror_filter_keeps_one_board_per_reflection_pair():
    for n in (2, 3, 4, 5):
        full = set(generate_boards(n, NO_MIRROR))
        kept = set(generate_boards(n))
        assert kept == {b for b in full if b >= b[::-1]}
        assert {min(b, b[::-1]) for b in full} == {
            min(b, b[::-1]) for b in kept
        }


def test_count_boards_matches_the_generator():
    for n in range(2, 9):
        for flt in (ALL_ON, NO_MIRROR, BoardFilter(movable=False)):
            assert count_boards(n, flt) == sum(1 for _ in generate_boards(n, flt))


def test_count_boards_matches_the_reference_through_n12():
    for n in range(2, 13):
        assert count_boards(n) == PUBLISHED_COUNTS["games"][n], n


def test_games_analysed_n13_diagnosis():
    """The reference's n=13 row was produced without the movability
    filter; with uniform semantics the count lands 21519 lower.  See
    reports/games_analysed_n13.md."""
    assert count_boards(13) == 10927980
    assert count_boards(13, BoardFilter(movable=False)) == 10949499
    assert PUBLISHED_COUNTS["games"][13] == 10949499


# ---------------------------------------------------------------------------
# censuses


def test_census_n2_by_hand():
    report = enumerate_values(2)
    assert report.board_length == 2
    assert report.games_analysed == 3
    assert report.unique_values == {
        "unsimplified": 2, "syntactic": 2, "selfish": 2, "prudent": 2,
    }
    assert report.value_inventory["unsimplified"] == ("1", "2")
    assert report.value_inventory["prudent"] == ("1", "2")


def test_census_small_lengths_match_the_reference():
    for n in (3, 4, 5, 6):
        report = enumerate_values(n)
        assert report.games_analysed == PUBLISHED_COUNTS["games"][n]
        for mode in ("unsimplified", "selfish", "prudent"):
            assert report.unique_values[mode] == PUBLISHED_COUNTS[mode][n], (
                n,
                mode,
            )


def test_prudent_census_n4_contains_1_bar_but_not_2_bar():
    inventory = enumerate_values(4, ("prudent",)).value_inventory["prudent"]
    assert "1_1" in inventory
    assert "2_1" not in inventory


def test_worker_count_does_not_change_the_report():
    alone = enumerate_values(6, workers=1)
    split = enumerate_values(6, workers=3)
    assert alone == split


def test_census_argument_validation():
    with pytest.raises(ValueError):
        enumerate_values(4, ("bogus",))
    with pytest.raises(ValueError):
        enumerate_values(4, ("selfish", "selfish"))
    with pytest.raises(ValueError):
        enumerate_values(4, ("prudent",), players=4)
    with pytest.raises(ValueError):
        build_table(1)


def test_inventory_strings_parse_back_to_distinct_values():
    report = enumerate_values(5)
    for mode in ("unsimplified", "syntactic", "selfish"):
        texts = report.value_inventory[mode]
        parsed = {parse_value(t) for t in texts}
        assert len(parsed) == len(texts)


# ---------------------------------------------------------------------------
# serialization


def test_render_reports_csv_golden():
    reports = [enumerate_values(n, ("unsimplified", "prudent")) for n in (2, 3)]
    got = render_reports(reports, "csv")
    assert got == (
        "n,games,unsimplified,prudent\n2,3,2,2\n3,15,3,3"
    )


def test_render_reports_json_round_trip():
    reports = [enumerate_values(4)]
    payload = json.loads(render_reports(reports, "json"))
    assert payload[0]["board_length"] == 4
    assert payload[0]["games_analysed"] == 60
    assert payload[0]["unique_values"]["prudent"] == 4
    for text in payload[0]["inventory"]["selfish"]:
        parse_value(text)  # every inventory entry is readable


def test_render_reports_rejects_unknown_format():
    with pytest.raises(ValueError):
        render_reports([enumerate_values(2)], "xml")


# ---------------------------------------------------------------------------
# the conservative splice diagnostic


def test_conservative_splice_drops_redundant_wrapped_options():
    assert conservative_splice(parse_value("[1,2,[[[1,2]]]]")) is parse_value(
        "[1,2]"
    )


def test_conservative_splice_splices_supersets():
    assert conservative_splice(parse_value("[1,[[[1,2]]]]")) is parse_value(
        "[1,2]"
    )


def test_conservative_splice_keeps_incomparable_hosts():
    v = parse_value("[3,[[[1,2]]]]")
    assert conservative_splice(v) is v


def test_conservative_splice_fixes_the_1x10_value():
    from helpers import VALUE_1232132321

    v = parse_value(VALUE_1232132321)
    assert conservative_splice(v) is v


# ---------------------------------------------------------------------------
# calibration


def test_calibration_smoke_over_short_lengths():
    result = calibrate_normalization(range(2, 7))
    assert result.n_range == (2, 3, 4, 5, 6)
    assert result.matches["selfish"] is NormalizationProfile.L1
    assert result.matches["syntactic"] is NormalizationProfile.L1
    assert result.chosen_profile is NormalizationProfile.L1
    assert result.report == ""
    assert result.counts["selfish"]["published"][6] == 7
    assert result.counts["syntactic"]["conservative"][6] == 77


def test_calibration_rejects_bad_ranges():
    with pytest.raises(ValueError):
        calibrate_normalization(range(0, 3))
    with pytest.raises(ValueError):
        calibrate_normalization([])
