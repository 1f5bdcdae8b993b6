"""
Tests for bidirectional ballot sequences.

Claims checked:
    - is_bbs agrees with the prefix/suffix definition and the path extrema
    - enumeration is lexicographic and every word starts and ends with 1
    - the strip DP matches the brute-force oracle
    - counts are monotone (append-one injection)
    - BBS-derived sets have full sumsets and difference sets
    - ratio n B_n / 2^n is exact
"""

from fractions import Fraction
from itertools import pairwise, product

import pytest

from ballotope.core.exceptions import CapExceededError, ParseError, PreconditionError
from ballotope.core.models import BitSequence, HeightPath
from ballotope.core.sequences import (
    append_one,
    bbs_to_path,
    count_bbs,
    count_bbs_brute,
    count_bbs_table,
    enumerate_bbs,
    has_strict_endpoint_extrema,
    is_bbs,
    path_to_bbs,
    ratio,
    ratio_table,
    sumset_fullness,
)

KNOWN_COUNTS = {1: 1, 2: 1, 3: 1, 4: 1, 5: 2, 6: 3, 7: 5, 9: 15}


def _by_definition(word: str) -> bool:
    n = len(word)
    prefixes = all(word[:k].count("1") > word[:k].count("0") for k in range(1, n + 1))
    suffixes = all(word[k:].count("1") > word[k:].count("0") for k in range(n))
    return prefixes and suffixes


class TestPredicate:
    @pytest.mark.parametrize(
        ("bits", "expected"),
        [
            ("11011001111", True),
            ("110111011", True),
            ("1", True),
            ("10", False),
            ("11", True),
            ("1101", False),
            ("0111", False),
        ],
    )
    def test_examples(self, bits, expected):
        assert is_bbs(bits) is expected

    @pytest.mark.parametrize("n", range(1, 11))
    def test_matches_definition(self, n):
        for word in product("01", repeat=n):
            w = "".join(word)
            assert is_bbs(w) == _by_definition(w)

    def test_rejects_foreign_characters(self):
        with pytest.raises(ParseError, match="position 3"):
            is_bbs("11a1")


class TestPaths:
    def test_worked_path(self):
        path = bbs_to_path("11011001111")
        assert path.heights == (0, 1, 2, 1, 2, 3, 2, 1, 2, 3, 4, 5)
        assert has_strict_endpoint_extrema(path)

    @pytest.mark.parametrize(("bits", "heights"), [("1", (0, 1)), ("10", (0, 1, 0))])
    def test_small_paths(self, bits, heights):
        assert bbs_to_path(bits).heights == heights

    def test_path_to_bbs_inverts(self):
        assert str(path_to_bbs(bbs_to_path("1101001"))) == "1101001"

    def test_bad_path_rejected(self):
        with pytest.raises(PreconditionError):
            HeightPath((0, 2))
        with pytest.raises(PreconditionError):
            path_to_bbs(HeightPath((0,)))


class TestEnumeration:
    def test_length_one(self):
        assert [str(b) for b in enumerate_bbs(1)] == ["1"]

    def test_length_five(self):
        assert [str(b) for b in enumerate_bbs(5)] == ["11011", "11111"]

    def test_length_seven(self):
        assert [str(b) for b in enumerate_bbs(7)] == [
            "1101011",
            "1101111",
            "1110111",
            "1111011",
            "1111111",
        ]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_words_start_and_end_with_one(self, n):
        for b in enumerate_bbs(n):
            assert b.at(1) == 1 and b.at(n) == 1

    def test_threads_do_not_change_result(self):
        assert enumerate_bbs(17, threads=4) == enumerate_bbs(17, threads=1)

    def test_cap_is_enforced(self):
        with pytest.raises(CapExceededError, match="brute cap 10"):
            enumerate_bbs(11, cap=10)


class TestCounting:
    @pytest.mark.parametrize(("n", "expected"), sorted(KNOWN_COUNTS.items()))
    def test_known_counts(self, n, expected):
        assert count_bbs(n) == expected
        assert count_bbs_brute(n) == expected

    @pytest.mark.parametrize("n", range(1, 15))
    def test_dp_matches_brute(self, n):
        assert count_bbs(n) == count_bbs_brute(n)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(15, 19))
    def test_dp_matches_brute_large(self, n):
        assert count_bbs(n) == count_bbs_brute(n, threads=2)

    def test_table_matches_single_counts(self):
        table = count_bbs_table(40)
        assert len(table) == 40
        assert table == [count_bbs(n) for n in range(1, 41)]

    def test_monotone(self):
        table = count_bbs_table(200)
        assert all(b >= a for a, b in zip(table, table[1:], strict=False))

    @pytest.mark.slow
    def test_big_counts_are_exact(self):
        value = count_bbs(500)
        assert isinstance(value, int)
        assert value == count_bbs_table(500)[-1]

    def test_append_one_keeps_bbs(self):
        for n in range(1, 12):
            for b in enumerate_bbs(n):
                assert is_bbs(append_one(b))
                assert len(append_one(b)) == n + 1

    def test_invalid_n(self):
        with pytest.raises(PreconditionError):
            count_bbs(0)


class TestSumset:
    def test_full_interval(self):
        report = sumset_fullness("111")
        assert report.sumset_full and report.diffset_full
        assert report.sumset == frozenset(range(2, 7))

    def test_worked_set(self):
        report = sumset_fullness("11011")
        assert BitSequence.parse("11011").ones() == frozenset({1, 2, 4, 5})
        assert report.sumset_full and report.diffset_full

    def test_not_full(self):
        report = sumset_fullness("10")
        assert not report.sumset_full
        assert report.sumset == frozenset({2})

    @pytest.mark.parametrize("n", range(1, 13))
    def test_every_bbs_is_full(self, n):
        for b in enumerate_bbs(n):
            report = sumset_fullness(b)
            assert report.sumset_full and report.diffset_full


class TestRatio:
    def test_exact_values(self):
        assert ratio(7) == Fraction(35, 128)
        assert ratio(1) == Fraction(1, 2)

    def test_band_at_one_hundred(self):
        assert Fraction(1, 4) < ratio(100) <= Fraction(51, 200)

    def test_decreases_towards_one_quarter(self):
        table = dict(ratio_table(100, 200))
        grid = [table[n] for n in range(100, 201, 10)]
        assert all(a > b for a, b in pairwise(grid))
        assert grid[-1] > Fraction(1, 4)
        assert grid[-1] < Fraction(2511, 10000)

    def test_table(self):
        rows = ratio_table(5, 7)
        assert rows == [(5, Fraction(10, 32)), (6, Fraction(18, 64)), (7, Fraction(35, 128))]

    def test_table_bounds(self):
        with pytest.raises(PreconditionError):
            ratio_table(10, 5)
