"""Catalog loading, target code parsing, and ordering."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from sdgraph import (
    CatalogError,
    TargetCode,
    load_catalog,
    load_catalog_text,
    parse_target_code,
    targets_for_goals,
)

from edgesets import T


HEADER = "goal_id,target_code,goal_name,description\n"


def catalog_text(*rows: str) -> str:
    return HEADER + "".join(row + "\n" for row in rows)


class TestParseTargetCode:
    def test_numeric(self):
        code = parse_target_code("13.1")
        assert code.goal == 13
        assert code.suffix == 1

    def test_letter_canonicalized_to_upper(self):
        assert parse_target_code("16.b") == TargetCode(16, "B")

    def test_multidigit_suffix(self):
        assert parse_target_code("17.15") == TargetCode(17, 15)

    @pytest.mark.parametrize("bad", ["18.1", "0.5", "13", "13.", ".1", "13.1.2", "x.1", "13.!", "13.AB"])
    def test_malformed(self, bad):
        with pytest.raises(CatalogError):
            parse_target_code(bad)

    def test_goal_out_of_range_message(self):
        with pytest.raises(CatalogError, match="1..17"):
            parse_target_code("18.1")


codes = st.builds(
    TargetCode,
    goal=st.integers(min_value=1, max_value=17),
    suffix=st.one_of(st.integers(min_value=1, max_value=99),
                     st.sampled_from("ABCDEFG")),
)


class TestOrdering:
    def test_numeric_before_letters_within_goal(self):
        assert T("13.1") < T("13.3") < T("13.A") < T("13.B")

    def test_goal_dominates(self):
        assert T("9.C") < T("10.1")

    @given(codes, codes)
    def test_strict_total_order(self, a, b):
        # Exactly one of <, ==, > holds.
        assert (a < b) + (a == b) + (b < a) == 1

    @given(codes, codes, codes)
    def test_transitive(self, a, b, c):
        if a < b and b < c:
            assert a < c

    @given(codes)
    def test_format_parse_round_trip(self, code):
        assert parse_target_code(str(code)) == code


class TestOfficialCatalog:
    def test_counts(self, official):
        assert len(official) == 169
        assert len(official.goals) == 17

    def test_codes_unique(self, official):
        assert len(set(official.codes)) == 169

    def test_round_trip_every_code(self, official):
        for code in official.codes:
            assert parse_target_code(str(code)) == code

    def test_all_goals_cover_every_target_once(self, official):
        everything = targets_for_goals(official, range(1, 18))
        assert len(everything) == 169
        assert set(t.code for t in everything) == set(official.codes)

    def test_goal_13_count_matches_raw_rows(self, official, official_csv_text):
        # Oracle: count CSV lines for the goal directly.
        raw = sum(1 for line in official_csv_text.splitlines()[1:] if line.startswith("13,"))
        assert len(targets_for_goals(official, {13})) == raw == 5

    def test_goals_1_2_match_filter_sort_oracle(self, official):
        chosen = targets_for_goals(official, {1, 2})
        oracle = sorted(
            (t for t in official.targets if t.code.goal in (1, 2)),
            key=lambda t: t.code.sort_key,
        )
        assert chosen == oracle


class TestLoadCatalog:
    def test_minimal(self):
        catalog = load_catalog_text(catalog_text(
            '1,1.1,No Poverty,End poverty',
            '1,1.2,No Poverty,Social protection',
        ))
        assert len(catalog) == 2
        assert catalog.goal(1).name == "No Poverty"

    def test_row_order_preserved(self):
        catalog = load_catalog_text(catalog_text(
            '1,1.2,No Poverty,Second first',
            '1,1.1,No Poverty,First second',
        ))
        assert [str(t.code) for t in catalog.targets] == ["1.2", "1.1"]

    def test_empty_file_rejected(self):
        with pytest.raises(CatalogError, match="no targets"):
            load_catalog_text(HEADER)

    def test_duplicate_code_names_the_duplicate(self):
        with pytest.raises(CatalogError, match=r"row 3.*1\.1"):
            load_catalog_text(catalog_text(
                '1,1.1,No Poverty,End poverty',
                '1,1.1,No Poverty,Again',
            ))

    def test_empty_description_rejected_with_row(self):
        with pytest.raises(CatalogError, match="row 2"):
            load_catalog_text(catalog_text('1,1.1,No Poverty,'))

    def test_code_must_match_goal_column(self):
        with pytest.raises(CatalogError, match="row 2"):
            load_catalog_text(catalog_text('2,1.1,Zero Hunger,Mismatch'))

    def test_conflicting_goal_names_rejected(self):
        with pytest.raises(CatalogError, match="row 3"):
            load_catalog_text(catalog_text(
                '1,1.1,No Poverty,End poverty',
                '1,1.2,Poverty Zero,Other name',
            ))

    def test_missing_header_rejected(self):
        with pytest.raises(CatalogError, match="header"):
            load_catalog_text("a,b\n1,2\n")

    def test_load_from_path(self, tmp_path):
        path = tmp_path / "cat.csv"
        path.write_text(catalog_text('3,3.1,Good Health,Maternal mortality'), encoding="utf-8")
        assert len(load_catalog(path)) == 1


class TestTargetsForGoals:
    def test_empty_selection(self, official):
        assert targets_for_goals(official, set()) == []

    def test_unknown_goal(self, official):
        with pytest.raises(CatalogError, match="unknown goal"):
            targets_for_goals(official, {13, 99})

    def test_result_in_canonical_order(self, official):
        chosen = targets_for_goals(official, {17})
        assert [t.code for t in chosen] == sorted((t.code for t in chosen))
