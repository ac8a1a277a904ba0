from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from glyphforge import hangul, tables
from glyphforge.errors import TableParseError

FIXTURES = Path(__file__).parent


def load_stroke_totals() -> dict[int, int]:
    """Independent total-stroke-count reference (Unihan kTotalStrokes values)."""
    totals = {}
    for line in (FIXTURES / "stroke_totals.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        char, total = line.split("\t")
        totals[ord(char)] = int(total)
    return totals


class TestStrokeTable:
    def test_yi_single_heng(self, stroke_table):
        counts = stroke_table.counts(ord("一"))
        assert counts[tables.STROKE_CLASSES.index("heng")] == 1
        assert sum(counts) == 1

    def test_shi_two_strokes(self, stroke_table):
        assert stroke_table.total(ord("十")) == 2

    def test_totals_match_reference(self, stroke_table):
        totals = load_stroke_totals()
        assert set(totals) == set(stroke_table.entries)
        wrong = {cp for cp, t in totals.items() if stroke_table.total(cp) != t}
        assert wrong == set()

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("一\t" + "\t".join(["1"] * 31) + "\n", encoding="utf-8")
        with pytest.raises(TableParseError, match="line 1"):
            tables.load_stroke_table(path)

    def test_negative_count(self, tmp_path):
        path = tmp_path / "bad.tsv"
        row = ["一", "-1"] + ["0"] * 31
        path.write_text("# header\n" + "\t".join(row) + "\n", encoding="utf-8")
        with pytest.raises(TableParseError, match="line 2"):
            tables.load_stroke_table(path)

    def test_non_integer_count(self, tmp_path):
        path = tmp_path / "bad.tsv"
        row = ["一", "x"] + ["0"] * 31
        path.write_text("\t".join(row) + "\n", encoding="utf-8")
        with pytest.raises(TableParseError, match="non-integer"):
            tables.load_stroke_table(path)

    def test_duplicate_character(self, tmp_path):
        path = tmp_path / "bad.tsv"
        row = "\t".join(["一", "1"] + ["0"] * 31)
        path.write_text(row + "\n" + row + "\n", encoding="utf-8")
        with pytest.raises(TableParseError, match="duplicate"):
            tables.load_stroke_table(path)

    def test_all_zero_row_rejected(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("\t".join(["一"] + ["0"] * 32) + "\n", encoding="utf-8")
        with pytest.raises(TableParseError, match="positive"):
            tables.load_stroke_table(path)

    def test_one_bit_ambiguous_pair_exists(self, stroke_table):
        yi = stroke_table.counts(ord("一"))
        er = stroke_table.counts(ord("二"))
        assert yi != er
        assert tuple(min(c, 1) for c in yi) == tuple(min(c, 1) for c in er)


class TestComponentTable:
    def test_ga(self, component_table):
        counts = component_table.counts(ord("가"))
        assert counts[hangul.BASIC_COMPONENTS.index("ㄱ")] == 1
        assert counts[hangul.BASIC_COMPONENTS.index("ㅏ")] == 1
        assert sum(counts) == 2

    def test_gak_double_giyeok(self, component_table):
        counts = component_table.counts(ord("각"))
        assert counts[hangul.BASIC_COMPONENTS.index("ㄱ")] == 2

    def test_padding_dims_zero(self, component_table):
        for cp in list(component_table.entries)[:: 517]:
            assert component_table.counts(cp)[tables.COMPONENT_DIMS :] == (0,) * 8

    def test_full_audit_sample_against_jamo_oracle(self, component_table):
        """500-syllable audit: full count vectors vs. independent decomposition."""
        import test_hangul

        cps = sorted(component_table.entries)
        sample = cps[:: max(1, len(cps) // 500)][:500]
        assert len(sample) == 500
        for cp in sample:
            oracle = test_hangul.nfd_components(cp)
            expected = [0] * 32
            for jamo in oracle:
                expected[hangul.BASIC_COMPONENTS.index(jamo)] += 1
            assert component_table.counts(cp) == tuple(expected), f"U+{cp:04X}"
            assert component_table.total(cp) == len(oracle)

    def test_wrong_dims(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("\t".join(["가"] + ["1"] * 32) + "\n", encoding="utf-8")
        with pytest.raises(TableParseError):
            tables.load_component_table(path)


class TestRoundTrip:
    def test_save_load_stroke(self, stroke_table, tmp_path):
        path = tmp_path / "copy.tsv"
        tables.save_table(stroke_table, path, header="copy")
        again = tables.load_stroke_table(path)
        assert again.entries == stroke_table.entries

    def test_save_load_component(self, component_table, tmp_path):
        path = tmp_path / "copy.tsv"
        sub = tables.ComponentTable(
            entries={cp: component_table.counts(cp) for cp in list(component_table.entries)[:100]},
            kind="component",
        )
        tables.save_table(sub, path)
        assert tables.load_component_table(path).entries == sub.entries

    def test_load_table_infers_kind(self, tmp_path, stroke_table, component_table):
        p1 = tmp_path / "s.tsv"
        tables.save_table(stroke_table, p1)
        assert isinstance(tables.load_table(p1), tables.StrokeTable)
        p2 = tmp_path / "c.tsv"
        sub = tables.ComponentTable(
            entries={cp: component_table.counts(cp) for cp in list(component_table.entries)[:10]},
            kind="component",
        )
        tables.save_table(sub, p2)
        assert isinstance(tables.load_table(p2), tables.ComponentTable)


@given(
    st.lists(
        st.integers(hangul.SYLLABLE_BASE, hangul.SYLLABLE_LAST),
        min_size=1,
        max_size=20,
        unique=True,
    )
)
def test_build_component_table_matches_decomposition(cps):
    table = tables.build_component_table(cps)
    for cp in cps:
        assert table.total(cp) == len(hangul.decompose(cp))
