from __future__ import annotations

import pytest

from derivlex.candidates import Provenance
from derivlex.fap import FapAnnotation
from derivlex.ingest import PosTag
from derivlex.lexicon import (
    DEFS_FILE,
    PAIRS_FILE,
    BuildStats,
    DefEntry,
    LexiconEntry,
    LexiconFormatError,
    compute_stats,
    materialize,
    read_tables,
    write_tables,
)
from derivlex.patterns import parse_pattern, pattern_pair

from conftest import make_pair


def annotation(l1, c1, l2, c2, left, right, stem, definition=None):
    pair = make_pair(
        l1, l2, c1, c2,
        provenance=Provenance.DEFINITION if definition else Provenance.MORPH_SECTION,
        definition=definition,
    )
    return FapAnnotation(pair=pair, pattern=pattern_pair(left, right), stem=stem)


SPANISH = [
    annotation("rastrero", PosTag.A, "rastreramente", PosTag.R,
               "^(.+)o$", "^(.+)amente$", "rastrer"),
    annotation("ducha", PosTag.N, "duchita", PosTag.N,
               "^(.+)a$", "^(.+)ita$", "duch"),
    annotation("talentoso", PosTag.A, "talento", PosTag.N,
               "^(.+)so$", "^(.+)$", "talento"),
]
SPRY = annotation(
    "spry", PosTag.A, "spryness", PosTag.N, "^(.+)$", "^(.+)ness$", "spry",
    definition=("The property of being spry.",
                ("the", "property", "of", "be", "spry", ".")),
)


class TestMaterialize:
    def test_mirror_rows_added(self):
        entries, defs = materialize(SPANISH)
        keys = {e.key for e in entries}
        assert ("talentoso", "A", "talento", "N") in keys
        assert ("talento", "N", "talentoso", "A") in keys
        assert len(entries) == 6 and defs == set()

    def test_definition_yields_oriented_def_row(self):
        entries, defs = materialize([SPRY])
        (def_entry,) = defs
        assert def_entry.key == ("spry", "A", "spryness", "N")
        assert def_entry.definition2 == "The property of being spry."
        assert def_entry.lemmatized_definition2 == (
            "the", "property", "of", "be", "spry", ".",
        )
        assert len(entries) == 2

    def test_empty_input(self):
        assert materialize([]) == (set(), set())

    def test_double_orientation_stays_symmetric(self):
        both = [
            annotation("luck", PosTag.N, "lucky", PosTag.A,
                       "^(.+)$", "^(.+)y$", "luck"),
            annotation("lucky", PosTag.A, "luck", PosTag.N,
                       "^(.+)y$", "^(.+)$", "luck"),
        ]
        entries, _ = materialize(both)
        assert len(entries) == 2
        by_key = {e.key: e for e in entries}
        forward = by_key[("luck", "N", "lucky", "A")]
        backward = by_key[("lucky", "A", "luck", "N")]
        assert forward.mirrored() == backward

    def test_tabs_in_definitions_flattened(self):
        ann = annotation(
            "spry", PosTag.A, "spryness", PosTag.N, "^(.+)$", "^(.+)ness$", "spry",
            definition=("Tab\there.", ("spry", "tab", "here", ".")),
        )
        _, defs = materialize([ann])
        assert next(iter(defs)).definition2 == "Tab here."


class TestWriteRead:
    def test_published_row_layouts(self, tmp_path):
        entries, defs = materialize(SPANISH + [SPRY])
        write_tables(entries, defs, tmp_path)
        pairs_lines = (tmp_path / PAIRS_FILE).read_text(encoding="utf-8").splitlines()
        assert pairs_lines[0] == "lemma1\tcat1\tlemma2\tcat2\tstem\texponent1\texponent2"
        expected_rows = {
            "rastrero\tA\trastreramente\tR\trastrer\t^(.+)o$\t^(.+)amente$",
            "ducha\tN\tduchita\tN\tduch\t^(.+)a$\t^(.+)ita$",
            "talentoso\tA\ttalento\tN\ttalento\t^(.+)so$\t^(.+)$",
            "talento\tN\ttalentoso\tA\ttalento\t^(.+)$\t^(.+)so$",
        }
        assert expected_rows <= set(pairs_lines[1:])
        defs_lines = (tmp_path / DEFS_FILE).read_text(encoding="utf-8").splitlines()
        assert defs_lines[1] == (
            "spry\tA\tspryness\tN\tspry\t^(.+)$\t^(.+)ness$"
            "\tThe property of being spry.\tthe property of be spry ."
        )

    def test_round_trip_identity_and_bytes(self, tmp_path):
        entries, defs = materialize(SPANISH + [SPRY])
        write_tables(entries, defs, tmp_path)
        loaded_entries, loaded_defs = read_tables(tmp_path)
        assert loaded_entries == entries and loaded_defs == defs
        second = tmp_path / "second"
        write_tables(loaded_entries, loaded_defs, second)
        for name in (PAIRS_FILE, DEFS_FILE):
            assert (second / name).read_bytes() == (tmp_path / name).read_bytes()

    def test_rows_are_sorted(self, tmp_path):
        entries, defs = materialize(SPANISH + [SPRY])
        write_tables(entries, defs, tmp_path)
        rows = (tmp_path / PAIRS_FILE).read_text().splitlines()[1:]
        keys = [tuple(r.split("\t")[:4]) for r in rows]
        assert keys == sorted(keys)

    def test_strict_mode_rejects_broken_exponent(self, tmp_path):
        entries, defs = materialize(SPANISH)
        write_tables(entries, defs, tmp_path)
        path = tmp_path / PAIRS_FILE
        lines = path.read_text().splitlines()
        lines[1] = lines[1].replace("^(.+)a$", "^(.+)zzz$")
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(LexiconFormatError):
            read_tables(tmp_path)

    def test_lenient_mode_skips_and_reports(self, tmp_path):
        entries, defs = materialize(SPANISH + [SPRY])
        write_tables(entries, defs, tmp_path)
        path = tmp_path / PAIRS_FILE
        lines = path.read_text().splitlines()
        assert len(lines) == 9  # header + 8 rows
        lines[1] = lines[1].replace("^(.+)a$", "^(.+)zzz$")
        path.write_text("\n".join(lines) + "\n")
        report: list[str] = []
        loaded, loaded_defs = read_tables(tmp_path, strict=False, report=report)
        # the broken row and its now-orphaned mirror are both dropped
        assert len(loaded) == 6
        assert len(report) == 2
        assert "pairs.tsv:2" in report[0]

    def test_strict_mode_rejects_asymmetric_table(self, tmp_path):
        entries, defs = materialize(SPANISH)
        write_tables(entries, defs, tmp_path)
        path = tmp_path / PAIRS_FILE
        lines = path.read_text().splitlines()
        del lines[1]
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(LexiconFormatError, match="mirror"):
            read_tables(tmp_path)

    def test_defs_row_without_pairs_row_rejected(self, tmp_path):
        entries, defs = materialize(SPANISH + [SPRY])
        write_tables(entries, defs, tmp_path)
        pairs_path = tmp_path / PAIRS_FILE
        kept = [
            line
            for line in pairs_path.read_text().splitlines()
            if not line.startswith(("spry", "spryness"))
        ]
        pairs_path.write_text("\n".join(kept) + "\n")
        with pytest.raises(LexiconFormatError, match="no pairs row"):
            read_tables(tmp_path)

    def test_header_mismatch_is_fatal(self, tmp_path):
        entries, defs = materialize(SPANISH)
        write_tables(entries, defs, tmp_path)
        path = tmp_path / PAIRS_FILE
        path.write_text(path.read_text().replace("stem", "trunk", 1))
        with pytest.raises(LexiconFormatError, match="header"):
            read_tables(tmp_path)


class TestStats:
    def test_hand_counted_example(self):
        entries, defs = materialize(SPANISH[:2] + [SPRY])
        # 3 annotations -> 6 ordered rows (3 unordered), 1 def row
        stats = compute_stats(entries, defs)
        assert stats.ordered_pairs == 6
        assert stats.pair_sets == 3
        assert stats.defs == 1
        assert stats.defs_pair_sets == 1
        assert stats.ratio_sets == round(1 / 3, 3)

    def test_empty_tables(self):
        stats = compute_stats([], [])
        assert stats == BuildStats(0, 0, 0, 0)
        assert stats.ratio_ordered == 0.0 and stats.ratio_sets == 0.0

    def test_symmetric_table_halves_exactly(self):
        entries, defs = materialize(SPANISH + [SPRY])
        stats = compute_stats(entries, defs)
        assert stats.pair_sets * 2 == stats.ordered_pairs

    def test_recount_oracle_against_tsv(self, tmp_path, golden_dir):
        entries, defs = read_tables(golden_dir)
        stats = compute_stats(entries, defs)
        pair_rows = (golden_dir / PAIRS_FILE).read_text(encoding="utf-8").splitlines()[1:]
        def_rows = (golden_dir / DEFS_FILE).read_text(encoding="utf-8").splitlines()[1:]
        assert stats.ordered_pairs == len(pair_rows)
        assert stats.defs == len(def_rows)
        unordered = {
            frozenset([tuple(r.split("\t")[0:2]), tuple(r.split("\t")[2:4])])
            for r in pair_rows
        }
        assert stats.pair_sets == len(unordered)
        unordered_defs = {
            frozenset([tuple(r.split("\t")[0:2]), tuple(r.split("\t")[2:4])])
            for r in def_rows
        }
        assert stats.defs_pair_sets == len(unordered_defs)

    def test_text_rendering_three_decimals(self):
        stats = BuildStats(4, 1, 2, 1)
        text = stats.to_text()
        assert "0.250" in text and "0.500" in text


def test_entry_validates_capture_equality():
    with pytest.raises(LexiconFormatError):
        LexiconEntry(
            lemma1="spry", cat1=PosTag.A, lemma2="spryness", cat2=PosTag.N,
            stem="spryX",
            exponent1=parse_pattern("^(.+)$"), exponent2=parse_pattern("^(.+)ness$"),
        )
    with pytest.raises(LexiconFormatError):
        DefEntry(
            lemma1="spry", cat1=PosTag.A, lemma2="spryness", cat2=PosTag.N,
            stem="spry",
            exponent1=parse_pattern("^(.+)$"), exponent2=parse_pattern("^(.+)ness$"),
            definition2="The property of being spry.",
            lemmatized_definition2=("no", "match", "."),
        )


def test_lenient_mode_one_bad_defs_row_of_ten(tmp_path):
    annotations = [
        annotation(f"verb{i}", PosTag.V, f"verb{i}er", PosTag.N,
                   "^(.+)$", "^(.+)er$", f"verb{i}",
                   definition=(f"One who verb{i}s.",
                               ("one", "who", f"verb{i}", ".")))
        for i in range(10)
    ]
    entries, defs = materialize(annotations)
    write_tables(entries, defs, tmp_path)
    path = tmp_path / DEFS_FILE
    lines = path.read_text().splitlines()
    assert len(lines) == 11
    # corrupt one row: the lemmatized definition no longer contains lemma1
    lines[3] = "\t".join(lines[3].split("\t")[:8] + ["nothing here ."])
    path.write_text("\n".join(lines) + "\n")
    report: list[str] = []
    loaded_entries, loaded_defs = read_tables(tmp_path, strict=False, report=report)
    assert len(loaded_defs) == 9
    assert len(report) == 1
    assert f"{DEFS_FILE}:4" in report[0]
    assert len(loaded_entries) == 20
