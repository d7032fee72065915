from __future__ import annotations

import pytest

from derivlex.candidates import (
    CandidatePair,
    Provenance,
    build_lexicon_index,
    merge_candidates,
    pairs_from_definitions,
    pairs_from_morph_sections,
    pairs_from_morphynet,
)
from derivlex.ingest import DictionaryRecord, Gloss, MorphyNetRow, PosTag

from conftest import make_pair


def record(lemma, pos, gloss=None, lemmatized=None, derived=(), related=()):
    glosses = ()
    if gloss is not None:
        glosses = (Gloss(raw=gloss, lemmatized=lemmatized),)
    return DictionaryRecord(
        lemma=lemma, pos=pos, glosses=glosses,
        derived=tuple(derived), related=tuple(related),
    )


SPRY = record("spry", PosTag.A, "Nimble and quick.")
SPRYNESS = record(
    "spryness", PosTag.N,
    "The property of being spry.", ("the", "property", "of", "be", "spry", "."),
)


class TestDefinitionPairs:
    def test_definition_pair_extracted(self):
        records = [SPRY, SPRYNESS]
        index = build_lexicon_index(records)
        (pair,) = pairs_from_definitions(records, index)
        assert pair.key == ("spry", "A", "spryness", "N")
        assert pair.provenance is Provenance.DEFINITION
        assert pair.definition.raw == "The property of being spry."
        assert "spry" in pair.definition.lemmatized

    def test_self_reference_yields_nothing(self):
        records = [record("echo", PosTag.N, "An echo of an echo.",
                          ("a", "echo", "of", "a", "echo", "."))]
        index = build_lexicon_index(records)
        assert pairs_from_definitions(records, index) == []

    def test_pos_ambiguous_token_yields_one_pair_per_pos(self):
        # three-record corpus: "calm" attested as A and V, "calmness" defined
        records = [
            record("calm", PosTag.A, "Free from worry."),
            record("calm", PosTag.V, "To quiet someone down."),
            record(
                "calmness", PosTag.N,
                "The property of being calm.",
                ("the", "property", "of", "be", "calm", "."),
            ),
        ]
        index = build_lexicon_index(records)
        pairs = pairs_from_definitions(records, index)
        assert [p.key for p in pairs] == [
            ("calm", "A", "calmness", "N"),
            ("calm", "V", "calmness", "N"),
        ]

    def test_first_definition_wins(self):
        records = [
            SPRY,
            DictionaryRecord(
                lemma="spryness", pos=PosTag.N,
                glosses=(
                    Gloss("The property of being spry.",
                          ("the", "property", "of", "be", "spry", ".")),
                    Gloss("Being spry.", ("be", "spry", ".")),
                ),
            ),
        ]
        index = build_lexicon_index(records)
        (pair,) = pairs_from_definitions(records, index)
        assert pair.definition.raw == "The property of being spry."

    def test_stop_tokens_and_short_tokens_excluded(self):
        records = [
            record("of", PosTag.N, "A word."),
            record("a", PosTag.N, "A letter."),
            SPRY,
            SPRYNESS,
        ]
        index = build_lexicon_index(records)
        with_stop = pairs_from_definitions(records, index, frozenset(["of"]))
        assert [p.lemma1 for p in with_stop] == ["spry"]
        without = pairs_from_definitions(records, index)
        assert [p.lemma1 for p in without] == ["of", "spry"]

    def test_fallback_lemmatization_matches_surface_only(self):
        records = [
            record("accuse", PosTag.V, "To charge with a fault."),
            record("accusation", PosTag.N, "The act of accusing."),
        ]
        index = build_lexicon_index(records)
        assert pairs_from_definitions(records, index) == []

    def test_multiword_headwords_never_match_tokens(self):
        records = [
            record("interpret away", PosTag.V, "To dismiss."),
            record("gloss", PosTag.N, "To interpret away a problem.",
                   ("to", "interpret away", "a", "problem", ".")),
        ]
        index = build_lexicon_index(records)
        assert pairs_from_definitions(records, index) == []


class TestMorphSectionPairs:
    def test_derived_terms_pair(self):
        records = [
            record("interpret", PosTag.V, derived=("preinterpret", "misinterpret")),
            record("preinterpret", PosTag.V, "To interpret in advance."),
        ]
        index = build_lexicon_index(records)
        (pair,) = pairs_from_morph_sections(records, index)
        assert pair.key == ("interpret", "V", "preinterpret", "V")
        assert pair.provenance is Provenance.MORPH_SECTION
        assert pair.definition is None

    def test_empty_gloss_record_still_yields_section_pairs(self):
        records = [
            DictionaryRecord(lemma="interpret", pos=PosTag.V,
                             derived=("preinterpret",)),
            record("preinterpret", PosTag.V, "To interpret in advance."),
        ]
        index = build_lexicon_index(records)
        assert len(pairs_from_morph_sections(records, index)) == 1

    def test_member_equal_to_headword_excluded(self):
        records = [record("loop", PosTag.N, derived=("loop",))]
        index = build_lexicon_index(records)
        assert pairs_from_morph_sections(records, index) == []


class TestMorphynetPairs:
    def test_symmetrized(self):
        rows = [MorphyNetRow("injure", "injury", PosTag.V, PosTag.N)]
        pairs = pairs_from_morphynet(rows)
        assert {p.key for p in pairs} == {
            ("injure", "V", "injury", "N"),
            ("injury", "N", "injure", "V"),
        }
        assert all(p.always_retain for p in pairs)
        assert all(p.provenance is Provenance.MORPHYNET for p in pairs)

    def test_identical_lemmas_dropped(self):
        rows = [MorphyNetRow("walk", "walk", PosTag.V, PosTag.N)]
        assert pairs_from_morphynet(rows) == []

    def test_duplicates_collapse(self):
        rows = [MorphyNetRow("a", "b", PosTag.V, PosTag.N)] * 3
        assert len(pairs_from_morphynet(rows)) == 2

    def test_even_count_for_distinct_rows(self):
        rows = [
            MorphyNetRow("injure", "injury", PosTag.V, PosTag.N),
            MorphyNetRow("grow", "growth", PosTag.V, PosTag.N),
        ]
        assert len(pairs_from_morphynet(rows)) % 2 == 0


class TestMerge:
    def test_definition_payload_wins_and_retain_flag_sticks(self):
        definition = ("The act of accusing.", ("the", "act", "of", "accuse", "."))
        from_def = make_pair(
            "accuse", "accusation", PosTag.V, PosTag.N,
            provenance=Provenance.DEFINITION, definition=definition,
        )
        from_mn = make_pair(
            "accuse", "accusation", PosTag.V, PosTag.N,
            provenance=Provenance.MORPHYNET, always_retain=True,
        )
        (merged,) = merge_candidates([[from_mn], [from_def]])
        assert merged.provenance is Provenance.DEFINITION
        assert merged.definition is not None
        assert merged.always_retain

    def test_idempotent_and_sorted(self):
        pairs = [make_pair("b", "bb"), make_pair("a", "ab")]
        merged = merge_candidates([pairs, pairs])
        assert [p.lemma1 for p in merged] == ["a", "b"]


def test_candidate_pair_invariants():
    with pytest.raises(ValueError):
        make_pair("walk", "walk")
    with pytest.raises(ValueError):
        CandidatePair(
            lemma1="a", cat1=PosTag.N, lemma2="b", cat2=PosTag.N,
            provenance=Provenance.DEFINITION, definition=None,
        )


def test_generation_is_deterministic():
    records = [
        SPRY, SPRYNESS,
        record("dry", PosTag.A, "Without water inside."),
        record("dryness", PosTag.N, "The property of being dry.",
               ("the", "property", "of", "be", "dry", ".")),
    ]
    index = build_lexicon_index(records)
    first = pairs_from_definitions(records, index)
    second = pairs_from_definitions(list(reversed(records)), index)
    assert first == second
