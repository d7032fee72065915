from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from derivlex.analogy import enumerate_pattern_pairs
from derivlex.fap import (
    FapAnnotation,
    NoAlternation,
    attribution_counts,
    compute_expression_stats,
    fap_rank_key,
    filter_by_generality,
    minimal_alternation,
    select_fap,
)
from derivlex.patterns import apply_pattern, parse_pattern, pattern_pair

from conftest import make_pair

IST_ISM = pattern_pair("^(.+)ist$", "^(.+)ism$")
T_M = pattern_pair("^(.+)t$", "^(.+)m$")


class TestFilterByGenerality:
    def test_pattern_below_support_drops_pair(self):
        candidates = {
            make_pair("positivist", "positivism"): {IST_ISM},
            make_pair("feminist", "feminism"): {IST_ISM},
        }
        assert filter_by_generality(candidates, 5) == {}
        assert filter_by_generality(candidates, 2) == candidates

    def test_threshold_one_is_identity(self):
        candidates = {make_pair("a", "ab"): {pattern_pair("^(.+)$", "^(.+)b$")}}
        assert filter_by_generality(candidates, 1) == candidates

    def test_always_retain_keeps_pattern_set_below_threshold(self):
        pair = make_pair("positivist", "positivism", always_retain=True)
        candidates = {pair: {IST_ISM}}
        assert filter_by_generality(candidates, 5) == {pair: {IST_ISM}}

    def test_surviving_pattern_counts_are_global(self):
        pairs = [make_pair(f"w{i}ist", f"w{i}ism") for i in range(5)]
        candidates = {p: {IST_ISM, pattern_pair(f"^w{i}is(.+)$", f"^w{i}is(.+)$")}
                      for i, p in enumerate(pairs)}
        filtered = filter_by_generality(candidates, 5)
        assert all(patterns == {IST_ISM} for patterns in filtered.values())

    def test_attribution_counts_distinct_pairs(self):
        candidates = {
            make_pair("positivist", "positivism"): {IST_ISM, T_M},
            make_pair("feminist", "feminism"): {IST_ISM},
        }
        counts = attribution_counts(candidates)
        assert counts[IST_ISM] == 2 and counts[T_M] == 1


class TestMinimalAlternation:
    def test_cross_formation(self):
        assert minimal_alternation("positivist", "positivism").render() == "^(.+)t$/^(.+)m$"

    def test_suffix_swap_keeps_maximal_stem(self):
        pattern = minimal_alternation("ducha", "duchita")
        assert pattern.render() == "^(.+)a$/^(.+)ita$"
        assert apply_pattern(pattern.left, "ducha") == ("duch",)

    def test_null_exponent(self):
        assert minimal_alternation("talentoso", "talento").render() == "^(.+)so$/^(.+)$"

    def test_disjoint_alphabets(self):
        with pytest.raises(NoAlternation):
            minimal_alternation("ab", "cd")

    def test_identical_lemmas_rejected(self):
        with pytest.raises(ValueError):
            minimal_alternation("x", "x")

    @given(
        st.sampled_from("abcd"),
        st.sampled_from("efgh"),
        st.text(alphabet="abcde", min_size=1, max_size=8),
    )
    def test_shared_suffix_is_fully_captured(self, x, y, suffix):
        annotationless = minimal_alternation(x + suffix, y + suffix)
        captures = apply_pattern(annotationless.left, x + suffix)
        assert captures is not None
        assert "".join(captures) == suffix


class TestExpressionStats:
    def test_bare_matches_every_lemma(self):
        pairs = [make_pair("a1", "a1ness"), make_pair("b2", "b2ness")]
        stats = compute_expression_stats(pairs, [parse_pattern("^(.+)$")])
        assert stats[parse_pattern("^(.+)$")].support == 4

    def test_no_match_is_zero(self):
        pairs = [make_pair("aa", "ab")]
        stats = compute_expression_stats(pairs, [parse_pattern("^(.+)zz$")])
        assert stats[parse_pattern("^(.+)zz$")].support == 0

    def test_narrow_vs_general_expression(self):
        # brute-force oracle over an explicit lemma set
        lemmas = ["activist", "nativist", "feminist", "positivist"]
        pairs = [make_pair(lemma, lemma + "x") for lemma in lemmas]
        narrow = parse_pattern("^(.+)tivist$")
        general = parse_pattern("^(.+)ist$")
        stats = compute_expression_stats(pairs, [narrow, general])

        def oracle(pattern):
            return sum(
                1
                for lemma in {p.lemma1 for p in pairs} | {p.lemma2 for p in pairs}
                if apply_pattern(pattern, lemma) is not None
            )

        assert stats[narrow].support == oracle(narrow) == 3
        assert stats[general].support == oracle(general) == 4
        assert stats[narrow].support < stats[general].support


def ism_bucket_stats():
    bucket = [
        make_pair("positivist", "positivism"),
        make_pair("feminist", "feminism"),
        make_pair("activist", "activism"),
        make_pair("catastrophist", "catastrophism"),
        make_pair("structuralist", "structuralism"),
    ]
    enumerated = enumerate_pattern_pairs(bucket, max_slots=2)
    retained = filter_by_generality(enumerated, 5)
    expressions = {
        side for pats in retained.values() for p in pats for side in (p.left, p.right)
    }
    stats = compute_expression_stats(retained.keys(), expressions)
    return bucket, retained, stats


class TestSelectFap:
    def test_most_connecting_pattern_wins(self):
        bucket, retained, stats = ism_bucket_stats()
        annotation = select_fap(bucket[0], retained[bucket[0]], stats)
        assert annotation.pattern == IST_ISM
        assert annotation.stem == "positiv"

    def test_exhaustive_rescoring_oracle(self):
        bucket, retained, stats = ism_bucket_stats()
        chosen = select_fap(bucket[0], retained[bucket[0]], stats)

        def score(pp):
            return stats[pp.left].support + stats[pp.right].support

        best_score = max(score(pp) for pp in retained[bucket[0]])
        assert score(chosen.pattern) == best_score
        ties = [pp for pp in retained[bucket[0]] if score(pp) == best_score]
        assert chosen.pattern.literal_length == max(t.literal_length for t in ties)

    def test_shuffle_invariance(self):
        bucket, retained, stats = ism_bucket_stats()
        patterns = list(retained[bucket[0]])
        rng = random.Random(11)
        results = set()
        for _ in range(100):
            rng.shuffle(patterns)
            results.add(select_fap(bucket[0], patterns, stats).pattern)
        assert results == {IST_ISM}

    def test_single_pattern_selected_trivially(self):
        pair = make_pair("spry", "spryness")
        pattern = pattern_pair("^(.+)$", "^(.+)ness$")
        stats = compute_expression_stats([pair], [pattern.left, pattern.right])
        assert select_fap(pair, [pattern], stats).pattern == pattern

    def test_empty_pattern_set_rejected(self):
        pair = make_pair("a", "ab")
        with pytest.raises(ValueError):
            select_fap(pair, [], {})

    def test_rank_key_tiebreak_order(self):
        pair_a = pattern_pair("^(.+)st$", "^(.+)sm$")
        pair_b = pattern_pair("^(.+)t$", "^(.+)m$")
        stats = compute_expression_stats(
            [make_pair("positivist", "positivism")],
            [pair_a.left, pair_a.right, pair_b.left, pair_b.right],
        )
        # equal support on this lemma set; longer literals must rank first
        assert fap_rank_key(pair_a, stats) < fap_rank_key(pair_b, stats)


def test_annotation_validates_captures():
    pair = make_pair("positivist", "positivism")
    with pytest.raises(ValueError):
        FapAnnotation(pair=pair, pattern=pattern_pair("^(.+)x$", "^(.+)y$"), stem="?")
    with pytest.raises(ValueError):
        FapAnnotation(pair=pair, pattern=IST_ISM, stem="positivX")
    annotation = FapAnnotation(pair=pair, pattern=IST_ISM, stem="positiv")
    assert annotation.stem == "positiv"
