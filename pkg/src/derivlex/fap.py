"""Second-stage filtering and fine-grained alternation-pattern selection.

A pattern pair survives when enough candidate pairs across the whole build
are attributed to it; a candidate pair survives when at least one of its
patterns does (always-retain pairs survive regardless).  Each surviving pair
is then annotated with the pattern pair whose two expressions match the most
distinct lemmas among the retained pairs, together with the stem the chosen
pattern extracts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .candidates import CandidatePair
from .patterns import (
    Pattern,
    PatternPair,
    apply_pattern,
    factor_patterns,
)

DEFAULT_MIN_PATTERN_SUPPORT = 5


class NoAlternation(ValueError):
    """The two lemmas share no material within the slot budget."""


@dataclass(frozen=True)
class ExpressionStats:
    """How many distinct retained lemmas one expression matches."""

    expression: Pattern
    support: int


@dataclass(frozen=True)
class FapAnnotation:
    pair: CandidatePair
    pattern: PatternPair
    stem: str

    def __post_init__(self) -> None:
        left = apply_pattern(self.pattern.left, self.pair.lemma1)
        right = apply_pattern(self.pattern.right, self.pair.lemma2)
        if left is None or right is None or left != right:
            raise ValueError(
                f"pattern {self.pattern.render()} does not describe "
                f"({self.pair.lemma1}, {self.pair.lemma2})"
            )
        if "".join(left) != self.stem:
            raise ValueError(f"stem {self.stem!r} != captures {left!r}")


def attribution_counts(
    candidates: Mapping[CandidatePair, set[PatternPair]],
) -> Counter[PatternPair]:
    """Number of distinct candidate pairs each pattern pair is attributed to."""
    counts: Counter[PatternPair] = Counter()
    for patterns in candidates.values():
        counts.update(set(patterns))
    return counts


def filter_by_generality(
    candidates: Mapping[CandidatePair, set[PatternPair]],
    min_pattern_support: int = DEFAULT_MIN_PATTERN_SUPPORT,
) -> dict[CandidatePair, set[PatternPair]]:
    """Keep sufficiently general alternations and the pairs exhibiting them.

    Support is counted across the whole map, not per bucket.  A non-retained
    pair is dropped when it loses its last pattern; an always-retain pair
    keeps its full pattern set even below threshold (the minimal-alternation
    fallback for pattern-less always-retain pairs is the pipeline's job,
    since those pairs never reach this map).
    """
    if min_pattern_support < 1:
        raise ValueError("min_pattern_support must be >= 1")
    counts = attribution_counts(candidates)
    out: dict[CandidatePair, set[PatternPair]] = {}
    for pair, patterns in candidates.items():
        surviving = {p for p in patterns if counts[p] >= min_pattern_support}
        if surviving:
            out[pair] = surviving
        elif pair.always_retain and patterns:
            out[pair] = set(patterns)
    return out


def minimal_alternation(
    lemma1: str, lemma2: str, max_slots: int = 2
) -> PatternPair:
    """The alternation capturing the most shared material between two lemmas.

    Among pattern pairs within the slot budget whose greedy captures agree on
    (lemma1, lemma2), picks the one maximizing total captured length; ties go
    to fewer slots, then to the leftmost and longest first slot, then to the
    canonical renderings.  Raises NoAlternation when nothing matches.
    """
    if lemma1 == lemma2:
        raise ValueError("minimal_alternation requires distinct lemmas")
    # import here to avoid a candidates->analogy cycle at module load
    from .analogy import join_on_captures

    joined = join_on_captures(
        factor_patterns(lemma1, max_slots),
        factor_patterns(lemma2, max_slots),
        lemma1,
        lemma2,
    )
    if not joined:
        raise NoAlternation(f"no shared material: {lemma1!r} / {lemma2!r}")

    def rank(pp: PatternPair) -> tuple:
        caps = apply_pattern(pp.left, lemma1)
        assert caps is not None
        return (
            -sum(len(c) for c in caps),
            pp.slots,
            len(pp.left.literals[0]),
            -len(caps[0]),
            pp.left.render(),
            pp.right.render(),
        )

    return min(joined, key=rank)


def compute_expression_stats(
    retained: Iterable[CandidatePair],
    patterns: Iterable[Pattern],
) -> dict[Pattern, ExpressionStats]:
    """Support of each expression over the lemmas of the retained pairs."""
    lemmas: set[str] = set()
    for pair in retained:
        lemmas.add(pair.lemma1)
        lemmas.add(pair.lemma2)
    stats: dict[Pattern, ExpressionStats] = {}
    for pattern in set(patterns):
        support = sum(
            1 for lemma in lemmas if apply_pattern(pattern, lemma) is not None
        )
        stats[pattern] = ExpressionStats(expression=pattern, support=support)
    return stats


def fap_rank_key(
    pattern: PatternPair, stats: Mapping[Pattern, ExpressionStats]
) -> tuple:
    """Sort key implementing the connectivity score and its tie-breaks."""
    score = stats[pattern.left].support + stats[pattern.right].support
    return (
        -score,
        -pattern.literal_length,
        pattern.slots,
        pattern.left.render(),
        pattern.right.render(),
    )


def select_fap(
    pair: CandidatePair,
    surviving_patterns: Iterable[PatternPair],
    stats: Mapping[Pattern, ExpressionStats],
) -> FapAnnotation:
    """Pick the pattern pair with the most connecting expressions.

    The score of a pattern pair is the sum of its two expressions' supports;
    ties break on greater total literal length, then fewer slots, then the
    lexicographic renderings, so the choice is order-independent.
    """
    candidates = list(surviving_patterns)
    if not candidates:
        raise ValueError("select_fap requires a non-empty pattern set")
    best = min(candidates, key=lambda p: fap_rank_key(p, stats))
    captures = apply_pattern(best.left, pair.lemma1)
    assert captures is not None
    return FapAnnotation(pair=pair, pattern=best, stem="".join(captures))


def rank_patterns(
    surviving_patterns: Iterable[PatternPair],
    stats: Mapping[Pattern, ExpressionStats],
) -> list[tuple[PatternPair, int]]:
    """All of a pair's patterns with their scores, best first.

    The head of the list is what select_fap picks; the tail are the
    runners-up, kept around so suspicious selections can be audited against
    the alternatives they beat.
    """
    ranked = sorted(set(surviving_patterns), key=lambda p: fap_rank_key(p, stats))
    return [
        (p, stats[p.left].support + stats[p.right].support) for p in ranked
    ]
