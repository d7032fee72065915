"""Anchored wildcard expressions used as alternation-pattern exponents.

A pattern is an anchored alternation of literal segments and wildcard slots,
rendered canonically as ``^lit0(.+)lit1(.+)...litN$``.  Each slot captures at
least one code point.  Matching is greedy left-to-right (longest-leftmost),
which makes capture extraction deterministic.  A pair of patterns with
positionally corresponding slots describes the formal alternation between two
lemmas; the concatenated captures are the shared stem.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

SLOT = "(.+)"


class PatternError(ValueError):
    """Malformed pattern text or an invalid literal/slot layout."""


@dataclass(frozen=True, order=True)
class Pattern:
    """An anchored expression: literals[0] (.+) literals[1] ... (.+) literals[-1].

    ``literals`` has one more element than the number of slots.  Outer
    literals may be empty; inner literals may not (slots are never adjacent).
    """

    literals: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.literals) < 2:
            raise PatternError("a pattern needs at least one slot")
        for lit in self.literals[1:-1]:
            if not lit:
                raise PatternError("adjacent wildcard slots are not allowed")
        for lit in self.literals:
            if "\t" in lit or "\n" in lit:
                raise PatternError("literal segments must not contain tab/newline")

    @property
    def slots(self) -> int:
        return len(self.literals) - 1

    @property
    def is_bare(self) -> bool:
        """True for the single-slot pattern with no literal material, ^(.+)$."""
        return self.literals == ("", "")

    @property
    def literal_length(self) -> int:
        return sum(len(lit) for lit in self.literals)

    def render(self) -> str:
        return "^" + SLOT.join(self.literals) + "$"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()


BARE = Pattern(("", ""))


def parse_pattern(text: str) -> Pattern:
    """Parse the canonical rendering, the only accepted grammar."""
    if not text.startswith("^") or not text.endswith("$") or len(text) < 2:
        raise PatternError(f"pattern not anchored: {text!r}")
    body = text[1:-1]
    literals = tuple(body.split(SLOT))
    if len(literals) < 2:
        raise PatternError(f"pattern has no wildcard slot: {text!r}")
    pattern = Pattern(literals)
    if pattern.render() != text:
        raise PatternError(f"non-canonical pattern rendering: {text!r}")
    return pattern


@lru_cache(maxsize=65536)
def _compiled(literals: tuple[str, ...]) -> re.Pattern[str]:
    return re.compile(SLOT.join(re.escape(lit) for lit in literals))


def apply_pattern(pattern: Pattern, lemma: str) -> tuple[str, ...] | None:
    """Match ``lemma`` and return the capture tuple, or None on no match.

    Slots capture greedily left-to-right, so the result is deterministic even
    when several factorizations of the lemma fit the pattern.
    """
    m = _compiled(pattern.literals).fullmatch(lemma)
    if m is None:
        return None
    return m.groups()


def instantiate_pattern(pattern: Pattern, captures: tuple[str, ...]) -> str:
    """Splice captures into the slots; inverse of apply_pattern on a match."""
    if len(captures) != pattern.slots:
        raise PatternError(
            f"capture arity {len(captures)} != slot count {pattern.slots}"
        )
    if any(not c for c in captures):
        raise PatternError("captures must be non-empty")
    out = [pattern.literals[0]]
    for capture, lit in zip(captures, pattern.literals[1:]):
        out.append(capture)
        out.append(lit)
    return "".join(out)


@dataclass(frozen=True, order=True)
class PatternPair:
    """Two patterns with positionally aligned slots, one per lemma of a pair."""

    left: Pattern
    right: Pattern

    def __post_init__(self) -> None:
        if self.left.slots != self.right.slots:
            raise PatternError("pattern pair sides must have equal slot counts")
        if self.left.is_bare and self.right.is_bare:
            raise PatternError("at most one side may be the bare pattern ^(.+)$")

    @property
    def slots(self) -> int:
        return self.left.slots

    @property
    def literal_length(self) -> int:
        return self.left.literal_length + self.right.literal_length

    def swapped(self) -> "PatternPair":
        return PatternPair(self.right, self.left)

    def render(self) -> str:
        return f"{self.left.render()}/{self.right.render()}"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()


def pattern_pair(left: str, right: str) -> PatternPair:
    """Build a PatternPair from two canonical renderings (test/CLI helper)."""
    return PatternPair(parse_pattern(left), parse_pattern(right))


def factor_patterns(word: str, max_slots: int) -> frozenset[Pattern]:
    """All patterns with <= max_slots slots that factorize ``word``.

    A pattern factorizes a word when the word splits into the pattern's
    literal segments with at least one code point in every slot, i.e. exactly
    when apply_pattern succeeds.  The count is polynomial in len(word): for a
    word of n code points there are C(n+1, 2k) layouts with k slots.
    """
    return _factor_patterns_cached(word, max_slots)


@lru_cache(maxsize=65536)
def _factor_patterns_cached(word: str, max_slots: int) -> frozenset[Pattern]:
    n = len(word)
    found: set[Pattern] = set()
    # cuts = (c1, .., c2k): slot i spans [c(2i-1), c(2i)); literal segments
    # fill the gaps.  Slot spans and inner literal gaps must be non-empty.
    def extend(cuts: list[int], slots_left: int) -> None:
        if len(cuts) % 2 == 0 and cuts:
            literals = []
            prev = 0
            for j in range(0, len(cuts), 2):
                literals.append(word[prev:cuts[j]])
                prev = cuts[j + 1]
            literals.append(word[prev:])
            found.add(Pattern(tuple(literals)))
        if slots_left == 0:
            return
        if len(cuts) % 2 == 0:
            # open a new slot; require a non-empty literal gap unless this is
            # the first slot at the very start of the word
            start = cuts[-1] + 1 if cuts else 0
            for c in range(start, n):
                cuts.append(c)
                extend(cuts, slots_left)
                cuts.pop()
        else:
            # close the current slot (span must be non-empty)
            for c in range(cuts[-1] + 1, n + 1):
                cuts.append(c)
                extend(cuts, slots_left - 1)
                cuts.pop()

    if n > 0:
        extend([], max_slots)
    return frozenset(found)
