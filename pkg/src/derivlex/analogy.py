"""Formal-analogy engine: signatures, analogy test, pattern enumeration.

Two word pairs can stand in a formal analogy only if they share a signature:
the Levenshtein distance between the two words plus, per code point, the
difference in occurrence counts.  Signatures bucket the candidate pairs; the
pairs in one bucket are compared with each other (exchange of the means) to
enumerate the alternation patterns their shared material supports.

``is_analogy`` decides string analogy exactly by a reachability search over
aligned factorizations and serves as the oracle for the fast machinery.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .candidates import CandidatePair
from .patterns import Pattern, PatternPair, apply_pattern, factor_patterns

DEFAULT_MIN_BUCKET = 5
DEFAULT_MAX_SLOTS = 2
ANALOGY_LENGTH_BOUND = 32


class AnalogyUndecided(ValueError):
    """Raised when is_analogy is asked about strings beyond its length bound."""


@dataclass(frozen=True, order=True)
class AnalogySignature:
    """Levenshtein distance plus per-code-point occurrence-count deltas.

    ``char_delta`` maps each code point to count(lemma2) - count(lemma1),
    stored as a sorted tuple with zero entries omitted so the signature is
    hashable and totally ordered (bucket keys must sort deterministically).
    """

    edit_distance: int
    char_delta: tuple[tuple[str, int], ...]

    def delta(self) -> dict[str, int]:
        return dict(self.char_delta)


def lcs_length(a: str, b: str) -> int:
    """Length of the longest common subsequence over code points."""
    if len(a) < len(b):
        a, b = b, a
    previous = [0] * (len(b) + 1)
    for ca in a:
        current = [0]
        for j, cb in enumerate(b, 1):
            if ca == cb:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[len(b)]


def edit_distance(a: str, b: str) -> int:
    """Unit-cost edit distance with insertions and deletions only.

    This is the alignment distance |a| + |b| - 2*lcs(a, b); a substitution
    costs two.  It is the distance under which two word pairs standing in a
    formal analogy are guaranteed to be equidistant, which is what makes the
    signature a sound prefilter (a substitution-based distance is not
    conserved by analogies and yields e.g. 8 instead of 10 for
    spryness/property).
    """
    return len(a) + len(b) - 2 * lcs_length(a, b)


def signature(lemma1: str, lemma2: str) -> AnalogySignature:
    """Signature of the ordered pair (lemma1, lemma2)."""
    if not lemma1 or not lemma2:
        raise ValueError("signature requires non-empty lemmas")
    counts = Counter(lemma2)
    counts.subtract(Counter(lemma1))
    delta = tuple(sorted((ch, d) for ch, d in counts.items() if d != 0))
    sig = AnalogySignature(edit_distance(lemma1, lemma2), delta)
    inserted = sum(d for _, d in delta if d > 0)
    deleted = -sum(d for _, d in delta if d < 0)
    assert sig.edit_distance >= inserted and sig.edit_distance >= deleted
    return sig


def is_analogy(a: str, b: str, c: str, d: str, *, length_bound: int = ANALOGY_LENGTH_BOUND) -> bool:
    """Exact decision of the string analogy a:b::c:d.

    Two conditions must hold.  First, shared-material accounting must be
    optimal on both axes: a and b are as far apart as c and d, and a is as
    far apart from c as b is from d (with the insertion/deletion distance).
    Second, the four strings must admit factorizations into aligned segments
    in which, segment by segment, either a agrees with b while c agrees with
    d (material shared inside each pair) or a agrees with c while b agrees
    with d (the changed material, identical across the two pairs).

    The factorization witness alone would accept degenerate quadruples such
    as ab:ba::a:a whose members are not equidistant; requiring distance
    conservation restores every law the engine relies on: signatures are a
    necessary condition, exchange of the means (swap b and c) holds, and so
    does symmetry of the pairs (swap (a, b) with (c, d)), since both
    conditions are invariant under those swaps.

    The witness search is a reachability sweep over index quadruples, O(n^4)
    states, hence the length bound; exceeding it raises AnalogyUndecided.
    """
    if max(len(a), len(b), len(c), len(d)) > length_bound:
        raise AnalogyUndecided(f"strings longer than bound {length_bound}")
    if len(a) + len(d) != len(b) + len(c):
        return False
    counts = Counter(a)
    counts.update(d)
    counts.subtract(b)
    counts.subtract(c)
    if any(v != 0 for v in counts.values()):
        return False
    if edit_distance(a, b) != edit_distance(c, d):
        return False
    if edit_distance(a, c) != edit_distance(b, d):
        return False

    la, lb, lc, ld = len(a), len(b), len(c), len(d)
    goal = (la, lb, lc, ld)
    frontier = {(0, 0, 0, 0)}
    seen = set(frontier)
    while frontier:
        if goal in frontier:
            return True
        nxt = set()
        for i, j, k, l in frontier:
            if i < la and j < lb and a[i] == b[j]:
                state = (i + 1, j + 1, k, l)
                if state not in seen:
                    nxt.add(state)
            if k < lc and l < ld and c[k] == d[l]:
                state = (i, j, k + 1, l + 1)
                if state not in seen:
                    nxt.add(state)
            if i < la and k < lc and a[i] == c[k]:
                state = (i + 1, j, k + 1, l)
                if state not in seen:
                    nxt.add(state)
            if j < lb and l < ld and b[j] == d[l]:
                state = (i, j + 1, k, l + 1)
                if state not in seen:
                    nxt.add(state)
        seen.update(nxt)
        frontier = nxt
    return goal in seen


def bucket_by_signature(
    pairs: Iterable[CandidatePair],
    min_bucket: int = DEFAULT_MIN_BUCKET,
    *,
    count_always_retain: bool = False,
    fold_case: bool = False,
) -> dict[AnalogySignature, list[CandidatePair]]:
    """Group candidate pairs by signature and drop the irregular buckets.

    A bucket survives when it holds at least ``min_bucket`` pairs; pairs
    flagged always-retain are placed in their bucket but do not count toward
    the threshold unless ``count_always_retain`` is set.  Pairs in dropped
    buckets are gone from the result (always-retain pairs re-enter the
    pipeline later through the fallback annotation).  Buckets are sorted for
    deterministic downstream iteration.

    Case matters by default (German nouns); ``fold_case`` computes the
    bucket key over casefolded lemmas instead, merging case variants.
    """
    if min_bucket < 1:
        raise ValueError("min_bucket must be >= 1")

    def key(pair: CandidatePair) -> AnalogySignature:
        if fold_case:
            return signature(pair.lemma1.casefold(), pair.lemma2.casefold())
        return signature(pair.lemma1, pair.lemma2)

    buckets: dict[AnalogySignature, list[CandidatePair]] = defaultdict(list)
    for pair in pairs:
        buckets[key(pair)].append(pair)
    kept: dict[AnalogySignature, list[CandidatePair]] = {}
    for sig in sorted(buckets):
        members = sorted(buckets[sig])
        countable = sum(
            1 for p in members if count_always_retain or not p.always_retain
        )
        if countable >= min_bucket:
            kept[sig] = members
    return kept


def _captures_by_pattern(
    patterns: Iterable[Pattern],
    word: str,
    cache: dict[tuple[Pattern, str], tuple[str, ...]] | None = None,
) -> dict[tuple[str, ...], list[Pattern]]:
    grouped: dict[tuple[str, ...], list[Pattern]] = defaultdict(list)
    for p in patterns:
        if cache is None:
            caps = apply_pattern(p, word)
        else:
            key = (p, word)
            caps = cache.get(key)
            if caps is None:
                caps = apply_pattern(p, word)
                cache[key] = caps
        assert caps is not None  # p factorizes word by construction
        grouped[caps].append(p)
    return grouped


def join_on_captures(
    left_patterns: Iterable[Pattern],
    right_patterns: Iterable[Pattern],
    lemma1: str,
    lemma2: str,
    cache: dict[tuple[Pattern, str], tuple[str, ...]] | None = None,
) -> set[PatternPair]:
    """Pattern pairs whose greedy captures agree on (lemma1, lemma2).

    Equal capture tuples imply equal slot counts; the one illegal combination
    (bare with bare) cannot agree because lemma1 != lemma2 whenever this is
    called, but it is guarded anyway.
    """
    left_by_caps = _captures_by_pattern(left_patterns, lemma1, cache)
    right_by_caps = _captures_by_pattern(right_patterns, lemma2, cache)
    out: set[PatternPair] = set()
    for caps in left_by_caps.keys() & right_by_caps.keys():
        for lp in left_by_caps[caps]:
            for rp in right_by_caps[caps]:
                if lp.is_bare and rp.is_bare:
                    continue
                out.add(PatternPair(lp, rp))
    return out


def enumerate_pattern_pairs(
    bucket: Sequence[CandidatePair],
    max_slots: int = DEFAULT_MAX_SLOTS,
    max_partners: int | None = None,
) -> dict[CandidatePair, set[PatternPair]]:
    """Alternation patterns for every pair of a one-signature bucket.

    For an ordered pair (A, B) and a partner (C, D), exchange of the means
    compares A with C and B with D: every pattern that factorizes both left
    words, paired with every pattern that factorizes both right words, is an
    alternation candidate provided both sides extract identical captures
    from (A, B).  Singleton buckets therefore yield an empty map.
    ``max_partners`` caps the partners examined per pair, taken in sorted
    bucket order.
    """
    if max_slots < 1:
        raise ValueError("max_slots must be >= 1")
    members = sorted(set(bucket))
    result: dict[CandidatePair, set[PatternPair]] = {}
    # greedy captures repeat across partner comparisons; memoized per bucket
    captures_cache: dict[tuple[Pattern, str], tuple[str, ...]] = {}
    for pair in members:
        patterns: set[PatternPair] = set()
        partners = [q for q in members if q != pair]
        if max_partners is not None:
            partners = partners[:max_partners]
        left_self = factor_patterns(pair.lemma1, max_slots)
        right_self = factor_patterns(pair.lemma2, max_slots)
        for partner in partners:
            lefts = left_self & factor_patterns(partner.lemma1, max_slots)
            rights = right_self & factor_patterns(partner.lemma2, max_slots)
            if lefts and rights:
                patterns |= join_on_captures(
                    lefts, rights, pair.lemma1, pair.lemma2, captures_cache
                )
        if patterns:
            result[pair] = patterns
    return result
