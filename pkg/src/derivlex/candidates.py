"""Candidate lemma pairs from definitions, morph sections, and MorphyNet.

An ordered candidate pair puts the defining/base side first: for definition
provenance, lemma1 is the word found inside lemma2's definition; for
morph-section provenance, lemma1 is the headword and lemma2 the section
member.  MorphyNet rows are symmetrized and flagged always-retain: they skip
the two regularity filters but still receive a pattern annotation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Iterator

from .ingest import DictionaryRecord, Gloss, MorphyNetRow, PosTag


class Provenance(str, Enum):
    DEFINITION = "definition"
    MORPH_SECTION = "morph-section"
    MORPHYNET = "morphynet"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Definition:
    """The gloss carried by a definition-provenance pair."""

    raw: str
    lemmatized: tuple[str, ...]


@dataclass(frozen=True, order=True)
class CandidatePair:
    lemma1: str
    cat1: PosTag
    lemma2: str
    cat2: PosTag
    provenance: Provenance = Provenance.DEFINITION
    definition: Definition | None = None
    always_retain: bool = False

    def __post_init__(self) -> None:
        if self.lemma1 == self.lemma2:
            raise ValueError("candidate pairs must relate distinct lemmas")
        has_def = self.definition is not None
        if has_def != (self.provenance is Provenance.DEFINITION):
            raise ValueError("definition present iff provenance is definition")
        if has_def and self.lemma1 not in self.definition.lemmatized:
            raise ValueError("lemma1 must occur in the lemmatized definition")

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.lemma1, self.cat1.value, self.lemma2, self.cat2.value)


def build_lexicon_index(
    records: Iterable[DictionaryRecord],
) -> dict[str, set[PosTag]]:
    """Map every known lemma to its attested POS tags."""
    index: dict[str, set[PosTag]] = {}
    for record in records:
        index.setdefault(record.lemma, set()).add(record.pos)
    return index


def _gloss_tokens(gloss: Gloss) -> tuple[str, ...]:
    return gloss.tokens()


def pairs_from_definitions(
    records: Iterable[DictionaryRecord],
    lexicon_index: dict[str, set[PosTag]],
    stop_tokens: frozenset[str] = frozenset(),
) -> list[CandidatePair]:
    """Pairs (definition word, headword) for every indexed definition token.

    Tokens of length one, tokens containing spaces (multi-word lemmas are
    indexed as headwords but never matched inside definitions), and tokens
    on the stop list are not matched; the stop list is a performance knob
    whose effect must be absorbed by the later filters.  A POS-ambiguous
    token yields one candidate per attested POS.  When the same
    (lemma1, cat1, lemma2, cat2) arises from several glosses, the first
    definition in input order wins.
    """
    out: dict[tuple[str, str, str, str], CandidatePair] = {}
    for record in records:
        for gloss in record.glosses:
            tokens = _gloss_tokens(gloss)
            definition = Definition(raw=gloss.raw, lemmatized=tokens)
            seen_tokens: set[str] = set()
            for token in tokens:
                if len(token) <= 1 or " " in token or token in stop_tokens:
                    continue
                if token == record.lemma or token in seen_tokens:
                    continue
                seen_tokens.add(token)
                for pos in sorted(lexicon_index.get(token, ()), key=str):
                    pair = CandidatePair(
                        lemma1=token,
                        cat1=pos,
                        lemma2=record.lemma,
                        cat2=record.pos,
                        provenance=Provenance.DEFINITION,
                        definition=definition,
                    )
                    out.setdefault(pair.key, pair)
    return sorted(out.values())


def pairs_from_morph_sections(
    records: Iterable[DictionaryRecord],
    lexicon_index: dict[str, set[PosTag]],
) -> list[CandidatePair]:
    """Pairs (headword, section member) for resolvable derived/related lemmas."""
    out: set[CandidatePair] = set()
    for record in records:
        for member in dict.fromkeys(record.derived + record.related):
            if member == record.lemma:
                continue
            for pos in sorted(lexicon_index.get(member, ()), key=str):
                out.add(
                    CandidatePair(
                        lemma1=record.lemma,
                        cat1=record.pos,
                        lemma2=member,
                        cat2=pos,
                        provenance=Provenance.MORPH_SECTION,
                    )
                )
    return sorted(out)


def pairs_from_morphynet(rows: Iterable[MorphyNetRow]) -> list[CandidatePair]:
    """Symmetrized always-retain pairs from MorphyNet relation rows."""
    out: set[CandidatePair] = set()
    for row in rows:
        if row.source_lemma == row.target_lemma:
            continue
        out.add(
            CandidatePair(
                lemma1=row.source_lemma,
                cat1=row.source_pos,
                lemma2=row.target_lemma,
                cat2=row.target_pos,
                provenance=Provenance.MORPHYNET,
                always_retain=True,
            )
        )
        out.add(
            CandidatePair(
                lemma1=row.target_lemma,
                cat1=row.target_pos,
                lemma2=row.source_lemma,
                cat2=row.source_pos,
                provenance=Provenance.MORPHYNET,
                always_retain=True,
            )
        )
    return sorted(out)


_PRIORITY = {
    Provenance.DEFINITION: 0,
    Provenance.MORPH_SECTION: 1,
    Provenance.MORPHYNET: 2,
}


def merge_candidates(
    groups: Iterable[Iterable[CandidatePair]],
) -> list[CandidatePair]:
    """Merge per-provenance candidate sets into one pair per ordered key.

    A pair attested by several sources keeps the definition payload of its
    definition-provenance occurrence (highest priority), and is always-retain
    as soon as any source is MorphyNet.
    """
    merged: dict[tuple[str, str, str, str], CandidatePair] = {}
    for group in groups:
        for pair in group:
            current = merged.get(pair.key)
            if current is None:
                merged[pair.key] = pair
                continue
            retain = current.always_retain or pair.always_retain
            primary = min((current, pair), key=lambda p: _PRIORITY[p.provenance])
            if primary.always_retain != retain:
                primary = replace(primary, always_retain=retain)
            merged[pair.key] = primary
    return sorted(merged.values())


def iter_definition_pairs(
    pairs: Iterable[CandidatePair],
) -> Iterator[CandidatePair]:
    for pair in pairs:
        if pair.definition is not None:
            yield pair
