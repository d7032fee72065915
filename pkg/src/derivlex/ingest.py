"""Parsers turning supported dump formats into normalized dictionary records.

Three line-oriented formats are read:

* Kaikki JSONL: one headword entry per line; fields used are ``word``,
  ``pos``, ``senses[].glosses[]``, ``derived[].word``, ``related[].word``.
* MorphyNet TSV: at least four tab-separated columns, assumed to be
  source lemma, target lemma, source POS, target POS; extra columns (affix,
  process type) are ignored.
* Normalized JSONL, the canonical interchange format::

      {"lemma": str, "pos": "N|V|A|R",
       "glosses": [{"raw": str, "lemmatized": [str]?}],
       "derived": [str], "related": [str]}

All lemmas and gloss tokens are NFC-normalized at ingest; lemmatized tokens
are lowercased.  Lines that cannot be parsed are counted and reported rather
than aborting the stream, so skip count + yield count equals the line count.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Iterator


class PosTag(str, Enum):
    N = "N"
    V = "V"
    A = "A"
    R = "R"

    def __str__(self) -> str:
        return self.value


# Accepts both Kaikki long names and already-short tags (MorphyNet rows and
# normalized records); everything else is dropped with a skip report.
DEFAULT_POS_MAP: dict[str, PosTag] = {
    "noun": PosTag.N,
    "verb": PosTag.V,
    "adj": PosTag.A,
    "adv": PosTag.R,
    "adjective": PosTag.A,
    "adverb": PosTag.R,
    "N": PosTag.N,
    "V": PosTag.V,
    "A": PosTag.A,
    "R": PosTag.R,
}


class IngestError(ValueError):
    """A record violates the normalized schema or a type invariant."""


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class Gloss:
    raw: str
    lemmatized: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not self.raw:
            raise IngestError("gloss raw text must be non-empty")
        if self.lemmatized is not None:
            if not self.lemmatized or any(not t for t in self.lemmatized):
                raise IngestError("lemmatized gloss must be non-empty tokens")

    def tokens(self) -> tuple[str, ...]:
        """Lemmatized tokens, falling back to naive surface tokenization."""
        if self.lemmatized is not None:
            return self.lemmatized
        return tuple(default_lemmatize(self.raw))


@dataclass(frozen=True)
class DictionaryRecord:
    lemma: str
    pos: PosTag
    glosses: tuple[Gloss, ...] = ()
    derived: tuple[str, ...] = ()
    related: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.lemma or "\t" in self.lemma or "\n" in self.lemma:
            raise IngestError(f"bad lemma: {self.lemma!r}")
        if not isinstance(self.pos, PosTag):
            raise IngestError(f"bad pos: {self.pos!r}")


@dataclass(frozen=True)
class MorphyNetRow:
    source_lemma: str
    target_lemma: str
    source_pos: PosTag
    target_pos: PosTag

    def __post_init__(self) -> None:
        if not self.source_lemma or not self.target_lemma:
            raise IngestError("MorphyNet lemmas must be non-empty")


@dataclass
class SkipLog:
    """Collects (line number, reason) entries for one input stream."""

    source: str = ""
    entries: list[tuple[int, str]] = field(default_factory=list)

    def add(self, line_no: int, reason: str) -> None:
        if self.source:
            reason = f"{reason} [{self.source}]"
        self.entries.append((line_no, reason))

    @property
    def count(self) -> int:
        return len(self.entries)

    def write(self, path: Path | str, append: bool = False) -> None:
        mode = "a" if append else "w"
        with open(path, mode, encoding="utf-8", newline="") as handle:
            for line_no, reason in self.entries:
                handle.write(f"{line_no}\t{reason}\n")


_TOKEN_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)


def default_lemmatize(text: str) -> list[str]:
    """Fallback gloss tokenization: lowercase, punctuation split off, no stemming.

    Used only when a gloss carries no lemmatized form; definition tokens then
    match headword lemmas on surface form only (e.g. "accusing" will not
    match the lemma "accuse"), a documented recall loss of the fallback.
    """
    return [_nfc(tok.lower()) for tok in _TOKEN_RE.findall(text)]


def _map_pos(raw_pos: Any, pos_map: dict[str, PosTag]) -> PosTag | None:
    if not isinstance(raw_pos, str):
        return None
    return pos_map.get(raw_pos)


def _clean_lemma(raw: Any) -> str | None:
    if not isinstance(raw, str):
        return None
    lemma = _nfc(raw)
    if not lemma or "\t" in lemma or "\n" in lemma:
        return None
    return lemma


def parse_kaikki(
    lines: Iterable[str],
    *,
    pos_map: dict[str, PosTag] | None = None,
    skips: SkipLog | None = None,
) -> Iterator[DictionaryRecord]:
    """Parse Kaikki JSONL lines into records, skipping what cannot be mapped."""
    pos_map = pos_map if pos_map is not None else DEFAULT_POS_MAP
    skips = skips if skips is not None else SkipLog()
    for line_no, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped:
            skips.add(line_no, "empty line")
            continue
        try:
            entry = json.loads(stripped)
        except json.JSONDecodeError as exc:
            skips.add(line_no, f"malformed JSON: {exc.msg}")
            continue
        if not isinstance(entry, dict):
            skips.add(line_no, "not a JSON object")
            continue
        lemma = _clean_lemma(entry.get("word"))
        if lemma is None:
            skips.add(line_no, "missing or invalid lemma")
            continue
        pos = _map_pos(entry.get("pos"), pos_map)
        if pos is None:
            skips.add(line_no, f"unmappable POS: {entry.get('pos')!r}")
            continue
        glosses = []
        for sense in entry.get("senses") or []:
            if not isinstance(sense, dict):
                continue
            for text in sense.get("glosses") or []:
                if isinstance(text, str) and text:
                    glosses.append(Gloss(raw=_nfc(text)))
        def _words(key: str) -> tuple[str, ...]:
            out = []
            for item in entry.get(key) or []:
                if isinstance(item, dict):
                    word = _clean_lemma(item.get("word"))
                    if word:
                        out.append(word)
            return tuple(out)
        yield DictionaryRecord(
            lemma=lemma,
            pos=pos,
            glosses=tuple(glosses),
            derived=_words("derived"),
            related=_words("related"),
        )


def parse_morphynet(
    lines: Iterable[str],
    *,
    pos_map: dict[str, PosTag] | None = None,
    skips: SkipLog | None = None,
) -> Iterator[MorphyNetRow]:
    """Parse MorphyNet TSV lines; the parser is stateless, dedup is downstream."""
    pos_map = pos_map if pos_map is not None else DEFAULT_POS_MAP
    skips = skips if skips is not None else SkipLog()
    for line_no, line in enumerate(lines, 1):
        stripped = line.rstrip("\n")
        if not stripped.strip():
            skips.add(line_no, "empty line")
            continue
        fields = stripped.split("\t")
        if len(fields) < 4:
            skips.add(line_no, f"expected >= 4 fields, got {len(fields)}")
            continue
        source = _clean_lemma(fields[0])
        target = _clean_lemma(fields[1])
        source_pos = _map_pos(fields[2], pos_map)
        target_pos = _map_pos(fields[3], pos_map)
        if source is None or target is None:
            skips.add(line_no, "missing lemma")
            continue
        if source_pos is None or target_pos is None:
            skips.add(line_no, f"unmappable POS: {fields[2]!r}/{fields[3]!r}")
            continue
        yield MorphyNetRow(source, target, source_pos, target_pos)


def _parse_normalized_gloss(obj: Any) -> Gloss:
    if not isinstance(obj, dict) or set(obj) - {"raw", "lemmatized"}:
        raise IngestError("gloss must be an object with raw and optional lemmatized")
    raw = obj.get("raw")
    if not isinstance(raw, str) or not raw:
        raise IngestError("gloss raw must be a non-empty string")
    lemmatized = obj.get("lemmatized")
    if lemmatized is None:
        return Gloss(raw=_nfc(raw))
    if (
        not isinstance(lemmatized, list)
        or not lemmatized
        or any(not isinstance(t, str) or not t for t in lemmatized)
    ):
        raise IngestError("lemmatized must be a non-empty list of non-empty strings")
    return Gloss(raw=_nfc(raw), lemmatized=tuple(_nfc(t.lower()) for t in lemmatized))


_RECORD_KEYS = {"lemma", "pos", "glosses", "derived", "related"}


def record_from_json(entry: Any) -> DictionaryRecord:
    """Validate one normalized-JSONL object against the record schema."""
    if not isinstance(entry, dict) or set(entry) - _RECORD_KEYS:
        raise IngestError("record must be an object with the documented keys only")
    lemma = _clean_lemma(entry.get("lemma"))
    if lemma is None:
        raise IngestError("missing or invalid lemma")
    pos_raw = entry.get("pos")
    if pos_raw not in ("N", "V", "A", "R"):
        raise IngestError(f"pos must be one of N/V/A/R, got {pos_raw!r}")
    glosses = entry.get("glosses", [])
    if not isinstance(glosses, list):
        raise IngestError("glosses must be a list")
    def _lemmas(key: str) -> tuple[str, ...]:
        items = entry.get(key, [])
        if not isinstance(items, list) or any(
            not isinstance(w, str) for w in items
        ):
            raise IngestError(f"{key} must be a list of strings")
        cleaned = [_clean_lemma(w) for w in items]
        if any(w is None for w in cleaned):
            raise IngestError(f"{key} contains an invalid lemma")
        return tuple(w for w in cleaned if w is not None)
    return DictionaryRecord(
        lemma=lemma,
        pos=PosTag(pos_raw),
        glosses=tuple(_parse_normalized_gloss(g) for g in glosses),
        derived=_lemmas("derived"),
        related=_lemmas("related"),
    )


def parse_normalized(
    lines: Iterable[str],
    *,
    skips: SkipLog | None = None,
) -> Iterator[DictionaryRecord]:
    """Parse the canonical interchange format; schema violations are skipped."""
    skips = skips if skips is not None else SkipLog()
    for line_no, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped:
            skips.add(line_no, "empty line")
            continue
        try:
            entry = json.loads(stripped)
        except json.JSONDecodeError as exc:
            skips.add(line_no, f"malformed JSON: {exc.msg}")
            continue
        try:
            yield record_from_json(entry)
        except IngestError as exc:
            skips.add(line_no, str(exc))


def record_to_json(record: DictionaryRecord) -> str:
    """Serialize one record to its canonical normalized-JSONL line."""
    obj: dict[str, Any] = {
        "lemma": record.lemma,
        "pos": record.pos.value,
        "glosses": [
            {"raw": g.raw, "lemmatized": list(g.lemmatized)}
            if g.lemmatized is not None
            else {"raw": g.raw}
            for g in record.glosses
        ],
        "derived": list(record.derived),
        "related": list(record.related),
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def emit_normalized(records: Iterable[DictionaryRecord], path: Path | str) -> int:
    """Write records as normalized JSONL; returns the record count."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for record in records:
            handle.write(record_to_json(record) + "\n")
            count += 1
    return count
