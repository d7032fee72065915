"""Materialize, serialize, and reload the two output tables.

``pairs.tsv`` holds one row per ordered lemma pair (lemma1, cat1, lemma2,
cat2, stem, exponent1, exponent2) and is symmetric: every row is accompanied
by its mirror with swapped lemmas, categories, and exponents.  ``defs.tsv``
is the oriented subset whose second lemma has a definition containing the
first; it adds the definition in original and lemmatized form.  Both files
are UTF-8 TSV with a header row and rows sorted by (lemma1, cat1, lemma2,
cat2), which makes the byte layout reproducible.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .candidates import Provenance
from .config import TMPDIR_ENV
from .fap import FapAnnotation
from .ingest import PosTag
from .patterns import Pattern, apply_pattern, parse_pattern

PAIRS_FILE = "pairs.tsv"
DEFS_FILE = "defs.tsv"
PAIRS_HEADER = ("lemma1", "cat1", "lemma2", "cat2", "stem", "exponent1", "exponent2")
DEFS_HEADER = PAIRS_HEADER + ("definition2", "lemmatized_definition2")


class LexiconFormatError(ValueError):
    """A table fails to parse or a row violates an entry invariant."""


def _flatten(text: str) -> str:
    """Tabs/newlines would break the TSV layout; collapse them to spaces."""
    return text.replace("\t", " ").replace("\n", " ").replace("\r", " ")


@dataclass(frozen=True, order=True)
class LexiconEntry:
    lemma1: str
    cat1: PosTag
    lemma2: str
    cat2: PosTag
    stem: str
    exponent1: Pattern
    exponent2: Pattern

    def __post_init__(self) -> None:
        left = apply_pattern(self.exponent1, self.lemma1)
        right = apply_pattern(self.exponent2, self.lemma2)
        if left is None or right is None or left != right:
            raise LexiconFormatError(
                f"exponents do not describe ({self.lemma1}, {self.lemma2}): "
                f"{self.exponent1.render()} / {self.exponent2.render()}"
            )
        if "".join(left) != self.stem:
            raise LexiconFormatError(
                f"stem {self.stem!r} != shared captures {''.join(left)!r}"
            )

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.lemma1, self.cat1.value, self.lemma2, self.cat2.value)

    def mirrored(self) -> "LexiconEntry":
        return LexiconEntry(
            lemma1=self.lemma2,
            cat1=self.cat2,
            lemma2=self.lemma1,
            cat2=self.cat1,
            stem=self.stem,
            exponent1=self.exponent2,
            exponent2=self.exponent1,
        )

    def row(self) -> tuple[str, ...]:
        return (
            self.lemma1,
            self.cat1.value,
            self.lemma2,
            self.cat2.value,
            self.stem,
            self.exponent1.render(),
            self.exponent2.render(),
        )


@dataclass(frozen=True, order=True)
class DefEntry(LexiconEntry):
    definition2: str = ""
    lemmatized_definition2: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.definition2:
            raise LexiconFormatError("defs rows need a definition")
        if self.lemma1 not in self.lemmatized_definition2:
            raise LexiconFormatError(
                f"lemma1 {self.lemma1!r} missing from the lemmatized definition"
            )

    def row(self) -> tuple[str, ...]:
        return super().row() + (
            self.definition2,
            " ".join(self.lemmatized_definition2),
        )


@dataclass(frozen=True)
class BuildStats:
    ordered_pairs: int
    defs: int
    pair_sets: int
    defs_pair_sets: int

    @property
    def ratio_ordered(self) -> float:
        return round(self.defs / self.ordered_pairs, 3) if self.ordered_pairs else 0.0

    @property
    def ratio_sets(self) -> float:
        return round(self.defs_pair_sets / self.pair_sets, 3) if self.pair_sets else 0.0

    def to_dict(self) -> dict[str, float | int]:
        return {
            "ordered_pairs": self.ordered_pairs,
            "defs": self.defs,
            "ratio": self.ratio_ordered,
            "pair_sets": self.pair_sets,
            "defs_pair_sets": self.defs_pair_sets,
            "ratio_sets": self.ratio_sets,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        rows = [
            ("ordered pairs", f"{self.ordered_pairs}"),
            ("defs", f"{self.defs}"),
            ("ratio", f"{self.ratio_ordered:.3f}"),
            ("pair sets", f"{self.pair_sets}"),
            ("defs pair sets", f"{self.defs_pair_sets}"),
            ("ratio (sets)", f"{self.ratio_sets:.3f}"),
        ]
        width = max(len(label) for label, _ in rows)
        return "\n".join(f"{label:<{width}}  {value}" for label, value in rows)


def _unordered(key: tuple[str, str, str, str]) -> tuple[tuple[str, str], tuple[str, str]]:
    a = (key[0], key[1])
    b = (key[2], key[3])
    return (a, b) if a <= b else (b, a)


def materialize(
    annotations: Iterable[FapAnnotation],
) -> tuple[set[LexiconEntry], set[DefEntry]]:
    """Build the two tables from validated pattern annotations.

    Every annotation contributes its row plus the mirrored row.  When both
    orientations of an unordered pair were annotated independently, the
    orientation with the smaller (lemma1, cat1, lemma2, cat2) key is
    authoritative and the other is derived by mirroring, so the table stays
    exactly symmetric even if tie-breaking chose differently per orientation.
    Definition-provenance annotations also yield a defs row, in their own
    orientation, carrying the authoritative exponents.
    """
    by_key: dict[tuple, FapAnnotation] = {}
    for ann in sorted(annotations, key=lambda a: a.pair):
        by_key.setdefault(ann.pair.key, ann)

    entries: dict[tuple, LexiconEntry] = {}
    for key in sorted(by_key):
        ann = by_key[key]
        mirror_key = (key[2], key[3], key[0], key[1])
        if mirror_key in entries:
            entry = entries[mirror_key].mirrored()
        else:
            entry = LexiconEntry(
                lemma1=ann.pair.lemma1,
                cat1=ann.pair.cat1,
                lemma2=ann.pair.lemma2,
                cat2=ann.pair.cat2,
                stem=ann.stem,
                exponent1=ann.pattern.left,
                exponent2=ann.pattern.right,
            )
        entries[key] = entry
        entries.setdefault(mirror_key, entry.mirrored())

    defs: set[DefEntry] = set()
    for key, ann in by_key.items():
        if ann.pair.provenance is not Provenance.DEFINITION:
            continue
        definition = ann.pair.definition
        assert definition is not None
        base = entries[key]
        defs.add(
            DefEntry(
                lemma1=base.lemma1,
                cat1=base.cat1,
                lemma2=base.lemma2,
                cat2=base.cat2,
                stem=base.stem,
                exponent1=base.exponent1,
                exponent2=base.exponent2,
                definition2=_flatten(definition.raw),
                lemmatized_definition2=tuple(
                    _flatten(t) for t in definition.lemmatized
                ),
            )
        )
    return set(entries.values()), defs


def _write_table(path: Path, header: tuple[str, ...], rows: Iterable[tuple[str, ...]]) -> None:
    # staged write so a failed build never leaves a truncated table behind;
    # DERIVLEX_TMPDIR overrides the staging directory (defaults to the target
    # directory so the final move stays on one filesystem)
    staging_dir = Path(os.environ.get(TMPDIR_ENV) or path.parent)
    staging_dir.mkdir(parents=True, exist_ok=True)
    fd, staged = tempfile.mkstemp(prefix=path.name + ".", dir=staging_dir)
    try:
        with open(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write("\t".join(header) + "\n")
            for row in rows:
                handle.write("\t".join(row) + "\n")
        shutil.move(staged, path)
    except BaseException:
        Path(staged).unlink(missing_ok=True)
        raise


def write_tables(
    entries: Iterable[LexiconEntry],
    defs: Iterable[DefEntry],
    out_dir: Path | str,
) -> tuple[Path, Path]:
    """Write pairs.tsv and defs.tsv with the canonical sort and rendering."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pairs_path = out / PAIRS_FILE
    defs_path = out / DEFS_FILE
    _write_table(
        pairs_path, PAIRS_HEADER, (e.row() for e in sorted(entries, key=lambda e: e.key))
    )
    _write_table(
        defs_path, DEFS_HEADER, (d.row() for d in sorted(defs, key=lambda d: d.key))
    )
    return pairs_path, defs_path


def _parse_pairs_row(fields: Sequence[str]) -> LexiconEntry:
    return LexiconEntry(
        lemma1=fields[0],
        cat1=PosTag(fields[1]),
        lemma2=fields[2],
        cat2=PosTag(fields[3]),
        stem=fields[4],
        exponent1=parse_pattern(fields[5]),
        exponent2=parse_pattern(fields[6]),
    )


def _parse_defs_row(fields: Sequence[str]) -> DefEntry:
    return DefEntry(
        lemma1=fields[0],
        cat1=PosTag(fields[1]),
        lemma2=fields[2],
        cat2=PosTag(fields[3]),
        stem=fields[4],
        exponent1=parse_pattern(fields[5]),
        exponent2=parse_pattern(fields[6]),
        definition2=fields[7],
        lemmatized_definition2=tuple(fields[8].split(" ")),
    )


def read_tables(
    directory: Path | str,
    *,
    strict: bool = True,
    report: list[str] | None = None,
    headerless: bool = False,
    pairs_columns: Sequence[str] = PAIRS_HEADER,
    defs_columns: Sequence[str] = DEFS_HEADER,
) -> tuple[set[LexiconEntry], set[DefEntry]]:
    """Load and validate both tables.

    Strict mode (default) raises LexiconFormatError on the first invalid row,
    including symmetry violations in pairs.tsv and defs rows without a
    matching pairs row.  Lenient mode skips invalid rows and appends one
    line per skip to ``report``.

    Published tables whose byte layout differs from ours can be read by
    passing ``headerless=True`` and/or a column permutation in
    ``pairs_columns``/``defs_columns`` naming the canonical columns in the
    order the file uses.
    """
    directory = Path(directory)
    report = report if report is not None else []

    def load(path: Path, header: tuple[str, ...], columns: Sequence[str], parse) -> list:
        if sorted(columns) != sorted(header):
            raise LexiconFormatError(
                f"{path.name}: column mapping must permute {header}"
            )
        reorder = [tuple(columns).index(name) for name in header]
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise LexiconFormatError(f"cannot read {path}: {exc}") from exc
        lines = text.splitlines()
        first_row = 1
        if not headerless:
            if not lines or tuple(lines[0].split("\t")) != tuple(columns):
                raise LexiconFormatError(f"{path.name}: missing or wrong header")
            lines = lines[1:]
            first_row = 2
        rows = []
        for line_no, line in enumerate(lines, first_row):
            fields = line.split("\t")
            if len(fields) != len(header):
                problem = f"{path.name}:{line_no}: expected {len(header)} fields"
            else:
                try:
                    rows.append((line_no, parse([fields[i] for i in reorder])))
                    continue
                except (LexiconFormatError, ValueError) as exc:
                    problem = f"{path.name}:{line_no}: {exc}"
            if strict:
                raise LexiconFormatError(problem)
            report.append(problem)
        return rows

    pair_rows = load(directory / PAIRS_FILE, PAIRS_HEADER, pairs_columns, _parse_pairs_row)
    def_rows = load(directory / DEFS_FILE, DEFS_HEADER, defs_columns, _parse_defs_row)

    entries = {e.key: e for _, e in pair_rows}
    kept_entries: set[LexiconEntry] = set()
    for line_no, entry in pair_rows:
        mirror_key = (entry.lemma2, entry.cat2.value, entry.lemma1, entry.cat1.value)
        if mirror_key not in entries:
            problem = f"{PAIRS_FILE}:{line_no}: missing mirror row for {entry.key}"
            if strict:
                raise LexiconFormatError(problem)
            report.append(problem)
            continue
        kept_entries.add(entry)

    kept_keys = {e.key for e in kept_entries}
    kept_defs: set[DefEntry] = set()
    for line_no, def_entry in def_rows:
        if def_entry.key not in kept_keys:
            problem = f"{DEFS_FILE}:{line_no}: no pairs row for {def_entry.key}"
            if strict:
                raise LexiconFormatError(problem)
            report.append(problem)
            continue
        kept_defs.add(def_entry)
    return kept_entries, kept_defs


def compute_stats(
    entries: Iterable[LexiconEntry], defs: Iterable[DefEntry]
) -> BuildStats:
    """Ordered/unordered pair counts plus definition coverage."""
    entry_keys = {e.key for e in entries}
    def_keys = {d.key for d in defs}
    pair_sets = {_unordered(k) for k in entry_keys}
    defs_pair_sets = {_unordered(k) for k in def_keys}
    return BuildStats(
        ordered_pairs=len(entry_keys),
        defs=len(def_keys),
        pair_sets=len(pair_sets),
        defs_pair_sets=len(defs_pair_sets),
    )
