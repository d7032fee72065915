"""End-to-end build: ingest -> candidates -> buckets -> patterns -> tables.

The pipeline is deterministic for a given config: inputs are read in sorted
path order per format, every merge iterates sorted structures, and bucket
work scheduled on a thread pool is collected back in bucket-key order, so
thread count never changes the output bytes.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import analogy, candidates as cand, fap, ingest, lexicon
from .config import BuildConfig
from .patterns import PatternPair

log = logging.getLogger(__name__)


class StageError(RuntimeError):
    """A fatal pipeline failure, tagged with the stage it happened in."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass
class StageSummary:
    records: int = 0
    morphynet_rows: int = 0
    skipped_lines: int = 0
    candidates_by_provenance: dict[str, int] = field(default_factory=dict)
    merged_candidates: int = 0
    buckets_kept: int = 0
    buckets_dropped: int = 0
    pairs_in_kept_buckets: int = 0
    pattern_pairs_enumerated: int = 0
    pairs_with_patterns: int = 0
    pairs_after_generality: int = 0
    fallback_annotated: int = 0
    dropped_no_alternation: int = 0
    faps_selected: int = 0
    stats: lexicon.BuildStats | None = None

    def lines(self) -> list[str]:
        by_prov = ", ".join(
            f"{name}={count}"
            for name, count in sorted(self.candidates_by_provenance.items())
        )
        out = [
            f"ingest: records={self.records} morphynet_rows={self.morphynet_rows} "
            f"skipped={self.skipped_lines}",
            f"candidates: {by_prov} merged={self.merged_candidates}",
            f"buckets: kept={self.buckets_kept} dropped={self.buckets_dropped} "
            f"pairs_in_kept={self.pairs_in_kept_buckets}",
            f"patterns: enumerated={self.pattern_pairs_enumerated} "
            f"pairs_with_patterns={self.pairs_with_patterns}",
            f"generality filter: pairs_retained={self.pairs_after_generality}",
            f"always-retain fallback: annotated={self.fallback_annotated} "
            f"dropped_no_alternation={self.dropped_no_alternation}",
            f"faps: selected={self.faps_selected}",
        ]
        if self.stats is not None:
            out.append(
                "tables: "
                f"ordered_pairs={self.stats.ordered_pairs} defs={self.stats.defs} "
                f"pair_sets={self.stats.pair_sets} "
                f"defs_pair_sets={self.stats.defs_pair_sets}"
            )
        return out


def _read_lines(path: Path, stage: str) -> list[str]:
    try:
        return path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise StageError(stage, f"cannot read {path}: {exc}") from exc


def ingest_inputs(
    config: BuildConfig,
) -> tuple[list[ingest.DictionaryRecord], list[ingest.MorphyNetRow], list[ingest.SkipLog]]:
    """Parse all configured inputs, sorted by path within each format."""
    records: list[ingest.DictionaryRecord] = []
    rows: list[ingest.MorphyNetRow] = []
    skip_logs: list[ingest.SkipLog] = []

    def run(paths, parser, sink) -> None:
        for path in sorted(paths):
            skips = ingest.SkipLog(source=path.name)
            sink.extend(parser(_read_lines(path, "ingest"), skips=skips))
            skip_logs.append(skips)

    run(config.normalized, ingest.parse_normalized, records)
    run(config.kaikki, ingest.parse_kaikki, records)
    run(config.morphynet, ingest.parse_morphynet, rows)
    return records, rows, skip_logs


def write_skip_report(skip_logs: list[ingest.SkipLog], path: Path) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        total = 0
        for skips in skip_logs:
            for line_no, reason in skips.entries:
                handle.write(f"{line_no}\t{reason}\n")
                total += 1
    return total


def generate_candidates(
    records: list[ingest.DictionaryRecord],
    rows: list[ingest.MorphyNetRow],
    stop_tokens: frozenset[str],
    summary: StageSummary,
) -> list[cand.CandidatePair]:
    index = cand.build_lexicon_index(records)
    from_defs = cand.pairs_from_definitions(records, index, stop_tokens)
    from_sections = cand.pairs_from_morph_sections(records, index)
    from_morphynet = cand.pairs_from_morphynet(rows)
    summary.candidates_by_provenance = {
        "definition": len(from_defs),
        "morph-section": len(from_sections),
        "morphynet": len(from_morphynet),
    }
    merged = cand.merge_candidates([from_defs, from_sections, from_morphynet])
    summary.merged_candidates = len(merged)
    return merged


def enumerate_buckets(
    buckets: dict[analogy.AnalogySignature, list[cand.CandidatePair]],
    config: BuildConfig,
) -> dict[cand.CandidatePair, set[PatternPair]]:
    """Per-bucket pattern enumeration, parallel across buckets."""
    ordered = sorted(buckets)

    def work(sig: analogy.AnalogySignature):
        return analogy.enumerate_pattern_pairs(
            buckets[sig], config.max_slots, config.max_partners
        )

    merged: dict[cand.CandidatePair, set[PatternPair]] = {}
    threads = config.effective_threads
    if threads <= 1 or len(ordered) <= 1:
        results = map(work, ordered)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, ordered))
    for result in results:
        for pair, patterns in result.items():
            merged.setdefault(pair, set()).update(patterns)
    return merged


def annotate(
    retained: dict[cand.CandidatePair, set[PatternPair]],
    all_pairs: list[cand.CandidatePair],
    config: BuildConfig,
    summary: StageSummary,
) -> list[fap.FapAnnotation]:
    """Select one FAP per retained pair; always-retain pairs get a fallback."""
    annotations: list[fap.FapAnnotation] = []
    retained = dict(retained)
    fallback_pairs = [
        p for p in all_pairs if p.always_retain and p not in retained
    ]
    for pair in fallback_pairs:
        try:
            pattern = fap.minimal_alternation(
                pair.lemma1, pair.lemma2, config.max_slots
            )
        except fap.NoAlternation:
            summary.dropped_no_alternation += 1
            log.warning(
                "dropping always-retain pair with no alternation: %s", pair.key
            )
            continue
        retained[pair] = {pattern}
        summary.fallback_annotated += 1

    expressions = set()
    for patterns in retained.values():
        for pp in patterns:
            expressions.add(pp.left)
            expressions.add(pp.right)
    stats = fap.compute_expression_stats(retained.keys(), expressions)
    if config.dump_patterns is not None:
        dump_patterns_tsv(retained, stats, config.dump_patterns)
    if config.dump_faps is not None:
        dump_faps_tsv(retained, stats, config.dump_faps)
    for pair in sorted(retained):
        annotations.append(fap.select_fap(pair, retained[pair], stats))
    summary.faps_selected = len(annotations)
    return annotations


def dump_candidates_tsv(pairs: list[cand.CandidatePair], path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for pair in pairs:
            handle.write(
                f"{pair.lemma1}\t{pair.cat1.value}\t{pair.lemma2}"
                f"\t{pair.cat2.value}\t{pair.provenance.value}\n"
            )


def dump_patterns_tsv(
    retained: dict[cand.CandidatePair, set[PatternPair]],
    stats: dict,
    path: Path,
) -> None:
    """Threshold-tuning diagnostics: pattern, combined support, pair count."""
    counts = fap.attribution_counts(retained)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for pattern in sorted(counts):
            support = stats[pattern.left].support + stats[pattern.right].support
            handle.write(f"{pattern.render()}\t{support}\t{counts[pattern]}\n")


def dump_faps_tsv(
    retained: dict[cand.CandidatePair, set[PatternPair]],
    stats: dict,
    path: Path,
) -> None:
    """Per-pair pattern ranking: the selected pattern plus its runners-up."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for pair in sorted(retained):
            ranked = fap.rank_patterns(retained[pair], stats)
            for rank, (pattern, score) in enumerate(ranked):
                handle.write(
                    f"{pair.lemma1}\t{pair.cat1.value}"
                    f"\t{pair.lemma2}\t{pair.cat2.value}"
                    f"\t{rank}\t{pattern.left.render()}"
                    f"\t{pattern.right.render()}\t{score}\n"
                )


def build(config: BuildConfig) -> StageSummary:
    """Run the full pipeline and write tables, stats, and the skip report."""
    summary = StageSummary()
    config.out_dir.mkdir(parents=True, exist_ok=True)

    records, rows, skip_logs = ingest_inputs(config)
    summary.records = len(records)
    summary.morphynet_rows = len(rows)
    summary.skipped_lines = write_skip_report(skip_logs, config.skip_report_path)

    try:
        stop_tokens = config.read_stop_tokens()
    except OSError as exc:
        raise StageError("candidates", f"cannot read stop list: {exc}") from exc
    merged = generate_candidates(records, rows, stop_tokens, summary)
    if config.dump_candidates is not None:
        dump_candidates_tsv(merged, config.dump_candidates)

    buckets = analogy.bucket_by_signature(
        merged,
        config.min_bucket,
        count_always_retain=config.count_morphynet_in_buckets,
        fold_case=config.fold_case,
    )
    all_bucket_count = len(
        {analogy.signature(p.lemma1, p.lemma2) for p in merged}
    )
    summary.buckets_kept = len(buckets)
    summary.buckets_dropped = all_bucket_count - len(buckets)
    summary.pairs_in_kept_buckets = sum(len(b) for b in buckets.values())

    enumerated = enumerate_buckets(buckets, config)
    summary.pairs_with_patterns = len(enumerated)
    summary.pattern_pairs_enumerated = len(
        {pp for patterns in enumerated.values() for pp in patterns}
    )

    retained = fap.filter_by_generality(enumerated, config.min_pattern_support)
    summary.pairs_after_generality = len(retained)

    annotations = annotate(retained, merged, config, summary)

    try:
        entries, defs = lexicon.materialize(annotations)
        lexicon.write_tables(entries, defs, config.out_dir)
        stats = lexicon.compute_stats(entries, defs)
        config.stats_json_path.write_text(stats.to_json(), encoding="utf-8")
    except (lexicon.LexiconFormatError, OSError, ValueError) as exc:
        raise StageError("lexicon", str(exc)) from exc
    summary.stats = stats
    return summary
