"""Command-line interface.

Subcommands: build, stats, rivalry, backform, symmetry, triangles, stolons,
convert.  ``build`` runs the full pipeline from a TOML config and/or flags
(flags win); the analysis subcommands read a directory holding pairs.tsv and
defs.tsv and print TSV reports, or JSON with ``--json``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import analysis, ingest, lexicon, pipeline
from .config import BuildConfig, ConfigError, load_config
from .patterns import PatternError, pattern_pair

log = logging.getLogger(__name__)


def _add_build_parser(subparsers) -> None:
    p = subparsers.add_parser("build", help="run the full lexicon build")
    p.add_argument("--config", type=Path, help="TOML config file")
    p.add_argument("--kaikki", type=Path, action="append", default=[])
    p.add_argument("--morphynet", type=Path, action="append", default=[])
    p.add_argument("--normalized", type=Path, action="append", default=[])
    p.add_argument("--language", help="informational language tag")
    p.add_argument("--out-dir", type=Path)
    p.add_argument("--min-bucket", type=int)
    p.add_argument("--min-pattern-support", type=int)
    p.add_argument("--max-slots", type=int)
    p.add_argument("--max-partners", type=int)
    p.add_argument("--count-morphynet-in-buckets", action="store_true", default=None)
    p.add_argument("--fold-case", action="store_true", default=None,
                   help="casefold lemmas for signature bucketing")
    p.add_argument("--stop-token-list", type=Path)
    p.add_argument("--threads", type=int)
    p.add_argument("--lenient", action="store_true", default=None,
                   help="skip invalid rows when reading instead of failing")
    p.add_argument("--skip-report", type=Path)
    p.add_argument("--stats-json", type=Path)
    p.add_argument("--dump-candidates", type=Path,
                   help="write the merged candidate pairs as a debug TSV")
    p.add_argument("--dump-patterns", type=Path,
                   help="write pattern support/pair-count diagnostics as TSV")
    p.add_argument("--dump-faps", type=Path,
                   help="write each pair's ranked patterns (winner and runners-up)")


def _build_config(args: argparse.Namespace) -> BuildConfig:
    overrides: dict[str, object] = {}
    for flag, key in [
        ("kaikki", "kaikki"),
        ("morphynet", "morphynet"),
        ("normalized", "normalized"),
    ]:
        paths = getattr(args, flag)
        if paths:
            overrides[key] = tuple(paths)
    for flag in [
        "language", "out_dir", "min_bucket", "min_pattern_support", "max_slots",
        "max_partners", "count_morphynet_in_buckets", "fold_case", "stop_token_list",
        "threads", "skip_report", "stats_json", "dump_candidates", "dump_patterns",
        "dump_faps",
    ]:
        value = getattr(args, flag)
        if value is not None:
            overrides[flag] = value
    if args.lenient:
        overrides["strict"] = False
    if args.config is not None:
        base = load_config(args.config)
        return replace(base, **overrides)  # type: ignore[arg-type]
    return BuildConfig(**overrides)  # type: ignore[arg-type]


def cmd_build(args: argparse.Namespace) -> int:
    try:
        config = _build_config(args)
    except (ConfigError, TypeError) as exc:
        print(f"error: [config] {exc}", file=sys.stderr)
        return 2
    try:
        summary = pipeline.build(config)
    except pipeline.StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in summary.lines():
        print(line)
    return 0


def _read_tables_or_exit(directory: Path, strict: bool):
    report: list[str] = []
    try:
        entries, defs = lexicon.read_tables(directory, strict=strict, report=report)
    except lexicon.LexiconFormatError as exc:
        print(f"error: [read] {exc}", file=sys.stderr)
        raise SystemExit(1)
    for line in report:
        print(f"skipped: {line}", file=sys.stderr)
    return entries, defs


def _table_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("directory", type=Path, help="directory with pairs.tsv and defs.tsv")
    p.add_argument("--lenient", action="store_true",
                   help="skip invalid rows instead of failing")
    p.add_argument("--json", action="store_true", help="emit a JSON summary")


def cmd_stats(args: argparse.Namespace) -> int:
    entries, defs = _read_tables_or_exit(args.directory, not args.lenient)
    stats = lexicon.compute_stats(entries, defs)
    if args.json:
        print(json.dumps(stats.to_dict(), sort_keys=True))
    else:
        print(stats.to_text())
    return 0


def cmd_rivalry(args: argparse.Namespace) -> int:
    _, defs = _read_tables_or_exit(args.directory, not args.lenient)
    rivals = analysis.rivalry(defs, args.min_patterns, args.min_support)
    if args.json:
        out = [
            {
                "template": template.render(),
                "cat1": template.cat1.value,
                "cat2": template.cat2.value,
                "patterns": sorted(p.render() for p in patterns),
            }
            for template, patterns in sorted(rivals.items())
        ]
        print(json.dumps(out))
        return 0
    for template, patterns in sorted(rivals.items()):
        for pattern in sorted(patterns):
            print(
                f"{template.render()}\t{template.cat1}\t{template.cat2}"
                f"\t{pattern.left.render()}\t{pattern.right.render()}"
            )
    return 0


def cmd_backform(args: argparse.Namespace) -> int:
    _, defs = _read_tables_or_exit(args.directory, not args.lenient)
    flagged = analysis.detect_backformation(
        defs, require_longer_source=not args.no_length_filter
    )
    if args.json:
        out = [
            {
                "lemma1": row.lemma1, "cat1": row.cat1.value,
                "lemma2": row.lemma2, "cat2": row.cat2.value,
                "exponent1": row.exponent1.render(),
                "exponent2": row.exponent2.render(),
                "forward": count.forward, "backward": count.backward,
            }
            for row, count in flagged
        ]
        print(json.dumps(out))
        return 0
    for row, count in flagged:
        print(
            f"{row.lemma1}\t{row.cat1}\t{row.lemma2}\t{row.cat2}"
            f"\t{row.exponent1.render()}\t{row.exponent2.render()}"
            f"\t{count.forward}\t{count.backward}"
        )
    return 0


def cmd_symmetry(args: argparse.Namespace) -> int:
    _, defs = _read_tables_or_exit(args.directory, not args.lenient)
    result = analysis.mutual_motivation(defs)
    if args.json:
        print(
            json.dumps(
                {
                    "mutual_pairs": result.mutual_count,
                    "defined_rows": result.defined_rows,
                    "defined_pair_sets": result.defined_pair_sets,
                    "ratio": result.ratio,
                    "ratio_sets": result.ratio_sets,
                }
            )
        )
        return 0
    for (l1, c1), (l2, c2) in result.pairs:
        print(f"{l1}\t{c1}\t{l2}\t{c2}")
    print(
        f"# mutual={result.mutual_count} defined_rows={result.defined_rows} "
        f"ratio={result.ratio:.3f}"
    )
    return 0


def cmd_triangles(args: argparse.Namespace) -> int:
    _, defs = _read_tables_or_exit(args.directory, not args.lenient)
    census = analysis.triangle_census(analysis.DerivationGraph(defs))
    payload = {
        "transitive": census.transitive_count,
        "cycles": census.cycle_count,
        "two_edge_paths": census.two_edge_path_count,
        "transitive_ratio": census.transitive_ratio,
        "cycle_ratio": census.cycle_ratio,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}\t{value}")
    return 0


def cmd_stolons(args: argparse.Namespace) -> int:
    try:
        anchor = pattern_pair(args.left, args.right)
    except PatternError as exc:
        print(f"error: [anchor] {exc}", file=sys.stderr)
        return 2
    _, defs = _read_tables_or_exit(args.directory, not args.lenient)
    alignments = analysis.find_stolons(
        analysis.DerivationGraph(defs), anchor, args.min_size
    )
    if args.json:
        out = [
            {
                "seed": [alignment.seed[0][0], alignment.seed[1][0]],
                "size": alignment.size,
                "members": [
                    [x[0], x[1].value, y[0], y[1].value]
                    for x, y in alignment.members
                ],
            }
            for alignment in alignments
        ]
        print(json.dumps(out))
        return 0
    for index, alignment in enumerate(alignments):
        for (xl, xc), (yl, yc) in alignment.members:
            print(f"{index}\t{xl}\t{xc}\t{yl}\t{yc}")
    return 0


def cmd_convert(args: argparse.Namespace) -> int:
    try:
        lines = args.input.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"error: [convert] {exc}", file=sys.stderr)
        return 1
    skips = ingest.SkipLog(source=args.input.name)
    if args.input_format == "kaikki":
        records = list(ingest.parse_kaikki(lines, skips=skips))
    else:
        records = list(ingest.parse_normalized(lines, skips=skips))
    ingest.emit_normalized(records, args.output)
    if args.skip_report is not None:
        skips.write(args.skip_report)
    print(f"converted: records={len(records)} skipped={skips.count}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derivlex",
        description="Build and analyze derivational-morphology lexicons.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    subparsers = parser.add_subparsers(dest="command", required=True)

    _add_build_parser(subparsers)

    for name, func, description in [
        ("stats", cmd_stats, "table sizes and definition coverage"),
        ("backform", cmd_backform, "rows opposing their majority orientation"),
        ("symmetry", cmd_symmetry, "mutually motivated pairs"),
        ("triangles", cmd_triangles, "transitive/cyclic triangle census"),
    ]:
        p = subparsers.add_parser(name, help=description)
        _table_args(p)
        if name == "backform":
            p.add_argument("--no-length-filter", action="store_true",
                           help="do not require lemma1 to be longer than lemma2")
        p.set_defaults(func=func)

    p = subparsers.add_parser("rivalry", help="rival patterns per definition template")
    _table_args(p)
    p.add_argument("--min-patterns", type=int, default=2)
    p.add_argument("--min-support", type=int, default=1)
    p.set_defaults(func=cmd_rivalry)

    p = subparsers.add_parser("stolons", help="aligned families sharing one pattern")
    _table_args(p)
    p.add_argument("--left", required=True, help="anchor left pattern, e.g. ^(.+)$")
    p.add_argument("--right", required=True, help="anchor right pattern, e.g. ^des(.+)$")
    p.add_argument("--min-size", type=int, default=4)
    p.set_defaults(func=cmd_stolons)

    p = subparsers.add_parser("convert", help="convert a dump to normalized JSONL")
    p.add_argument("--from", dest="input_format", choices=["kaikki", "normalized"],
                   default="kaikki")
    p.add_argument("--skip-report", type=Path)
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.set_defaults(func=cmd_convert)

    subparsers.choices["build"].set_defaults(func=cmd_build)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
