#!/usr/bin/env python3
"""Rebuild the golden tables in tests/golden/ from the bundled mini-corpus.

Run after any intentional change to the pipeline or the corpus, then review
the diff of tests/golden/ before committing.  Prints the stage summary and
a per-bucket audit so the regenerated tables can be sanity-checked by hand.
"""

from __future__ import annotations

import sys
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from dataclasses import replace  # noqa: E402

from derivlex import analogy, lexicon, pipeline  # noqa: E402
from derivlex.config import load_config  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"


def main() -> int:
    config = load_config(ROOT / "data" / "mini" / "config.toml")
    config = replace(config, out_dir=GOLDEN, threads=1)
    summary = pipeline.build(config)
    for line in summary.lines():
        print(line)

    print("\n-- bucket audit (kept buckets) --")
    records, rows, _ = pipeline.ingest_inputs(config)
    merged = pipeline.generate_candidates(
        records, rows, config.read_stop_tokens(), pipeline.StageSummary()
    )
    buckets = analogy.bucket_by_signature(merged, config.min_bucket)
    for sig in sorted(buckets):
        members = buckets[sig]
        sample = ", ".join(f"{p.lemma1}/{p.lemma2}" for p in members[:3])
        print(f"d={sig.edit_distance} {dict(sig.char_delta)} n={len(members)}: {sample} ...")

    print("\n-- exponent audit (pairs.tsv) --")
    entries, defs = lexicon.read_tables(GOLDEN)
    exponents = Counter(
        (e.exponent1.render(), e.exponent2.render()) for e in entries
    )
    for (e1, e2), n in sorted(exponents.items()):
        print(f"{n:4d}  {e1} / {e2}")
    print(f"\nentries={len(entries)} defs={len(defs)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
