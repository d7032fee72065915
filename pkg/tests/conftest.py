from __future__ import annotations

from pathlib import Path

import pytest

from derivlex.candidates import CandidatePair, Definition, Provenance
from derivlex.ingest import PosTag

ROOT = Path(__file__).resolve().parents[1]
MINI_DIR = ROOT / "data" / "mini"
GOLDEN_DIR = ROOT / "tests" / "golden"


@pytest.fixture(scope="session")
def mini_config_path() -> Path:
    return MINI_DIR / "config.toml"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


def make_pair(
    lemma1: str,
    lemma2: str,
    cat1: PosTag = PosTag.N,
    cat2: PosTag = PosTag.N,
    provenance: Provenance = Provenance.MORPH_SECTION,
    definition: tuple[str, tuple[str, ...]] | None = None,
    always_retain: bool = False,
) -> CandidatePair:
    return CandidatePair(
        lemma1=lemma1,
        cat1=cat1,
        lemma2=lemma2,
        cat2=cat2,
        provenance=provenance,
        definition=None if definition is None else Definition(*definition),
        always_retain=always_retain,
    )
