"""Build configuration: TOML file plus flag overrides, flags win."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

try:
    import tomllib  # type: ignore[import-not-found]
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib  # type: ignore[no-redef]

from .analogy import DEFAULT_MAX_SLOTS, DEFAULT_MIN_BUCKET
from .fap import DEFAULT_MIN_PATTERN_SUPPORT

THREADS_ENV = "DERIVLEX_THREADS"
TMPDIR_ENV = "DERIVLEX_TMPDIR"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BuildConfig:
    kaikki: tuple[Path, ...] = ()
    morphynet: tuple[Path, ...] = ()
    normalized: tuple[Path, ...] = ()
    language: str = ""
    min_bucket: int = DEFAULT_MIN_BUCKET
    min_pattern_support: int = DEFAULT_MIN_PATTERN_SUPPORT
    max_slots: int = DEFAULT_MAX_SLOTS
    max_partners: int | None = None
    count_morphynet_in_buckets: bool = False
    fold_case: bool = False
    stop_token_list: Path | None = None
    out_dir: Path = Path("build")
    threads: int = 0  # 0 = all cores
    strict: bool = True
    skip_report: Path | None = None  # default: out_dir/skip_report.tsv
    stats_json: Path | None = None  # default: out_dir/stats.json
    dump_candidates: Path | None = None  # optional candidates debug TSV
    dump_patterns: Path | None = None  # optional pattern-support diagnostics TSV
    dump_faps: Path | None = None  # optional per-pair pattern ranking TSV

    def __post_init__(self) -> None:
        for name in ("min_bucket", "min_pattern_support", "max_slots"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.max_partners is not None and self.max_partners < 1:
            raise ConfigError("max_partners must be >= 1")
        if not (self.kaikki or self.morphynet or self.normalized):
            raise ConfigError("at least one input is required")

    @property
    def effective_threads(self) -> int:
        if self.threads > 0:
            return self.threads
        env = os.environ.get(THREADS_ENV, "")
        if env.isdigit() and int(env) > 0:
            return int(env)
        return os.cpu_count() or 1

    @property
    def skip_report_path(self) -> Path:
        return self.skip_report or self.out_dir / "skip_report.tsv"

    @property
    def stats_json_path(self) -> Path:
        return self.stats_json or self.out_dir / "stats.json"

    def read_stop_tokens(self) -> frozenset[str]:
        if self.stop_token_list is None:
            return frozenset()
        tokens = set()
        for line in self.stop_token_list.read_text(encoding="utf-8").splitlines():
            token = line.strip()
            if token and not token.startswith("#"):
                tokens.add(token)
        return frozenset(tokens)


_PATH_LIST_KEYS = {"kaikki", "morphynet", "normalized"}
_PATH_KEYS = {
    "stop_token_list", "out_dir", "skip_report", "stats_json",
    "dump_candidates", "dump_patterns", "dump_faps",
}
_INT_KEYS = {"min_bucket", "min_pattern_support", "max_slots", "max_partners", "threads"}
_BOOL_KEYS = {"count_morphynet_in_buckets", "fold_case", "strict"}
_STR_KEYS = {"language"}


def load_config(path: Path | str, base: BuildConfig | None = None) -> BuildConfig:
    """Read a TOML config file; values give defaults later flags may override."""
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot load config {path}: {exc}") from exc
    updates: dict[str, object] = {}
    root = path.parent
    for key, value in data.items():
        if key in _PATH_LIST_KEYS:
            if isinstance(value, str):
                value = [value]
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ConfigError(f"{key} must be a path or list of paths")
            updates[key] = tuple(root / v for v in value)
        elif key in _PATH_KEYS:
            if not isinstance(value, str):
                raise ConfigError(f"{key} must be a path string")
            updates[key] = root / value
        elif key in _INT_KEYS:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"{key} must be an integer")
            updates[key] = value
        elif key in _BOOL_KEYS:
            if not isinstance(value, bool):
                raise ConfigError(f"{key} must be a boolean")
            updates[key] = value
        elif key in _STR_KEYS:
            if not isinstance(value, str):
                raise ConfigError(f"{key} must be a string")
            updates[key] = value
        else:
            raise ConfigError(f"unknown config key: {key}")
    if base is None:
        return BuildConfig(**updates)  # type: ignore[arg-type]
    return replace(base, **updates)  # type: ignore[arg-type]
