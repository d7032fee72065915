"""Case-study analyses over loaded lexicon tables.

All five analyses read the oriented ``defs.tsv`` rows: definition templates
group rival alternation patterns, orientation minorities flag
back-formations, doubly-oriented rows are mutually motivated, the directed
graph of rows is censused for triangles, and aligned neighborhoods sharing
one alternation pattern are extracted as stolons.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable

from .ingest import PosTag
from .lexicon import DefEntry
from .patterns import PatternPair, apply_pattern, instantiate_pattern

PLACEHOLDER = "<W>"

Node = tuple[str, PosTag]


@dataclass(frozen=True, order=True)
class DefinitionTemplate:
    """A lemmatized definition with the defining lemma abstracted to <W>."""

    tokens: tuple[str, ...]
    cat1: PosTag
    cat2: PosTag

    def __post_init__(self) -> None:
        if PLACEHOLDER not in self.tokens:
            raise ValueError("template must contain the placeholder")

    def render(self) -> str:
        return " ".join(self.tokens)


def template_of(entry: DefEntry) -> DefinitionTemplate:
    """Replace every occurrence of lemma1 in the lemmatized definition."""
    tokens = tuple(
        PLACEHOLDER if tok == entry.lemma1 else tok
        for tok in entry.lemmatized_definition2
    )
    return DefinitionTemplate(tokens=tokens, cat1=entry.cat1, cat2=entry.cat2)


def rivalry(
    defs: Iterable[DefEntry],
    min_patterns: int = 2,
    min_support_per_pattern: int = 1,
) -> dict[DefinitionTemplate, set[PatternPair]]:
    """Rival alternation patterns grouped by shared definition template."""
    if min_patterns < 1 or min_support_per_pattern < 1:
        raise ValueError("thresholds must be >= 1")
    support: dict[DefinitionTemplate, Counter[PatternPair]] = defaultdict(Counter)
    for entry in defs:
        pattern = PatternPair(entry.exponent1, entry.exponent2)
        support[template_of(entry)][pattern] += 1
    out: dict[DefinitionTemplate, set[PatternPair]] = {}
    for template, counts in support.items():
        rivals = {
            p for p, n in counts.items() if n >= min_support_per_pattern
        }
        if len(rivals) >= min_patterns:
            out[template] = rivals
    return out


@dataclass(frozen=True)
class OrientationCount:
    pattern: PatternPair
    cat1: PosTag
    cat2: PosTag
    forward: int
    backward: int


def orientation_key(entry: DefEntry) -> tuple[str, str, str, str]:
    return (
        entry.exponent1.render(),
        entry.exponent2.render(),
        entry.cat1.value,
        entry.cat2.value,
    )


def detect_backformation(
    defs: Iterable[DefEntry],
    require_longer_source: bool = True,
) -> list[tuple[DefEntry, OrientationCount]]:
    """Rows whose pattern orientation opposes the majority orientation.

    ``forward`` counts rows with exactly this (exponent1, exponent2, cat1,
    cat2); ``backward`` counts the swapped orientation.  A row is flagged iff
    forward < backward, optionally also requiring lemma1 to be longer than
    lemma2.
    """
    rows = sorted(defs, key=lambda d: d.key)
    counts: Counter[tuple[str, str, str, str]] = Counter(
        orientation_key(r) for r in rows
    )
    flagged = []
    for row in rows:
        key = orientation_key(row)
        swapped = (key[1], key[0], key[3], key[2])
        forward = counts[key]
        backward = counts[swapped]
        if forward >= backward:
            continue
        if require_longer_source and len(row.lemma1) <= len(row.lemma2):
            continue
        flagged.append(
            (
                row,
                OrientationCount(
                    pattern=PatternPair(row.exponent1, row.exponent2),
                    cat1=row.cat1,
                    cat2=row.cat2,
                    forward=forward,
                    backward=backward,
                ),
            )
        )
    return flagged


@dataclass(frozen=True)
class MutualMotivationResult:
    pairs: tuple[tuple[Node, Node], ...]
    mutual_count: int
    defined_rows: int
    defined_pair_sets: int

    @property
    def ratio(self) -> float:
        """Mutual pairs over ordered defs rows (the documented denominator)."""
        return round(self.mutual_count / self.defined_rows, 3) if self.defined_rows else 0.0

    @property
    def ratio_sets(self) -> float:
        return (
            round(self.mutual_count / self.defined_pair_sets, 3)
            if self.defined_pair_sets
            else 0.0
        )


def mutual_motivation(defs: Iterable[DefEntry]) -> MutualMotivationResult:
    """Unordered pairs present in both orientations among the defs rows."""
    keys = {d.key for d in defs}
    mutual: set[tuple[Node, Node]] = set()
    unordered: set[tuple[Node, Node]] = set()
    for l1, c1, l2, c2 in keys:
        a: Node = (l1, PosTag(c1))
        b: Node = (l2, PosTag(c2))
        pair = (a, b) if a <= b else (b, a)
        unordered.add(pair)
        if (l2, c2, l1, c1) in keys:
            mutual.add(pair)
    return MutualMotivationResult(
        pairs=tuple(sorted(mutual)),
        mutual_count=len(mutual),
        defined_rows=len(keys),
        defined_pair_sets=len(unordered),
    )


class DerivationGraph:
    """Directed graph of defs rows: lemma1 -> lemma2, edges labeled by pattern."""

    def __init__(self, defs: Iterable[DefEntry]):
        self.succ: dict[Node, dict[Node, PatternPair]] = defaultdict(dict)
        self.pred: dict[Node, dict[Node, PatternPair]] = defaultdict(dict)
        for entry in defs:
            a: Node = (entry.lemma1, entry.cat1)
            b: Node = (entry.lemma2, entry.cat2)
            label = PatternPair(entry.exponent1, entry.exponent2)
            self.succ[a][b] = label
            self.pred[b][a] = label
            self.succ.setdefault(b, {})
            self.pred.setdefault(a, {})

    @property
    def nodes(self) -> list[Node]:
        return sorted(self.succ.keys() | self.pred.keys())

    def edges(self) -> list[tuple[Node, Node, PatternPair]]:
        return sorted(
            (a, b, label)
            for a, targets in self.succ.items()
            for b, label in targets.items()
        )

    def neighborhood(self, node: Node) -> set[Node]:
        return set(self.succ.get(node, ())) | set(self.pred.get(node, ()))

    def family(self, node: Node) -> set[Node]:
        """The node plus everything within two undirected edges."""
        first = self.neighborhood(node)
        out = {node} | first
        for middle in first:
            out |= self.neighborhood(middle)
        return out


@dataclass(frozen=True)
class TriangleCensus:
    transitive_count: int
    cycle_count: int
    two_edge_path_count: int

    @property
    def transitive_ratio(self) -> float:
        if not self.two_edge_path_count:
            return 0.0
        return round(self.transitive_count / self.two_edge_path_count, 3)

    @property
    def cycle_ratio(self) -> float:
        if not self.two_edge_path_count:
            return 0.0
        return round(self.cycle_count / self.two_edge_path_count, 3)


def triangle_census(graph: DerivationGraph) -> TriangleCensus:
    """Counts of transitive triples, 3-cycles (each once), and 2-edge paths.

    Two-edge paths are ordered triples (A, B, C) of distinct nodes with
    edges A->B and B->C; transitive triples additionally have A->C.  A cycle
    A->B->C->A is one structure, not three paths, so the raw pass counts
    every cycle three times and divides by three.
    """
    paths = 0
    transitive = 0
    cycle_triples = 0
    for b, preds in graph.pred.items():
        succs = graph.succ.get(b, {})
        if not preds or not succs:
            continue
        for a in preds:
            for c in succs:
                if a == c:
                    continue
                paths += 1
                c_succ = graph.succ.get(c, {})
                if c in graph.succ.get(a, {}):
                    transitive += 1
                if a in c_succ:
                    cycle_triples += 1
    assert cycle_triples % 3 == 0
    return TriangleCensus(
        transitive_count=transitive,
        cycle_count=cycle_triples // 3,
        two_edge_path_count=paths,
    )


@dataclass(frozen=True, order=True)
class StolonAlignment:
    """Two aligned families whose member pairs share one alternation pattern."""

    anchor: PatternPair
    seed: tuple[Node, Node]
    members: tuple[tuple[Node, Node], ...]

    @property
    def size(self) -> int:
        return len(self.members)


def _aligned(anchor: PatternPair, x: Node, y: Node) -> bool:
    left = apply_pattern(anchor.left, x[0])
    if left is None:
        return False
    right = apply_pattern(anchor.right, y[0])
    if right is not None and right == left:
        return True
    return instantiate_pattern(anchor.right, left) == y[0]


def find_stolons(
    graph: DerivationGraph,
    anchor: PatternPair,
    min_size: int = 4,
) -> list[StolonAlignment]:
    """Family alignments seeded by edges labeled with the anchor pattern.

    For each such edge L1->L2, every (x, y) with x in family(L1) and y in
    family(L2) whose lemmas instantiate the anchor with the same captures is
    an aligned member pair; alignments smaller than ``min_size`` are dropped
    and duplicates (same member set) are merged.
    """
    if min_size < 2:
        raise ValueError("min_size must be >= 2")
    seen_members: set[tuple[tuple[Node, Node], ...]] = set()
    alignments: list[StolonAlignment] = []
    for a, b, label in graph.edges():
        if label != anchor:
            continue
        members = tuple(
            sorted(
                (x, y)
                for x in graph.family(a)
                for y in graph.family(b)
                if _aligned(anchor, x, y)
            )
        )
        if len(members) < min_size or members in seen_members:
            continue
        seen_members.add(members)
        alignments.append(StolonAlignment(anchor=anchor, seed=(a, b), members=members))
    return sorted(alignments)
