"""Shared domain types: documents, spans, relations, trees, dependency graphs.

All types are immutable after construction and safe to share across
concurrent workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

ROOT = 0  # pseudo-head index for root arcs; EDU indices are 1-based


class DiscodepError(Exception):
    """Base class for all errors raised by this package."""


@dataclass(frozen=True)
class Diagnostic:
    """A non-fatal data anomaly, reported instead of raised."""

    code: str
    message: str
    doc_id: str | None = None
    line_no: int | None = None

    def __str__(self) -> str:
        parts = []
        if self.doc_id:
            parts.append(self.doc_id)
        if self.line_no is not None:
            parts.append(f"line {self.line_no}")
        loc = ":".join(parts)
        return f"[{self.code}] {loc + ': ' if loc else ''}{self.message}"


@dataclass(frozen=True, order=True)
class Span:
    """Character span over the raw document text: [start, end), 0-based."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.start >= self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def overlap(self, other: Span) -> int:
        return max(0, min(self.end, other.end) - max(self.start, other.start))


@dataclass(frozen=True)
class Document:
    """A text with its ordered EDU inventory.

    EDU indices are 1..n contiguous; spans are non-overlapping and in
    ascending text order. The raw text is optional: segmentation files
    carry offsets only.
    """

    doc_id: str
    edus: tuple[tuple[int, Span], ...]
    text: str | None = None

    def __post_init__(self) -> None:
        prev_end = -1
        for pos, (index, span) in enumerate(self.edus, start=1):
            if index != pos:
                raise ValueError(
                    f"{self.doc_id}: EDU indices must be 1..n contiguous, "
                    f"got {index} at position {pos}"
                )
            if span.start < prev_end:
                raise ValueError(
                    f"{self.doc_id}: EDU {index} overlaps or precedes EDU {index - 1}"
                )
            prev_end = span.end

    @property
    def unit_count(self) -> int:
        return len(self.edus)

    def span_of(self, index: int) -> Span:
        return self.edus[index - 1][1]


@dataclass(frozen=True)
class SenseTag:
    """PDTB three-level sense tag parsed from a dot-separated string."""

    level1: str
    level2: str | None = None
    level3: str | None = None

    @classmethod
    def parse(cls, tag: str) -> SenseTag:
        parts = [p or None for p in tag.strip().split(".")]
        if not parts or parts[0] is None:
            raise ValueError(f"empty sense tag: {tag!r}")
        if len(parts) > 3:
            raise ValueError(f"sense tag has more than three levels: {tag!r}")
        padded = parts + [None] * (3 - len(parts))
        return cls(padded[0], padded[1], padded[2])

    def __str__(self) -> str:
        return ".".join(p for p in (self.level1, self.level2, self.level3) if p)


class RelationKind(enum.Enum):
    EXPLICIT = "Explicit"
    IMPLICIT = "Implicit"
    ALTLEX = "AltLex"
    ALTLEXC = "AltLexC"
    ENTREL = "EntRel"
    HYPOPHORA = "Hypophora"
    NOREL = "NoRel"


# Kinds annotated without a sense hierarchy; they get a synthetic
# single-level tag named after the kind.
SENSELESS_KINDS = frozenset(
    {RelationKind.ENTREL, RelationKind.HYPOPHORA, RelationKind.NOREL}
)


@dataclass(frozen=True)
class PdtbRelation:
    """One annotation row of a PDTB 3.0 relation file."""

    kind: RelationKind
    senses: tuple[SenseTag, ...]
    arg1_spans: tuple[Span, ...]
    arg2_spans: tuple[Span, ...]
    connective: str | None = None
    link_group: str | None = None
    raw_line_no: int = 0

    def __post_init__(self) -> None:
        if not self.senses:
            raise ValueError("relation must carry at least one sense")
        if self.kind is not RelationKind.NOREL:
            if not self.arg1_spans or not self.arg2_spans:
                raise ValueError(f"{self.kind.value} relation with empty argument spans")

    @property
    def primary_sense(self) -> SenseTag:
        return self.senses[0]


class Nuclearity(enum.Enum):
    NUCLEUS = "Nucleus"
    SATELLITE = "Satellite"


@dataclass(frozen=True)
class RstLeaf:
    """Terminal RST node covering a single EDU."""

    edu_index: int
    text: str | None = None

    @property
    def leaf_indices(self) -> tuple[int, ...]:
        return (self.edu_index,)


@dataclass(frozen=True)
class RstChild:
    node: RstLeaf | RstInternal
    nuclearity: Nuclearity
    relation: str


@dataclass(frozen=True)
class RstInternal:
    children: tuple[RstChild, ...]

    @property
    def leaf_indices(self) -> tuple[int, ...]:
        out: list[int] = []
        for child in self.children:
            out.extend(child.node.leaf_indices)
        return tuple(out)


@dataclass(frozen=True)
class RstTree:
    """Constituency tree over EDU leaves 1..n with nuclearity and relations."""

    root: RstLeaf | RstInternal
    doc_id: str = ""

    def __post_init__(self) -> None:
        leaves = self.root.leaf_indices
        if leaves != tuple(range(1, len(leaves) + 1)):
            raise ValueError(f"leaf indices must be 1..n in order, got {leaves}")

    @property
    def leaf_count(self) -> int:
        return len(self.root.leaf_indices)


class GraphFlavor(enum.Enum):
    ROOTED_TREE = "RootedTree"
    LOCAL_FOREST = "LocalForest"


@dataclass(frozen=True)
class DependencyArc:
    """A labeled arc from a dependent EDU to its head.

    ``head`` is 0 for a root arc; ``distance`` is |dependent - head| in
    EDU positions and absent on root arcs.
    """

    dependent: int
    head: int
    sense: SenseTag
    distance: int | None = None

    def __post_init__(self) -> None:
        if self.dependent == self.head:
            raise ValueError(f"self-loop arc on unit {self.dependent}")
        if self.head != ROOT and self.distance != abs(self.dependent - self.head):
            raise ValueError(
                f"arc {self.dependent}->{self.head}: distance must be "
                f"{abs(self.dependent - self.head)}, got {self.distance}"
            )

    @classmethod
    def make(cls, dependent: int, head: int, sense: SenseTag) -> DependencyArc:
        distance = None if head == ROOT else abs(dependent - head)
        return cls(dependent, head, sense, distance)

    @property
    def is_root(self) -> bool:
        return self.head == ROOT


@dataclass(frozen=True)
class DependencyGraph:
    doc_id: str
    unit_count: int
    arcs: tuple[DependencyArc, ...]
    flavor: GraphFlavor

    def __post_init__(self) -> None:
        # canonical arc order makes equality and serialization independent
        # of the order in which arcs were produced
        ordered = tuple(
            sorted(self.arcs, key=lambda a: (a.dependent, a.head, str(a.sense)))
        )
        object.__setattr__(self, "arcs", ordered)

    def distances(self) -> list[int]:
        """Finite dependency distances, root arcs excluded."""
        return [a.distance for a in self.arcs if a.distance is not None]


def _cycles(arcs: tuple[DependencyArc, ...]) -> list[list[int]]:
    """Cycles among non-root arcs, each reported once from its smallest unit."""
    heads: dict[int, list[int]] = {}
    for arc in arcs:
        if not arc.is_root:
            heads.setdefault(arc.dependent, []).append(arc.head)
    cycles = []
    seen: set[frozenset[int]] = set()
    for start in sorted(heads):
        # walk every head chain; graphs may be multi-headed, so DFS
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for nxt in heads.get(node, []):
                if nxt == start:
                    key = frozenset(path)
                    if key not in seen and start == min(path):
                        seen.add(key)
                        cycles.append(path)
                elif nxt not in path:
                    stack.append((nxt, path + [nxt]))
    return cycles


def validate_graph(graph: DependencyGraph) -> list[Diagnostic]:
    """Check flavor-specific invariants, returning one diagnostic per violation.

    Anomalous corpus phenomena (multiple heads, cycles) are representable
    in a DependencyGraph; this validator makes them visible rather than
    rejecting them at construction time.
    """
    diags: list[Diagnostic] = []
    doc = graph.doc_id

    for arc in graph.arcs:
        for unit in (arc.dependent, arc.head):
            if unit != ROOT and not 1 <= unit <= graph.unit_count:
                diags.append(
                    Diagnostic(
                        "unit-out-of-range",
                        f"arc {arc.dependent}->{arc.head} references unit {unit} "
                        f"outside 1..{graph.unit_count}",
                        doc_id=doc,
                    )
                )

    dependents: dict[int, int] = {}
    for arc in graph.arcs:
        dependents[arc.dependent] = dependents.get(arc.dependent, 0) + 1
    for unit, count in sorted(dependents.items()):
        if count > 1:
            diags.append(
                Diagnostic(
                    "multiple-heads",
                    f"multiple heads for unit {unit} ({count} arcs)",
                    doc_id=doc,
                )
            )

    root_arcs = [a for a in graph.arcs if a.is_root]
    if graph.flavor is GraphFlavor.ROOTED_TREE:
        if len(root_arcs) != 1:
            diags.append(
                Diagnostic(
                    "root-count",
                    f"rooted tree must have exactly one ROOT arc, found {len(root_arcs)}",
                    doc_id=doc,
                )
            )
        headless = set(range(1, graph.unit_count + 1)) - set(dependents)
        if headless:
            diags.append(
                Diagnostic(
                    "unattached-units",
                    "units without a head: " + ", ".join(map(str, sorted(headless))),
                    doc_id=doc,
                )
            )
    else:
        for arc in root_arcs:
            diags.append(
                Diagnostic(
                    "unexpected-root",
                    f"local forest contains a ROOT arc for unit {arc.dependent}",
                    doc_id=doc,
                )
            )

    for cycle in _cycles(graph.arcs):
        diags.append(
            Diagnostic(
                "cycle",
                "dependency cycle through units " + ", ".join(map(str, cycle)),
                doc_id=doc,
            )
        )

    if graph.flavor is GraphFlavor.ROOTED_TREE and not diags:
        # acyclic + single-headed + one root over 1..n implies connected
        if len(graph.arcs) != graph.unit_count:
            diags.append(
                Diagnostic(
                    "arc-count",
                    f"rooted tree over {graph.unit_count} units must have "
                    f"{graph.unit_count} arcs, found {len(graph.arcs)}",
                    doc_id=doc,
                )
            )
    return diags
