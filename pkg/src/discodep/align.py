"""Map PDTB character-span arguments onto a document's EDU inventory."""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

from .model import Diagnostic, DiscodepError, Document, Span

DEFAULT_THETA = 0.5


class EmptyAlignment(DiscodepError):
    """An argument span overlaps no EDU at all, so no fallback is possible."""


class SegmentationError(DiscodepError):
    pass


def _merge(spans: Iterable[Span]) -> tuple[Span, ...]:
    """Union of spans as disjoint intervals, so overlap is never double-counted."""
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    merged: list[Span] = []
    for span in ordered:
        if merged and span.start <= merged[-1].end:
            if span.end > merged[-1].end:
                merged[-1] = Span(merged[-1].start, span.end)
        else:
            merged.append(span)
    return tuple(merged)


def _overlap_with_set(spans: tuple[Span, ...], edu_span: Span) -> int:
    return sum(edu_span.overlap(s) for s in spans)


def map_span_set(spans: Iterable[Span], doc: Document, theta: float = DEFAULT_THETA) -> set[int]:
    """EDUs covered by the span set: overlap >= theta * EDU length.

    Monotone in the span set; theta=1 keeps only fully covered EDUs and
    theta near 0 keeps every EDU touched by at least one character.
    """
    if not 0 < theta <= 1:
        raise ValueError(f"theta must be in (0, 1], got {theta}")
    merged = _merge(spans)
    hits = set()
    for index, edu_span in doc.edus:
        if _overlap_with_set(merged, edu_span) >= theta * len(edu_span):
            hits.add(index)
    return hits


def resolve_span_set(
    spans: Iterable[Span],
    doc: Document,
    theta: float = DEFAULT_THETA,
    diagnostics: list[Diagnostic] | None = None,
    context: str = "",
) -> set[int]:
    """map_span_set with a fallback so every argument lands somewhere.

    When no EDU meets theta, the single EDU with maximal absolute overlap
    is used (ties go to the earlier EDU) and the fallback is logged as a
    diagnostic. Raises EmptyAlignment when nothing overlaps at all.
    """
    merged = _merge(spans)
    hits = map_span_set(merged, doc, theta)
    if hits:
        return hits
    best_index = None
    best_overlap = 0
    for index, edu_span in doc.edus:
        ov = _overlap_with_set(merged, edu_span)
        if ov > best_overlap:
            best_overlap = ov
            best_index = index
    if best_index is None:
        raise EmptyAlignment(
            f"{doc.doc_id}: {context or 'argument'} overlaps no EDU "
            f"(inventory of {doc.unit_count})"
        )
    if diagnostics is not None:
        diagnostics.append(
            Diagnostic(
                "alignment-fallback",
                f"{context or 'argument'} meets theta={theta:g} for no EDU; "
                f"falling back to EDU {best_index} ({best_overlap} chars)",
                doc_id=doc.doc_id,
            )
        )
    return {best_index}


def parse_segmentation(text: str) -> dict[str, Document]:
    """Parse a segmentation file: tab-separated doc_id, edu_index, start, end.

    One EDU per line; per-document indices must be contiguous from 1 and
    spans ordered and non-overlapping (enforced by Document).
    """
    per_doc: dict[str, list[tuple[int, Span]]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 4:
            raise SegmentationError(
                f"line {line_no}: expected 4 tab-separated fields, got {len(parts)}"
            )
        doc_id, index_s, start_s, end_s = (p.strip() for p in parts)
        try:
            index, start, end = int(index_s), int(start_s), int(end_s)
        except ValueError as err:
            raise SegmentationError(f"line {line_no}: {err}") from None
        per_doc.setdefault(doc_id, []).append((index, Span(start, end)))
    documents = {}
    for doc_id, edus in per_doc.items():
        try:
            documents[doc_id] = Document(doc_id, tuple(edus))
        except ValueError as err:
            raise SegmentationError(str(err)) from None
    return documents


def read_segmentation(path: str | Path) -> dict[str, Document]:
    return parse_segmentation(Path(path).read_text(encoding="utf-8"))


def write_segmentation(documents: Iterable[Document]) -> str:
    """Serialize documents to segmentation-file format (deterministic order)."""
    lines = []
    for doc in sorted(documents, key=lambda d: d.doc_id):
        for index, span in doc.edus:
            lines.append(f"{doc.doc_id}\t{index}\t{span.start}\t{span.end}")
    return "\n".join(lines) + "\n" if lines else ""
