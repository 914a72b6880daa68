"""Bit-exact serialization of dependency graphs and metrics.

All writers emit UTF-8 bytes with "\n" line endings, a trailing newline,
and 6-decimal fixed-point reals, so identical inputs always produce
identical bytes.
"""

from __future__ import annotations

import csv
import io
import json

from .metrics import CorrelationResult, MetricsRecord
from .model import (
    DependencyArc,
    DependencyGraph,
    DiscodepError,
    GraphFlavor,
    ROOT,
    SenseTag,
)

FORMATS = ("conll", "csv", "json")

_CSV_HEADER = ("dependent", "head", "distance", "sense1", "class", "type")


class FormatError(DiscodepError):
    pass


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def write_dep(graph: DependencyGraph, fmt: str) -> bytes:
    if fmt == "conll":
        return _write_conll(graph)
    if fmt == "csv":
        return _write_csv(graph)
    if fmt == "json":
        return _write_json(graph)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def read_dep(data: bytes | str, fmt: str) -> DependencyGraph:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if fmt == "conll":
        return _read_conll(text)
    if fmt == "csv":
        return _read_csv(text)
    if fmt == "json":
        return _read_json(text)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _sense_fields(sense: SenseTag) -> tuple[str, str, str]:
    return (sense.level1, sense.level2 or "", sense.level3 or "")


def _sense_from_fields(level1: str, level2: str, level3: str) -> SenseTag:
    return SenseTag(level1, level2 or None, level3 or None)


def _write_conll(graph: DependencyGraph) -> bytes:
    by_unit: dict[int, DependencyArc] = {}
    for arc in graph.arcs:
        if arc.dependent in by_unit:
            raise FormatError(
                f"conll cannot represent unit {arc.dependent} with multiple heads"
            )
        by_unit[arc.dependent] = arc
    lines = [
        f"# doc_id = {graph.doc_id}",
        f"# flavor = {graph.flavor.value}",
    ]
    for unit in range(1, graph.unit_count + 1):
        arc = by_unit.get(unit)
        if arc is None:
            lines.append(f"{unit}\t_\t_\t_\t_\t_")
            continue
        l1, l2, l3 = _sense_fields(arc.sense)
        distance = "_" if arc.distance is None else str(arc.distance)
        lines.append(
            f"{unit}\t{arc.head}\t{l1}\t{l2 or '_'}\t{l3 or '_'}\t{distance}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _read_conll(text: str) -> DependencyGraph:
    doc_id = ""
    flavor: GraphFlavor | None = None
    arcs = []
    unit_count = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                key, value = key.strip(), value.strip()
                if key == "doc_id":
                    doc_id = value
                elif key == "flavor":
                    try:
                        flavor = GraphFlavor(value)
                    except ValueError:
                        raise FormatError(f"line {line_no}: unknown flavor {value!r}") from None
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise FormatError(f"line {line_no}: expected 6 tab-separated fields, got {len(fields)}")
        try:
            unit = int(fields[0])
        except ValueError:
            raise FormatError(f"line {line_no}: bad unit id {fields[0]!r}") from None
        if unit != unit_count + 1:
            raise FormatError(f"line {line_no}: unit ids must be 1..n in order, got {unit}")
        unit_count = unit
        if fields[1] == "_":
            continue
        try:
            head = int(fields[1])
        except ValueError:
            raise FormatError(f"line {line_no}: bad head id {fields[1]!r}") from None
        sense = _sense_from_fields(
            fields[2], "" if fields[3] == "_" else fields[3], "" if fields[4] == "_" else fields[4]
        )
        try:
            arc = DependencyArc.make(unit, head, sense)
        except ValueError as err:
            raise FormatError(f"line {line_no}: {err}") from None
        if fields[5] != "_" and arc.distance != int(fields[5]):
            raise FormatError(
                f"line {line_no}: distance column {fields[5]} disagrees with |{unit} - {head}|"
            )
        arcs.append(arc)
    if flavor is None:
        flavor = (
            GraphFlavor.ROOTED_TREE
            if any(a.head == ROOT for a in arcs)
            else GraphFlavor.LOCAL_FOREST
        )
    return DependencyGraph(doc_id, unit_count, tuple(arcs), flavor)


def _write_csv(graph: DependencyGraph) -> bytes:
    buf = io.StringIO()
    buf.write(f"# doc_id = {graph.doc_id}\n")
    buf.write(f"# unit_count = {graph.unit_count}\n")
    buf.write(f"# flavor = {graph.flavor.value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for arc in graph.arcs:
        l1, l2, l3 = _sense_fields(arc.sense)
        distance = "" if arc.distance is None else str(arc.distance)
        writer.writerow((arc.dependent, arc.head, distance, l1, l2, l3))
    return buf.getvalue().encode("utf-8")


def _read_csv(text: str) -> DependencyGraph:
    doc_id = ""
    unit_count: int | None = None
    flavor: GraphFlavor | None = None
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            body = line[1:].strip()
            key, _, value = body.partition("=")
            key, value = key.strip(), value.strip()
            if key == "doc_id":
                doc_id = value
            elif key == "unit_count":
                unit_count = int(value)
            elif key == "flavor":
                try:
                    flavor = GraphFlavor(value)
                except ValueError:
                    raise FormatError(f"line {line_no}: unknown flavor {value!r}") from None
            continue
        if line.strip():
            rows.append((line_no, line))
    if not rows:
        raise FormatError("csv input has no header row")
    header_no, header_line = rows[0]
    header = next(csv.reader([header_line]))
    if tuple(h.strip() for h in header) != _CSV_HEADER:
        raise FormatError(f"line {header_no}: unexpected header {header!r}")
    arcs = []
    max_unit = 0
    for line_no, line in rows[1:]:
        fields = next(csv.reader([line]))
        if len(fields) != len(_CSV_HEADER):
            raise FormatError(
                f"line {line_no}: expected {len(_CSV_HEADER)} columns, got {len(fields)}"
            )
        try:
            dependent = int(fields[0])
            head = int(fields[1])
        except ValueError as err:
            raise FormatError(f"line {line_no}: {err}") from None
        sense = _sense_from_fields(fields[3], fields[4], fields[5])
        try:
            arc = DependencyArc.make(dependent, head, sense)
        except ValueError as err:
            raise FormatError(f"line {line_no}: {err}") from None
        if fields[2] != "" and arc.distance != int(fields[2]):
            raise FormatError(
                f"line {line_no}: distance column {fields[2]} disagrees with "
                f"|{dependent} - {head}|"
            )
        arcs.append(arc)
        max_unit = max(max_unit, dependent, head)
    if unit_count is None:
        unit_count = max_unit
    if flavor is None:
        flavor = (
            GraphFlavor.ROOTED_TREE
            if any(a.head == ROOT for a in arcs)
            else GraphFlavor.LOCAL_FOREST
        )
    return DependencyGraph(doc_id, unit_count, tuple(arcs), flavor)


def _write_json(graph: DependencyGraph) -> bytes:
    payload = {
        "doc_id": graph.doc_id,
        "unit_count": graph.unit_count,
        "flavor": graph.flavor.value,
        "arcs": [
            {
                "dependent": arc.dependent,
                "head": arc.head,
                "distance": arc.distance,
                "sense": {
                    "level1": arc.sense.level1,
                    "level2": arc.sense.level2,
                    "level3": arc.sense.level3,
                },
            }
            for arc in graph.arcs
        ],
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def _read_json(text: str) -> DependencyGraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(f"invalid json at line {err.lineno} column {err.colno}: {err.msg}") from None
    if not isinstance(payload, dict):
        raise FormatError("json root must be an object")
    try:
        flavor = GraphFlavor(payload.get("flavor", GraphFlavor.LOCAL_FOREST.value))
    except ValueError:
        raise FormatError(f"unknown flavor {payload.get('flavor')!r}") from None
    arcs = []
    for i, entry in enumerate(payload.get("arcs", [])):
        try:
            sense_obj = entry.get("sense", {})
            sense = SenseTag(
                sense_obj["level1"], sense_obj.get("level2"), sense_obj.get("level3")
            )
            arc = DependencyArc.make(int(entry["dependent"]), int(entry["head"]), sense)
        except (KeyError, TypeError, ValueError) as err:
            raise FormatError(f"arc {i}: {err}") from None
        declared = entry.get("distance")
        if declared is not None and declared != arc.distance:
            raise FormatError(f"arc {i}: distance {declared} disagrees with computed {arc.distance}")
        arcs.append(arc)
    return DependencyGraph(
        str(payload.get("doc_id", "")),
        int(payload.get("unit_count", 0)),
        tuple(arcs),
        flavor,
    )


METRICS_HEADER = ("doc_id", "n_units", "n_arcs", "mdd", "sd")


def write_metrics(records: list[MetricsRecord]) -> bytes:
    """Metrics CSV sorted by doc_id; undefined values become empty cells."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(METRICS_HEADER)
    for rec in sorted(records, key=lambda r: r.doc_id):
        writer.writerow(
            (
                rec.doc_id,
                rec.unit_count,
                rec.arc_count,
                "" if rec.mdd is None else _fmt(rec.mdd),
                "" if rec.sd is None else _fmt(rec.sd),
            )
        )
    return buf.getvalue().encode("utf-8")


def read_metrics(data: bytes | str) -> list[MetricsRecord]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise FormatError("metrics csv is empty")
    header = tuple(h.strip() for h in next(csv.reader([lines[0]])))
    if header != METRICS_HEADER:
        raise FormatError(f"unexpected metrics header {header!r}")
    records = []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = next(csv.reader([line]))
        if len(fields) != len(METRICS_HEADER):
            raise FormatError(f"line {line_no}: expected {len(METRICS_HEADER)} columns")
        try:
            records.append(
                MetricsRecord(
                    doc_id=fields[0],
                    unit_count=int(fields[1]),
                    arc_count=int(fields[2]),
                    mdd=float(fields[3]) if fields[3] else None,
                    sd=float(fields[4]) if fields[4] else None,
                )
            )
        except ValueError as err:
            raise FormatError(f"line {line_no}: {err}") from None
    return records


def write_correlation(result: CorrelationResult) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("pairs", "r", "t", "df"))
    writer.writerow((result.n_pairs, _fmt(result.r), _fmt(result.t), result.df))
    return buf.getvalue().encode("utf-8")
