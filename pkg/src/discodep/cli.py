"""Command-line toolkit: conversion pipelines, metrics, correlation, splits.

Every command is deterministic given its flags and inputs: documents are
processed by a parallel map whose results are reduced in doc_id order,
so the worker count never changes output bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .align import read_segmentation
from .formats import (
    FORMATS,
    FormatError,
    read_dep,
    read_metrics,
    write_correlation,
    write_dep,
    write_metrics,
)
from .metrics import CorrelationError, metrics_record, pearson
from .model import Diagnostic, DiscodepError, validate_graph
from .pdtb import ColumnMap, DEFAULT_COLUMNS, parse_relation_file
from .pdtb2dep import DEFAULT_HEAD_RULES, convert_pdtb, load_head_rules
from .rst import DisParseError, parse_dis_file
from .rst2dep import apply_label_map, hirao_convert, li_convert, load_label_map

log = logging.getLogger("discodep")

_EXT = {"conll": ".conll", "csv": ".csv", "json": ".json"}
_EXT_TO_FORMAT = {v: k for k, v in _EXT.items()}

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


def _configure_logging() -> None:
    level = os.environ.get("DISCODEP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)


def _collect(path: Path, suffix: str) -> list[Path]:
    if path.is_file():
        return [path]
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.suffix == suffix and p.is_file())
    raise FileNotFoundError(f"input path does not exist: {path}")


def _parallel_map(fn, items, workers: int):
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_report(out_dir: Path, diagnostics: list[Diagnostic]) -> None:
    ordered = sorted(
        diagnostics, key=lambda d: (d.doc_id or "", d.line_no or 0, d.code, d.message)
    )
    body = "".join(str(d) + "\n" for d in ordered)
    (out_dir / "diagnostics.txt").write_text(body, encoding="utf-8")


def _finish_conversion(args, results) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    diagnostics: list[Diagnostic] = []
    for doc_id, payload, diags in sorted(results, key=lambda r: r[0]):
        diagnostics.extend(diags)
        if payload is not None:
            (out_dir / (doc_id + _EXT[args.format])).write_bytes(payload)
    _write_report(out_dir, diagnostics)
    for diag in diagnostics:
        log.info("%s", diag)
    if diagnostics and getattr(args, "strict", False):
        return EXIT_DIAGNOSTICS
    return EXIT_OK


def cmd_convert_pdtb(args) -> int:
    columns = ColumnMap.from_string(args.columns) if args.columns else DEFAULT_COLUMNS
    head_rules = load_head_rules(args.head_rules) if args.head_rules else DEFAULT_HEAD_RULES
    documents = read_segmentation(args.edus)
    files = _collect(Path(args.input), ".pdtb")

    def one(path: Path):
        doc_id = path.stem
        relations, diags = parse_relation_file(path, columns, strict=False)
        doc = documents.get(doc_id)
        if doc is None:
            diags.append(
                Diagnostic(
                    "missing-segmentation",
                    f"no EDU inventory for {doc_id}; document skipped",
                    doc_id=doc_id,
                )
            )
            return doc_id, None, diags
        graph, conv_diags = convert_pdtb(
            doc, relations, theta=args.theta, head_rules=head_rules
        )
        diags.extend(conv_diags)
        return doc_id, write_dep(graph, args.format), diags

    results = _parallel_map(one, files, args.workers)
    return _finish_conversion(args, results)


def cmd_convert_rst(args) -> int:
    label_map = load_label_map(args.label_map) if args.label_map else None
    convert = hirao_convert if args.algo == "hirao" else li_convert
    files = _collect(Path(args.input), ".dis")

    def one(path: Path):
        doc_id = path.stem
        diags: list[Diagnostic] = []
        try:
            tree = parse_dis_file(path)
        except DisParseError as err:
            diags.append(Diagnostic("dis-parse-error", str(err), doc_id=doc_id))
            return doc_id, None, diags
        graph = convert(tree)
        if label_map:
            graph = apply_label_map(graph, label_map)
        return doc_id, write_dep(graph, args.format), diags

    results = _parallel_map(one, files, args.workers)
    return _finish_conversion(args, results)


def _read_dep_file(path: Path):
    fmt = _EXT_TO_FORMAT.get(path.suffix)
    if fmt is None:
        raise FormatError(f"cannot infer format from extension of {path.name}")
    graph = read_dep(path.read_bytes(), fmt)
    if not graph.doc_id:
        graph = dataclasses.replace(graph, doc_id=path.stem)
    return graph


def cmd_metrics(args) -> int:
    paths: list[Path] = []
    in_path = Path(args.input)
    if in_path.is_dir():
        paths = sorted(
            p for p in in_path.iterdir() if p.suffix in _EXT_TO_FORMAT and p.is_file()
        )
    else:
        paths = [in_path]

    def one(path: Path):
        graph = _read_dep_file(path)
        return metrics_record(graph, args.mode)

    records = _parallel_map(one, paths, args.workers)
    Path(args.out).write_bytes(write_metrics(records))
    return EXIT_OK


def cmd_correlate(args) -> int:
    left = {r.doc_id: r for r in read_metrics(Path(args.left).read_bytes())}
    right = {r.doc_id: r for r in read_metrics(Path(args.right).read_bytes())}
    shared = sorted(set(left) & set(right))
    for doc_id in sorted(set(left) ^ set(right)):
        log.warning("unpaired document: %s", doc_id)
    xs, ys = [], []
    for doc_id in shared:
        x = getattr(left[doc_id], args.field)
        y = getattr(right[doc_id], args.field)
        if x is None or y is None:
            log.warning("skipping %s: undefined %s", doc_id, args.field)
            continue
        xs.append(x)
        ys.append(y)
    if not xs:
        print("error: no paired documents", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = pearson(xs, ys)
    except CorrelationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    Path(args.out).write_bytes(write_correlation(result))
    return EXIT_OK


def cmd_validate(args) -> int:
    graph = _read_dep_file(Path(args.input))
    diags = validate_graph(graph)
    for diag in diags:
        print(diag)
    if not diags:
        print(f"{graph.doc_id or args.input}: OK ({len(graph.arcs)} arcs, {graph.unit_count} units)")
    return EXIT_DIAGNOSTICS if diags else EXIT_OK


def cmd_split(args) -> int:
    in_path = Path(args.input)
    if not in_path.is_dir():
        print(f"error: --input must be a directory: {in_path}", file=sys.stderr)
        return EXIT_USAGE
    ids = sorted({p.stem for p in in_path.iterdir() if p.is_file()})
    total = args.train + args.dev + args.test
    if total != len(ids):
        print(
            f"error: split sizes {args.train}+{args.dev}+{args.test}={total} "
            f"do not sum to corpus size {len(ids)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    shuffled = list(ids)
    random.Random(args.seed).shuffle(shuffled)
    parts = {
        "train": shuffled[: args.train],
        "dev": shuffled[args.train : args.train + args.dev],
        "test": shuffled[args.train + args.dev :],
    }
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, members in parts.items():
        lines = [
            f"# discodep {name} manifest: seeded stand-in split, not a published partition",
            f"# seed = {args.seed}; sizes = {args.train}/{args.dev}/{args.test}",
        ]
        lines.extend(sorted(members))
        (out_dir / f"{name}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discodep",
        description="Convert PDTB/RST discourse annotations into dependency "
        "graphs and compute dependency-distance statistics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert-pdtb", help="PDTB relation files to local dependency forests")
    p.add_argument("--input", required=True, help="relation file or directory of <doc_id>.pdtb files")
    p.add_argument("--edus", required=True, help="segmentation file (doc_id TAB index TAB start TAB end)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=FORMATS, default="conll")
    p.add_argument("--theta", type=float, default=0.5, help="EDU overlap fraction (default 0.5)")
    p.add_argument("--columns", help="comma-separated field index override (8 indices)")
    p.add_argument("--head-rules", help="per-class head rule override file")
    p.add_argument("--strict", action="store_true", help="exit 1 when any diagnostic is produced")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_convert_pdtb)

    p = sub.add_parser("convert-rst", help="RST .dis trees to rooted dependency trees")
    p.add_argument("--input", required=True, help=".dis file or directory")
    p.add_argument("--algo", choices=("hirao", "li"), default="hirao")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=FORMATS, default="conll")
    p.add_argument("--label-map", help="relation TAB class mapping file")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_convert_rst)

    p = sub.add_parser("metrics", help="per-document MDD/SD over dependency files")
    p.add_argument("--input", required=True, help="dependency file or directory")
    p.add_argument("--mode", choices=("local", "rooted"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("correlate", help="Pearson correlation between paired metrics files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--key", default="doc_id", choices=("doc_id",), help="join key")
    p.add_argument("--field", choices=("mdd", "sd"), default="mdd")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_correlate)

    p = sub.add_parser("validate", help="check flavor invariants of a dependency file")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("split", help="deterministic seeded train/dev/test manifests")
    p.add_argument("--input", required=True, help="corpus directory (doc ids from file stems)")
    p.add_argument("--train", type=int, required=True)
    p.add_argument("--dev", type=int, required=True)
    p.add_argument("--test", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_split)

    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, DiscodepError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
