"""Parser and printer for RST-DT constituency trees (parenthesized ".dis" files).

The format has node headers Root/Nucleus/Satellite, (span a b) or (leaf k)
coverage declarations, (rel2par label) relation tags, and optional
(text _!fragment_!) payloads on leaves.
"""

from __future__ import annotations

import re
from pathlib import Path

from .model import (
    DiscodepError,
    Document,
    Nuclearity,
    RstChild,
    RstInternal,
    RstLeaf,
    RstTree,
    Span,
)


class DisParseError(DiscodepError):
    pass


class UnbalancedParens(DisParseError):
    pass


class MissingNuclearity(DisParseError):
    pass


class NonContiguousLeaves(DisParseError):
    pass


class FragmentNotFound(DiscodepError):
    pass


_TOKEN = re.compile(
    r"""
    _!(?P<text>.*?)_!      # EDU text payload, non-greedy up to the closing _!
  | (?P<open>\()
  | (?P<close>\))
  | (?P<atom>[^\s()]+)
    """,
    re.VERBOSE | re.DOTALL,
)

_NODE_LABELS = {"Root", "Nucleus", "Satellite"}


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DisParseError(f"cannot tokenize at offset {pos}: {text[pos:pos+20]!r}")
        if m.lastgroup == "text":
            tokens.append(("text", m.group("text")))
        elif m.lastgroup == "open":
            tokens.append(("open", "("))
        elif m.lastgroup == "close":
            tokens.append(("close", ")"))
        else:
            tokens.append(("atom", m.group("atom")))
        pos = m.end()
    return tokens


class _RawNode:
    __slots__ = ("label", "leaf", "span", "rel2par", "text", "children")

    def __init__(self, label: str):
        self.label = label
        self.leaf: int | None = None
        self.span: tuple[int, int] | None = None
        self.rel2par: str | None = None
        self.text: str | None = None
        self.children: list[_RawNode] = []


def _parse_node(tokens: list[tuple[str, str]], pos: int) -> tuple[_RawNode, int]:
    if pos >= len(tokens) or tokens[pos][0] != "open":
        raise UnbalancedParens(f"expected '(' at token {pos}")
    pos += 1
    if pos >= len(tokens) or tokens[pos][0] != "atom" or tokens[pos][1] not in _NODE_LABELS:
        got = tokens[pos][1] if pos < len(tokens) else "<eof>"
        raise DisParseError(f"expected node label Root/Nucleus/Satellite, got {got!r}")
    node = _RawNode(tokens[pos][1])
    pos += 1
    while pos < len(tokens):
        tkind, tval = tokens[pos]
        if tkind == "close":
            return node, pos + 1
        if tkind != "open":
            raise DisParseError(f"unexpected token {tval!r} inside node")
        # lookahead: an inner list is either an attribute or a child node
        if pos + 1 < len(tokens) and tokens[pos + 1][0] == "atom":
            head = tokens[pos + 1][1]
        else:
            head = None
        if head in _NODE_LABELS:
            child, pos = _parse_node(tokens, pos)
            node.children.append(child)
            continue
        pos, value = _parse_attr(tokens, pos)
        key, payload = value
        if key == "leaf":
            node.leaf = int(payload[0])
        elif key == "span":
            node.span = (int(payload[0]), int(payload[1]))
        elif key == "rel2par":
            node.rel2par = " ".join(payload)
        elif key == "text":
            node.text = payload[0]
        # other attributes (e.g. Promotion sets) are tolerated and dropped
    raise UnbalancedParens("unexpected end of input inside node")


def _parse_attr(tokens: list[tuple[str, str]], pos: int) -> tuple[int, tuple[str, list[str]]]:
    # caller guarantees tokens[pos] is "("
    pos += 1
    if pos >= len(tokens) or tokens[pos][0] not in ("atom",):
        raise DisParseError("attribute list without a key")
    key = tokens[pos][1]
    pos += 1
    payload: list[str] = []
    depth = 0
    while pos < len(tokens):
        tkind, tval = tokens[pos]
        if tkind == "close":
            if depth == 0:
                return pos + 1, (key, payload)
            depth -= 1
        elif tkind == "open":
            depth += 1
        else:
            payload.append(tval)
        pos += 1
    raise UnbalancedParens(f"unterminated attribute ({key}")


def _unescape(fragment: str) -> str:
    return re.sub(r"\\(.)", r"\1", fragment)


def _build(raw: _RawNode) -> RstLeaf | RstInternal:
    if raw.leaf is not None:
        return RstLeaf(raw.leaf, _unescape(raw.text) if raw.text is not None else None)
    if not raw.children:
        raise DisParseError(f"{raw.label} node has neither (leaf k) nor children")
    children = []
    has_nucleus = False
    for child in raw.children:
        if child.label == "Root":
            raise DisParseError("Root label on a non-root node")
        nuclearity = Nuclearity(child.label)
        has_nucleus = has_nucleus or nuclearity is Nuclearity.NUCLEUS
        children.append(
            RstChild(_build(child), nuclearity, child.rel2par or "span")
        )
    if not has_nucleus:
        raise MissingNuclearity(
            f"internal node over leaves {raw.span or '?'} has no Nucleus child"
        )
    return RstInternal(tuple(children))


def parse_dis(text: str, doc_id: str = "") -> RstTree:
    """Parse a ".dis" constituency tree into an RstTree."""
    tokens = _tokenize(text)
    if not tokens:
        raise DisParseError("empty input")
    raw, pos = _parse_node(tokens, 0)
    if pos != len(tokens):
        raise UnbalancedParens(f"trailing tokens after tree (at token {pos})")
    if raw.label != "Root":
        raise DisParseError(f"top-level node must be Root, got {raw.label}")
    # degenerate single-child root wrapper: unwrap to the bare leaf
    if raw.leaf is None and len(raw.children) == 1 and raw.children[0].leaf is not None:
        root = _build(raw.children[0])
    else:
        root = _build(raw)
    leaves = root.leaf_indices
    if leaves != tuple(range(1, len(leaves) + 1)):
        raise NonContiguousLeaves(f"leaf indices are {leaves}, expected 1..{len(leaves)}")
    tree = RstTree(root, doc_id=doc_id)
    if raw.span is not None and raw.span != (1, tree.leaf_count):
        raise NonContiguousLeaves(
            f"root declares span {raw.span} but tree has {tree.leaf_count} leaves"
        )
    return tree


def parse_dis_file(path: str | Path) -> RstTree:
    path = Path(path)
    return parse_dis(path.read_text(encoding="utf-8"), doc_id=path.stem)


def _escape(fragment: str) -> str:
    return fragment.replace("\\", "\\\\")


def pretty_print(tree: RstTree) -> str:
    """Serialize a tree back to ".dis" notation; parse_dis round-trips it."""
    lines: list[str] = []

    def emit(node: RstLeaf | RstInternal, label: str, rel2par: str | None, indent: int) -> None:
        pad = "  " * indent
        if isinstance(node, RstLeaf):
            parts = [f"{pad}( {label} (leaf {node.edu_index})"]
            if rel2par is not None:
                parts.append(f"(rel2par {rel2par})")
            if node.text is not None:
                parts.append(f"(text _!{_escape(node.text)}_!)")
            lines.append(" ".join(parts) + " )")
            return
        first, last = node.leaf_indices[0], node.leaf_indices[-1]
        header = f"{pad}( {label} (span {first} {last})"
        if rel2par is not None:
            header += f" (rel2par {rel2par})"
        lines.append(header)
        for child in node.children:
            emit(child.node, child.nuclearity.value, child.relation, indent + 1)
        lines.append(f"{pad})")

    emit(tree.root, "Root", None, 0)
    return "\n".join(lines) + "\n"


def _leaves_in_order(node: RstLeaf | RstInternal) -> list[RstLeaf]:
    if isinstance(node, RstLeaf):
        return [node]
    out: list[RstLeaf] = []
    for child in node.children:
        out.extend(_leaves_in_order(child.node))
    return out


def edu_inventory_of(tree: RstTree, text: str, doc_id: str | None = None) -> Document:
    """Recover EDU character spans by locating leaf fragments in the raw text.

    Fragments are searched left to right, so EDU order follows leaf order.
    """
    edus: list[tuple[int, Span]] = []
    cursor = 0
    for leaf in _leaves_in_order(tree.root):
        if leaf.text is None:
            raise FragmentNotFound(f"leaf {leaf.edu_index} carries no text fragment")
        fragment = leaf.text.strip()
        start = text.find(fragment, cursor)
        if start < 0:
            raise FragmentNotFound(
                f"leaf {leaf.edu_index} text not found after offset {cursor}: "
                f"{fragment[:40]!r}"
            )
        edus.append((leaf.edu_index, Span(start, start + len(fragment))))
        cursor = start + len(fragment)
    return Document(doc_id or tree.doc_id or "", tuple(edus), text=text)
