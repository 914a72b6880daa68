"""Convert RST constituency trees into rooted dependency trees.

Both converters use nuclearity head percolation: an internal node is
headed by its leftmost Nucleus child. ``hirao_convert`` percolates over
the tree as-is; ``li_convert`` first binarizes n-ary nodes into a
left-branching cascade, which changes the attachment of grouped
satellites and keeps the two variants distinguishable.
"""

from __future__ import annotations

from .model import (
    DependencyArc,
    DependencyGraph,
    GraphFlavor,
    Nuclearity,
    ROOT,
    RstChild,
    RstInternal,
    RstLeaf,
    RstTree,
    SenseTag,
)

ROOT_SENSE = SenseTag("ROOT", "NONE")


def _node_heads(node: RstLeaf | RstInternal, table: dict[RstLeaf | RstInternal, int]) -> int:
    if isinstance(node, RstLeaf):
        table[node] = node.edu_index
        return node.edu_index
    head = None
    fallback = None
    for child in node.children:
        child_head = _node_heads(child.node, table)
        if fallback is None:
            fallback = child_head
        if head is None and child.nuclearity is Nuclearity.NUCLEUS:
            head = child_head
    # satellite-only groups arise from binarization; fall back to the
    # leftmost child so percolation stays total
    table[node] = head if head is not None else fallback
    return table[node]


def tree_heads(tree: RstTree) -> dict[RstLeaf | RstInternal, int]:
    """Head EDU of every subtree: leftmost-Nucleus percolation."""
    table: dict[RstLeaf | RstInternal, int] = {}
    _node_heads(tree.root, table)
    return table


def _percolate(tree: RstTree) -> DependencyGraph:
    heads = tree_heads(tree)
    parent_of: dict[RstLeaf | RstInternal, tuple[RstInternal, str]] = {}

    def index_parents(node: RstLeaf | RstInternal) -> None:
        if isinstance(node, RstLeaf):
            return
        for child in node.children:
            parent_of[child.node] = (node, child.relation)
            index_parents(child.node)

    index_parents(tree.root)

    by_node: dict[int, RstLeaf] = {}

    def collect(node: RstLeaf | RstInternal) -> None:
        if isinstance(node, RstLeaf):
            by_node[node.edu_index] = node
            return
        for child in node.children:
            collect(child.node)

    collect(tree.root)

    arcs = []
    for edu in sorted(by_node):
        node: RstLeaf | RstInternal = by_node[edu]
        # climb to the highest ancestor still headed by this EDU
        while node in parent_of and heads[parent_of[node][0]] == edu:
            node = parent_of[node][0]
        if node not in parent_of:
            arcs.append(DependencyArc.make(edu, ROOT, ROOT_SENSE))
        else:
            parent, relation = parent_of[node][0], parent_of[node][1]
            arcs.append(DependencyArc.make(edu, heads[parent], SenseTag(relation)))
    return DependencyGraph(
        doc_id=tree.doc_id,
        unit_count=tree.leaf_count,
        arcs=tuple(arcs),
        flavor=GraphFlavor.ROOTED_TREE,
    )


def hirao_convert(tree: RstTree) -> DependencyGraph:
    """Head percolation on the tree as annotated."""
    return _percolate(tree)


def _binarize_node(node: RstLeaf | RstInternal) -> RstLeaf | RstInternal:
    if isinstance(node, RstLeaf):
        return node
    children = [
        RstChild(_binarize_node(c.node), c.nuclearity, c.relation) for c in node.children
    ]
    while len(children) > 2:
        left, right = children[0], children[1]
        if left.nuclearity is Nuclearity.NUCLEUS:
            group_nuc, group_rel = Nuclearity.NUCLEUS, left.relation
        elif right.nuclearity is Nuclearity.NUCLEUS:
            group_nuc, group_rel = Nuclearity.NUCLEUS, right.relation
        else:
            group_nuc, group_rel = Nuclearity.SATELLITE, left.relation
        grouped = RstChild(RstInternal((left, right)), group_nuc, group_rel)
        children = [grouped] + children[2:]
    return RstInternal(tuple(children))


def binarize(tree: RstTree) -> RstTree:
    """Left-branching cascade binarization preserving child order and nuclearity."""
    return RstTree(_binarize_node(tree.root), doc_id=tree.doc_id)


def li_convert(tree: RstTree) -> DependencyGraph:
    """Binarize first, then percolate; identical to hirao on binary trees."""
    return _percolate(binarize(tree))


def apply_label_map(graph: DependencyGraph, mapping: dict[str, str]) -> DependencyGraph:
    """Attach relation classes from a label-map as the sense's second level.

    Lookup is case-insensitive; unmapped relations keep an empty class.
    Root arcs are untouched.
    """
    lowered = {k.lower(): v for k, v in mapping.items()}
    arcs = []
    for arc in graph.arcs:
        if arc.is_root:
            arcs.append(arc)
            continue
        cls = lowered.get(arc.sense.level1.lower())
        arcs.append(
            DependencyArc(
                arc.dependent,
                arc.head,
                SenseTag(arc.sense.level1, cls, arc.sense.level3),
                arc.distance,
            )
        )
    return DependencyGraph(graph.doc_id, graph.unit_count, tuple(arcs), graph.flavor)


def load_label_map(path) -> dict[str, str]:
    """Read a two-column relation-to-class file (TAB separated)."""
    from pathlib import Path

    mapping = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"label-map line {line_no}: expected 2 tab-separated fields")
        mapping[parts[0].strip()] = parts[1].strip()
    return mapping
