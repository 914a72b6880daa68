import pytest

from discodep import (
    DependencyArc,
    DependencyGraph,
    Document,
    GraphFlavor,
    SenseTag,
    Span,
    validate_graph,
)


def arc(dep, head, l1="Expansion", l2="Conjunction"):
    return DependencyArc.make(dep, head, SenseTag(l1, l2))


def forest(n, arcs, doc_id="doc"):
    return DependencyGraph(doc_id, n, tuple(arcs), GraphFlavor.LOCAL_FOREST)


def rooted(n, arcs, doc_id="doc"):
    return DependencyGraph(doc_id, n, tuple(arcs), GraphFlavor.ROOTED_TREE)


class TestSpan:
    def test_rejects_empty_and_negative(self):
        with pytest.raises(ValueError):
            Span(5, 5)
        with pytest.raises(ValueError):
            Span(7, 3)
        with pytest.raises(ValueError):
            Span(-1, 4)

    def test_overlap(self):
        assert Span(0, 10).overlap(Span(5, 20)) == 5
        assert Span(0, 10).overlap(Span(10, 20)) == 0
        assert Span(3, 4).overlap(Span(0, 100)) == 1


class TestDocument:
    def test_indices_must_be_contiguous(self):
        with pytest.raises(ValueError, match="contiguous"):
            Document("d", ((1, Span(0, 5)), (3, Span(6, 9))))

    def test_spans_must_ascend(self):
        with pytest.raises(ValueError, match="overlaps or precedes"):
            Document("d", ((1, Span(5, 9)), (2, Span(0, 4))))

    def test_adjacent_spans_allowed(self):
        doc = Document("d", ((1, Span(0, 4)), (2, Span(4, 8))))
        assert doc.unit_count == 2
        assert doc.span_of(2) == Span(4, 8)


class TestSenseTag:
    def test_two_component_tag_has_no_level3(self):
        tag = SenseTag.parse("Expansion.Disjunction")
        assert tag == SenseTag("Expansion", "Disjunction", None)

    def test_three_component_tag(self):
        tag = SenseTag.parse("Contingency.Condition.Arg2-as-cond")
        assert (tag.level1, tag.level2, tag.level3) == (
            "Contingency",
            "Condition",
            "Arg2-as-cond",
        )

    def test_rejects_overlong_and_empty(self):
        with pytest.raises(ValueError):
            SenseTag.parse("a.b.c.d")
        with pytest.raises(ValueError):
            SenseTag.parse("")

    def test_str_round_trip(self):
        for text in ("EntRel", "Contingency.Cause", "Comparison.Concession.Arg1-as-denier"):
            assert str(SenseTag.parse(text)) == text


class TestDependencyArc:
    def test_distance_is_absolute_difference(self):
        assert arc(3, 7).distance == 4
        assert arc(7, 3).distance == 4

    def test_root_arc_has_no_distance(self):
        assert arc(3, 0).distance is None

    def test_rejects_self_loop_and_bad_distance(self):
        with pytest.raises(ValueError):
            arc(2, 2)
        with pytest.raises(ValueError):
            DependencyArc(1, 3, SenseTag("x"), distance=5)


class TestValidateGraph:
    def test_wsj_graph_is_clean(self, wsj_graph):
        assert validate_graph(wsj_graph) == []
        dependents = [a.dependent for a in wsj_graph.arcs]
        assert len(dependents) == len(set(dependents))

    def test_multiple_heads_reported(self):
        diags = validate_graph(forest(3, [arc(1, 2), arc(1, 3)]))
        assert any(d.code == "multiple-heads" and "unit 1" in d.message for d in diags)

    def test_two_cycle_reported(self):
        diags = validate_graph(forest(2, [arc(1, 2), arc(2, 1)]))
        assert sum(d.code == "cycle" for d in diags) == 1

    def test_forest_rejects_root_arc(self):
        diags = validate_graph(forest(2, [arc(1, 0)]))
        assert any(d.code == "unexpected-root" for d in diags)

    def test_rooted_tree_happy_path(self):
        diags = validate_graph(rooted(2, [arc(1, 2), arc(2, 0)]))
        assert diags == []

    def test_rooted_tree_missing_root_and_heads(self):
        diags = validate_graph(rooted(3, [arc(1, 2)]))
        codes = {d.code for d in diags}
        assert "root-count" in codes
        assert "unattached-units" in codes

    def test_unit_out_of_range(self):
        diags = validate_graph(forest(2, [arc(1, 5)]))
        assert any(d.code == "unit-out-of-range" for d in diags)

    def test_valid_forest_has_at_most_n_minus_1_arcs(self, wsj_graph):
        assert len(wsj_graph.arcs) <= wsj_graph.unit_count - 1
