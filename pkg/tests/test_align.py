import pytest
from hypothesis import given, strategies as st

from discodep import Document, Span, map_span_set, read_segmentation, resolve_span_set
from discodep.align import EmptyAlignment, SegmentationError, parse_segmentation, write_segmentation


@pytest.fixture
def doc():
    return Document(
        "d",
        (
            (1, Span(0, 50)),
            (2, Span(50, 100)),
            (3, Span(110, 160)),
            (4, Span(160, 260)),
        ),
    )


def test_identity_overlap(doc):
    assert map_span_set([Span(50, 100)], doc, theta=0.5) == {2}


def test_full_coverage_of_three_units(wsj_document):
    assert map_span_set([Span(1286, 1413)], wsj_document, theta=0.5) == {15, 16, 17}


def test_ten_percent_overlap_misses_theta(doc):
    # 10 chars of the 100-char EDU 4
    assert map_span_set([Span(160, 170)], doc, theta=0.5) == set()


def test_theta_one_keeps_only_fully_covered(doc):
    assert map_span_set([Span(0, 99)], doc, theta=1.0) == {1}
    assert map_span_set([Span(0, 100)], doc, theta=1.0) == {1, 2}


def test_tiny_theta_keeps_any_overlap(doc):
    assert map_span_set([Span(49, 51)], doc, theta=1e-9) == {1, 2}


def test_theta_bounds(doc):
    with pytest.raises(ValueError):
        map_span_set([Span(0, 10)], doc, theta=0.0)
    with pytest.raises(ValueError):
        map_span_set([Span(0, 10)], doc, theta=1.5)


def test_overlapping_spans_in_one_argument_not_double_counted(doc):
    # two copies of a 30-char overlap must not pass the 50% bar on a
    # 50-char EDU; the union of the spans is what counts
    assert map_span_set([Span(0, 30), Span(0, 30)], doc, theta=1.0) == set()
    assert map_span_set([Span(0, 30), Span(10, 40)], doc, theta=1.0) == set()
    assert map_span_set([Span(0, 30), Span(10, 40)], doc, theta=0.5) == {1}


def test_fallback_picks_max_overlap_and_logs(doc):
    diagnostics = []
    units = resolve_span_set([Span(160, 170)], doc, 0.5, diagnostics, context="Arg1")
    assert units == {4}
    assert len(diagnostics) == 1
    assert diagnostics[0].code == "alignment-fallback"


def test_fallback_tie_goes_to_earlier_unit(doc):
    # 10 chars in EDU 1 and 10 in EDU 2; neither meets theta
    diagnostics = []
    units = resolve_span_set([Span(40, 60)], doc, 0.5, diagnostics)
    assert units == {1}


def test_no_overlap_at_all_raises(doc):
    with pytest.raises(EmptyAlignment):
        resolve_span_set([Span(101, 109)], doc, 0.5)


@given(
    extra=st.lists(
        st.tuples(st.integers(0, 250), st.integers(1, 60)).map(
            lambda t: Span(t[0], t[0] + t[1])
        ),
        max_size=4,
    ),
    base=st.tuples(st.integers(0, 250), st.integers(1, 60)).map(
        lambda t: Span(t[0], t[0] + t[1])
    ),
    theta=st.floats(0.05, 1.0),
)
def test_monotonicity_enlarging_spans_never_shrinks(extra, base, theta):
    doc = Document(
        "d",
        ((1, Span(0, 50)), (2, Span(50, 100)), (3, Span(110, 160)), (4, Span(160, 260))),
    )
    small = map_span_set([base], doc, theta)
    large = map_span_set([base] + extra, doc, theta)
    assert small <= large


class TestSegmentationFile:
    def test_round_trip(self, wsj_document):
        text = write_segmentation([wsj_document])
        parsed = parse_segmentation(text)
        assert parsed["wsj_0618"] == wsj_document

    def test_read_fixture(self, fixtures_dir):
        docs = read_segmentation(fixtures_dir / "wsj_0618.seg")
        assert docs["wsj_0618"].unit_count == 17

    def test_bad_field_count(self):
        with pytest.raises(SegmentationError):
            parse_segmentation("doc\t1\t0\n")

    def test_non_contiguous_indices(self):
        with pytest.raises(SegmentationError):
            parse_segmentation("doc\t1\t0\t5\ndoc\t3\t6\t9\n")

    def test_comments_and_blanks_skipped(self):
        docs = parse_segmentation("# comment\n\ndoc\t1\t0\t5\n")
        assert docs["doc"].unit_count == 1
