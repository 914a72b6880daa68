from __future__ import annotations

from pathlib import Path

import pytest

from discodep import convert_pdtb, parse_dis_file, parse_relation_file, read_segmentation

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def wsj_relations():
    relations, diagnostics = parse_relation_file(FIXTURES / "wsj_0618.pdtb")
    assert not diagnostics
    return relations


@pytest.fixture(scope="session")
def wsj_document():
    return read_segmentation(FIXTURES / "wsj_0618.seg")["wsj_0618"]


@pytest.fixture(scope="session")
def wsj_graph(wsj_document, wsj_relations):
    graph, _ = convert_pdtb(wsj_document, wsj_relations)
    return graph


@pytest.fixture(scope="session")
def fig1_tree():
    return parse_dis_file(FIXTURES / "fig1.dis")
