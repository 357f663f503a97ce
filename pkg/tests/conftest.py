import pathlib

import pytest

from grigorchuk import parse_graph

FIXTURE_PATH = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "appendix.graph"


@pytest.fixture(scope="session")
def fixture_text() -> str:
    return FIXTURE_PATH.read_text()


@pytest.fixture(scope="session")
def fixture_graph(fixture_text):
    return parse_graph(fixture_text)
