import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import corpus  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture
def g1():
    return corpus.G1


@pytest.fixture
def g2():
    return corpus.G2


@pytest.fixture
def g3():
    return corpus.G3


@pytest.fixture(scope="session")
def general():
    return corpus.general_corpus()


@pytest.fixture(scope="session")
def canonical():
    return corpus.canonical_corpus()
