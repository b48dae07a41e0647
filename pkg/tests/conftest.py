import sys
from pathlib import Path

import pytest

from wikinet.source import FixtureBackend, Source

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"
CORPUS_DIR = TESTS_DIR / "corpus"

sys.path.insert(0, str(TESTS_DIR))  # synth / mock_api helpers


@pytest.fixture
def abortion_corpus() -> Path:
    return DATA_DIR / "corpus_abortion"


@pytest.fixture
def bias_corpus() -> Path:
    return DATA_DIR / "corpus_bias"


@pytest.fixture
def dated_corpus() -> Path:
    return DATA_DIR / "corpus_dated"


@pytest.fixture
def abortion_source(abortion_corpus) -> Source:
    return Source(FixtureBackend(abortion_corpus))


@pytest.fixture
def bias_source(bias_corpus) -> Source:
    return Source(FixtureBackend(bias_corpus))


@pytest.fixture
def dated_source(dated_corpus) -> Source:
    return Source(FixtureBackend(dated_corpus))
