import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phrasalrel.distsim import count_collocations, read_corpus  # noqa: E402
from phrasalrel.netstore import load_network  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def fig2_net():
    return load_network(FIXTURES / "fig2.tsv")


@pytest.fixture
def context_net():
    return load_network(FIXTURES / "context_net.tsv")


@pytest.fixture
def corpus_sentences():
    return read_corpus(FIXTURES / "corpus.txt")


@pytest.fixture
def corpus_counts(corpus_sentences):
    return count_collocations(corpus_sentences)
