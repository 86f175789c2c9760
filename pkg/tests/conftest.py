import pytest

import oracle
from panast.corpus import Pipeline
from panast.lexicon import load_default
from panast.score import load_bundled_baseline


@pytest.fixture(scope="session")
def lexicon():
    return load_default()


@pytest.fixture(scope="session")
def pipe(lexicon):
    return Pipeline(lexicon)


@pytest.fixture(scope="session")
def baseline():
    return load_bundled_baseline()


@pytest.fixture(scope="session")
def rows():
    return oracle.lexicon_rows()


@pytest.fixture(scope="session")
def stop():
    return oracle.stopwords()
