from pathlib import Path

import pytest

from shona_morph import default_tables, load_seed_lexicon

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def tables():
    return default_tables()


@pytest.fixture(scope="session")
def seed_lexicon():
    return load_seed_lexicon()


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
