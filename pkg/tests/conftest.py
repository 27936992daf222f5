from pathlib import Path

import pytest

from uzstem.resources import load_resources

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def res():
    return load_resources()


@pytest.fixture(scope="session")
def main_fsm(res):
    return res.main


@pytest.fixture(scope="session")
def lexicon(res):
    return res.lexicon


@pytest.fixture(scope="session")
def sample_words():
    return [w for w in (DATA / "uzbek_sample.txt").read_text(encoding="utf-8").split("\n") if w]
