import pathlib

import pytest

from cl1play.proofs import check_text

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def merge_text() -> str:
    return (FIXTURES / "cand_merge.proof").read_text()


@pytest.fixture(scope="session")
def intro_text() -> str:
    return (FIXTURES / "cand_intro.proof").read_text()


@pytest.fixture(scope="session")
def unsound_text() -> str:
    return (FIXTURES / "cand_intro_unsound.proof").read_text()


@pytest.fixture(scope="session")
def merge_proof(merge_text):
    return check_text(merge_text)


@pytest.fixture(scope="session")
def intro_proof(intro_text):
    return check_text(intro_text)
