from pathlib import Path

import pytest

import textellipsis
from textellipsis import read_discourse, read_kb

DATA = Path(textellipsis.__file__).parent / "data"
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def hw():
    return read_kb(DATA / "hardware.kb")


@pytest.fixture(scope="session")
def board_doc(hw):
    return read_discourse(DATA / "motherboard.disc", hw)


@pytest.fixture(scope="session")
def notebook_doc(hw):
    return read_discourse(DATA / "notebook.disc", hw)


@pytest.fixture(scope="session")
def tie_kb():
    return read_kb(FIXTURES / "tie.kb")


@pytest.fixture(scope="session")
def tie_doc(tie_kb):
    return read_discourse(FIXTURES / "tie.disc", tie_kb)
