import pytest

from juggle.group import SECP256K1, TOY
from juggle.rng import SeededRng


@pytest.fixture
def toy():
    return TOY


@pytest.fixture
def secp():
    return SECP256K1


@pytest.fixture
def rng():
    return SeededRng(0xC0FFEE)
