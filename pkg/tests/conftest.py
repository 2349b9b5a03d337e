import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from boxlie.rootsys import build


@pytest.fixture(scope="session")
def a1():
    return build("A1")


@pytest.fixture(scope="session")
def a2():
    return build("A2")


@pytest.fixture(scope="session")
def a3():
    return build("A3")


@pytest.fixture(scope="session")
def a4():
    return build("A4")


@pytest.fixture(scope="session")
def b2():
    return build("B2")


@pytest.fixture(scope="session")
def b3():
    return build("B3")


@pytest.fixture(scope="session")
def c3():
    return build("C3")


@pytest.fixture(scope="session")
def d4():
    return build("D4")
