import pytest

from pamscan import FinitePam


@pytest.fixture(scope="session")
def m3():
    return FinitePam("M3", ["0", "a", "b", "c"], {("a", "b"): "c"})


@pytest.fixture(scope="session")
def z2():
    return FinitePam("Z2", ["0", "g"], {("g", "g"): "0"})
