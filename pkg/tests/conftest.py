import pytest

from netreason.core import builtin_library


@pytest.fixture(scope="session")
def lib():
    return builtin_library()
