import pytest

from catalog import small_groups


@pytest.fixture(scope="session")
def zoo():
    return small_groups()
