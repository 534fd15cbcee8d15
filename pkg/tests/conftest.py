import pytest

from fanobalance.database import load_builtin


@pytest.fixture(scope="session")
def records():
    return load_builtin()


@pytest.fixture(scope="session")
def by_name(records):
    return {rec.name: rec for rec in records}
