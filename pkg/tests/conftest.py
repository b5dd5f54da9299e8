import pytest

from dvblab.exactla import LinMap, Space, vec
from dvblab.sampling import make_rng


def q(*entries):
    return vec(*entries)


def mat(rows, domain=None, codomain=None):
    """LinMap from a row list; spaces default to plain ``Q^n``."""
    rows = [tuple(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    return LinMap(domain or Space(n), codomain or Space(m), [q(*r) for r in rows])


@pytest.fixture
def rng():
    return make_rng(12345, "tests")
