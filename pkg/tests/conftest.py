import pytest

from core.graded import AQCoeff
from core.qseries import QWindowSeries


@pytest.fixture
def aq():
    """Build an AQCoeff from (a, q, count) triples."""

    def _make(*triples, window=None):
        return AQCoeff.from_table(triples, window)

    return _make


@pytest.fixture
def qpoly():
    def _make(terms, window=None):
        return QWindowSeries.from_dict(terms, window)

    return _make
