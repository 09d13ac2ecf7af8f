import time

import pytest

from revmaps.verify import VERIFY_MATRIX, verify_theorem


@pytest.fixture(scope="session")
def matrix_reports():
    """One full verification run over all desk-scale configurations.

    Returns (reports, durations) keyed by (family, p, m); computed once and
    shared, so acceptance criteria can assert both content and runtime.
    """
    reports = {}
    durations = {}
    for family, p, m in VERIFY_MATRIX:
        t0 = time.perf_counter()
        reports[(family, p, m)] = verify_theorem(family, p, m)
        durations[(family, p, m)] = time.perf_counter() - t0
    return reports, durations
