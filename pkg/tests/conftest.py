import pytest

from sympeaks.verify import brute_cell, brute_joint, brute_total


@pytest.fixture(scope="session")
def brute():
    """Cached brute-force lookups: brute.cell(n, k, stat), brute.total(n, stat), brute.joint(n, family)."""
    class Brute:
        cell = staticmethod(brute_cell)
        total = staticmethod(brute_total)
        joint = staticmethod(brute_joint)
    return Brute


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
