import functools

import pytest

from rogue_infinite import elliptic_data, spectral

ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def curve_at(chi, tau):
    return spectral.solve_lambda(chi, tau)


@functools.lru_cache(maxsize=None)
def data_at(chi, tau):
    return elliptic_data.elliptic_data(curve_at(chi, tau))


@pytest.fixture
def record():
    """Store an acceptance verdict; the summary hook prints one line per criterion."""

    def _record(number, title, passed, detail=""):
        ACCEPTANCE[number] = (title, passed, detail)
        print(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}: {title} {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if passed else 'FAIL'}: {title} ({detail})")
