import pytest

from santalo_lab.acceptance import CRITERIA, criterion_11

_RESULTS = {}


@pytest.fixture(scope="session")
def acceptance():
    """Run each criterion at most once per session; criterion 11 reuses 1-10 as reference."""

    def get(k):
        if k not in _RESULTS:
            if k == 11:
                ref = {j: get(j).csv() for j in CRITERIA}
                _RESULTS[k] = criterion_11(ref)
            else:
                _RESULTS[k] = CRITERIA[k]()
        return _RESULTS[k]

    return get


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_RESULTS):
            terminalreporter.write_line(_RESULTS[k].line())
