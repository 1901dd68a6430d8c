import pytest

_ACCEPTANCE: list[tuple[str, str, bool, str]] = []


class Recorder:
    def __init__(self, criterion):
        self.criterion = criterion

    def __call__(self, name, passed, detail=""):
        _ACCEPTANCE.append((self.criterion, name, bool(passed), detail))
        return passed


@pytest.fixture
def record(request):
    marker = request.node.get_closest_marker("criterion")
    return Recorder(marker.args[0] if marker else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, name, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  [{crit}] {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
