"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

_TITLES: dict[int, str] = {}
_OUTCOMES: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): test belongs to a numbered acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _TITLES[number] = title
    # an expected failure still means the criterion, as stated, is not met
    passed = call.excinfo is None
    _OUTCOMES.setdefault(number, []).append(passed)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        status = "PASS" if all(_OUTCOMES[number]) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:2d}: {_TITLES[number]}")
