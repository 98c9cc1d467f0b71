import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    lines = []
    yield lines.append
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    status = "FAIL" if failed else "PASS"
    detail = "; ".join(lines)
    _ACCEPTANCE_LINES.append(f"{status} {request.node.name}: {detail}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
