import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record pass/fail for an acceptance criterion: ``criterion(num, label)``."""
    entries = []

    def register(num, label):
        entries.append((num, label))

    yield register
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    for num, label in entries:
        ACCEPTANCE_RESULTS[num] = (status, label)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        status, label = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"[{status}] criterion {num:2d}: {label}")
