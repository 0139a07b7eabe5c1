import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def verdict(request):
    """Call with (number, title, report) to log one acceptance line and assert on it."""
    lines = request.config._acceptance_lines

    def record(number, title, rep, seconds):
        status = "PASS" if rep.passed else "FAIL"
        done = len(rep.lines) - len(rep.failures)
        line = f"[{status}] criterion {number:2d}: {title} ({done}/{len(rep.lines)} checks, {seconds:.2f}s)"
        lines.append((number, line))
        print(line)
        assert rep.lines, "suite produced no checks"
        assert rep.passed, "\n".join(rep.failures[:20])

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
