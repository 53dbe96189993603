from itertools import permutations

import pytest


def perms(n):
    return permutations(range(1, n + 1))


@pytest.fixture
def run_cli(capsys):
    from permfam.cli import main

    def run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err
    return run


_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(name.split("_")[2])
        title = " ".join(name.split("_")[3:])
        _CRITERIA[num] = (title, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, verdict = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {title}")
