from pathlib import Path

import pytest

from normcite import load_baselines, load_publications

DATA = Path(__file__).resolve().parent.parent / "data"

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def trio():
    return load_publications(DATA / "trio_publications.csv"), load_baselines(DATA / "trio_baselines.csv")


@pytest.fixture
def four_years():
    return load_publications(DATA / "four_years_publications.csv"), load_baselines(DATA / "four_years_baselines.csv")


@pytest.fixture
def tied_year():
    return load_publications(DATA / "tied_year_publications.csv"), load_baselines(DATA / "tied_year_baselines.csv")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, text = marker
    if report.when == "call" or report.failed:
        prev = _criteria.get(number)
        status = "FAIL" if report.failed or (prev and prev[1] == "FAIL") else "PASS"
        _criteria[number] = (text, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, status = _criteria[number]
        terminalreporter.write_line(f"AC{number:<2} {status}  {text}")
