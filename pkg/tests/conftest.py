import pathlib

import pytest

from liveblogsum.corpus import load_corpus
from liveblogsum.evaluate import run_benchmark

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def benchmark_corpus():
    return load_corpus(FIXTURES / "corpus" / "benchmark20.json")


@pytest.fixture(scope="session")
def violations_corpus():
    return load_corpus(FIXTURES / "corpus" / "prune_violations.json")


@pytest.fixture(scope="session")
def benchmark_report(benchmark_corpus):
    # shared across evaluation and acceptance tests; one full run is enough
    return run_benchmark(benchmark_corpus)


# one visible pass/fail line per acceptance criterion
_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "::test_criterion_" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and report.failed):
            _criteria[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_criteria):
        name = nodeid.split("::test_", 1)[-1]
        verdict = "PASS" if _criteria[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} {name}")
