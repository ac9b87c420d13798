from __future__ import annotations

from importlib import resources

import pytest

from gonlab.corpus import CorpusBounds, generate_corpus
from gonlab.io import read_graph, read_morphism

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def data_path(name: str):
    return resources.files("gonlab") / "data" / name


@pytest.fixture(scope="session")
def corpus():
    """The full exhaustive corpus: <= 4 vertices, <= 5 edges, both length pools."""
    return generate_corpus(0)


@pytest.fixture(scope="session")
def small_corpus():
    return generate_corpus(0, CorpusBounds(3, 3, random_count=6))


@pytest.fixture
def twogon_n2():
    return read_graph(data_path("twogon_n2.json")).graph


@pytest.fixture
def banana():
    return read_morphism(data_path("banana_map.json")).morphism


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        for name, outcome in _CRITERIA[n]:
            verdict = "PASS" if outcome == "passed" else "FAIL"
            terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {name}")
