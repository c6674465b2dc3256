"""Shared fixtures: the deterministic toy vector store, the small ontology
and recipe corpus, and scorers wired for the default pipeline config."""

from __future__ import annotations

from pathlib import Path

import pytest

from rulebridge import (
    PipelineConfig,
    VectorStore,
    clean_and_split,
    load_ontology,
    load_recipes,
    make_embedding_scorer,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def vector_store() -> VectorStore:
    return VectorStore.load(FIXTURES / "vectors_16d.txt")


@pytest.fixture(scope="session")
def ontology():
    return load_ontology(FIXTURES / "ontology_small.xml")


@pytest.fixture(scope="session")
def raw_recipes():
    return load_recipes(FIXTURES / "recipes_small.csv")


@pytest.fixture(scope="session")
def catalog(raw_recipes):
    built, _report = clean_and_split(raw_recipes)
    return built


@pytest.fixture(scope="session")
def embed_scorer(vector_store):
    return make_embedding_scorer(vector_store)


@pytest.fixture
def cfg() -> PipelineConfig:
    return PipelineConfig()


# One visible pass/fail line per acceptance criterion, collected as the
# acceptance tests run and appended to the terminal summary.
_acceptance_lines: list[str] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].removeprefix("test_")
    status = "PASS" if report.passed else "FAIL"
    _acceptance_lines.append(f"{status}: {name.replace('_', ' ')}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in _acceptance_lines:
        terminalreporter.write_line(line)
