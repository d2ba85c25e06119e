"""Session fixtures: each packaged experiment runs once and is shared."""

import pytest

from fredet.examples import run_example


def _run(example_id, tmp_path_factory):
    outdir = tmp_path_factory.mktemp(f"example{example_id}")
    return {"summary": run_example(example_id, str(outdir)), "dir": outdir}


@pytest.fixture(scope="session")
def ex1(tmp_path_factory):
    return _run(1, tmp_path_factory)


@pytest.fixture(scope="session")
def ex2(tmp_path_factory):
    return _run(2, tmp_path_factory)


@pytest.fixture(scope="session")
def ex3(tmp_path_factory):
    return _run(3, tmp_path_factory)


@pytest.fixture(scope="session")
def ex4(tmp_path_factory):
    return _run(4, tmp_path_factory)
