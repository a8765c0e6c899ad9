import json

import pytest

from mograms.fixtures import fixture_path
from mograms.model import load_solution_set
from mograms.similarity import load_precomputed_matrix


@pytest.fixture(scope="session")
def toy_matrix():
    return load_precomputed_matrix(fixture_path("toy_matrix.json"))


@pytest.fixture(scope="session")
def toy_set():
    return load_solution_set(fixture_path("toy_solutions.json"))


@pytest.fixture(scope="session")
def toy_matrix_doc():
    return json.loads(fixture_path("toy_matrix.json").read_text())


@pytest.fixture(scope="session")
def toy_set_doc():
    return json.loads(fixture_path("toy_solutions.json").read_text())


TOY_EDGES = [(1, 2), (1, 3), (2, 3), (2, 5), (2, 7), (4, 5), (5, 6)]


@pytest.fixture(scope="session")
def toy_edges():
    return list(TOY_EDGES)
