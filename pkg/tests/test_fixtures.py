"""The packaged example data: the 7-node worked example plus three
application-scale sets (line balancing, classifier ensembles, entity
queries) that exercise each similarity metric end to end."""

import numpy as np
import pytest

from mograms.fixtures import fixture_path
from mograms.layout import graph_distances, kamada_kawai
from mograms.model import load_solution_set, validate_solution_set
from mograms.pathfinder import PathfinderParams, pathfinder_prune, to_distance
from mograms.render import emit_svg
from mograms.similarity import MetricChoice, build_similarity_matrix
from mograms.styling import StyleSpec, style

APPLICATION_FIXTURES = [
    ("tsalbp13.json", "tsalbp_line", 13, "assignment"),
    ("ensemble15.json", "hamming_binary", 15, "binary"),
    ("queries26.json", "levenshtein_tokens", 26, "tokens"),
]


def _metric(name):
    return MetricChoice(name)


def test_toy_matrix_entries(toy_matrix):
    named = {(1, 2): 0.8, (1, 3): 0.7, (2, 3): 0.7, (2, 5): 0.6,
             (2, 7): 0.5, (4, 5): 0.65, (5, 6): 0.7}
    expected = np.full((7, 7), 0.1)
    np.fill_diagonal(expected, 1.0)
    for (a, b), s in named.items():
        expected[a - 1, b - 1] = expected[b - 1, a - 1] = s
    assert np.array_equal(toy_matrix.values, expected)


def test_toy_solutions_fixture_shape(toy_set):
    assert toy_set.n == 7
    assert [o.name for o in toy_set.objectives] == ["stations", "area"]
    assert all(o.sense.value == "min" for o in toy_set.objectives)
    # a front: first objective ascending, second descending
    stations = [s.objective_values[0] for s in toy_set.solutions]
    area = [s.objective_values[1] for s in toy_set.solutions]
    assert stations == sorted(stations)
    assert area == sorted(area, reverse=True)


@pytest.mark.parametrize("name,metric,n,kind", APPLICATION_FIXTURES)
def test_fixture_loads_and_validates(name, metric, n, kind):
    sset = load_solution_set(fixture_path(name))
    assert validate_solution_set(sset) is sset
    assert sset.n == n
    assert sset.payload_kind == kind


@pytest.mark.parametrize("name,metric,n,kind", APPLICATION_FIXTURES)
def test_fixture_runs_end_to_end(name, metric, n, kind):
    sset = load_solution_set(fixture_path(name))
    matrix = build_similarity_matrix(sset, _metric(metric))
    g = pathfinder_prune(to_distance(matrix), PathfinderParams())
    assert g.n == n
    assert g.edge_count >= n - 1
    assert all(g.degree(i) >= 1 for i in range(1, n + 1))
    graph_distances(g)  # raises Disconnected if the network is not whole
    layout = kamada_kawai(g)
    assert layout.layout_report.converged
    svg = emit_svg(style(layout, sset))
    assert svg.count("<g id=\"node-") == n


def test_ensemble_fixture_has_narrow_similarity_band():
    sset = load_solution_set(fixture_path("ensemble15.json"))
    matrix = build_similarity_matrix(sset, _metric("hamming_binary"))
    g = pathfinder_prune(to_distance(matrix), PathfinderParams())
    sims = sorted(g.edge_similarity.values())
    assert g.edge_count == 14
    assert sims[0] == pytest.approx(0.86)
    assert sims[-1] == pytest.approx(0.95)
    assert all(0.86 <= s <= 0.95 for s in sims)


def test_ensemble_rescale_spreads_the_band():
    sset = load_solution_set(fixture_path("ensemble15.json"))
    matrix = build_similarity_matrix(sset, _metric("hamming_binary"))
    g = pathfinder_prune(to_distance(matrix), PathfinderParams())
    layout = kamada_kawai(g)

    wide = style(layout, sset, StyleSpec(similarity_display_range=(0.0, 1.0)))
    t_min, t_max = wide.spec.thickness_range
    spread_wide = max(e.thickness for e in wide.edge_render) - min(
        e.thickness for e in wide.edge_render
    )
    assert spread_wide < 0.15 * (t_max - t_min)  # narrow band barely registers

    narrow = style(layout, sset, StyleSpec(similarity_display_range=(0.86, 0.95)))
    thicknesses = sorted(e.thickness for e in narrow.edge_render)
    assert thicknesses[0] == t_min
    assert thicknesses[-1] == t_max


def test_line_fixture_station_structure():
    sset = load_solution_set(fixture_path("tsalbp13.json"))
    counts = {len(s.design.stations) for s in sset.solutions}
    assert len(counts) > 1  # alternatives trade stations against other costs
    for sol in sset.solutions:
        tasks = [t for st in sol.design.stations for t in st]
        assert len(tasks) == len(set(tasks))


def test_query_fixture_token_structure():
    sset = load_solution_set(fixture_path("queries26.json"))
    lengths = {len(s.design.tokens) for s in sset.solutions}
    assert len(lengths) > 1
    assert all(len(s.design.tokens) >= 1 for s in sset.solutions)
