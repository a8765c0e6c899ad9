import pytest

from mograms.errors import ArityMismatch, InvalidParams, InvalidRange
from mograms.layout import kamada_kawai
from mograms.model import Sense
from mograms.pathfinder import PathfinderParams, pathfinder_prune, to_distance
from mograms.styling import (
    DEFAULT_PALETTE,
    StyleSpec,
    edge_thickness,
    sector_alpha,
    style,
)

from helpers import mogram_from_edges, plain_solution_set


@pytest.fixture(scope="module")
def toy_styled(toy_matrix, toy_set):
    g = pathfinder_prune(to_distance(toy_matrix), PathfinderParams())
    return style(kamada_kawai(g), toy_set)


# -- sector opacity ---------------------------------------------------------------

def test_alpha_minimization_endpoints():
    assert sector_alpha(3.0, 3.0, 9.0, Sense.MINIMIZE) == 1.0
    assert sector_alpha(9.0, 3.0, 9.0, Sense.MINIMIZE) == 0.0
    assert sector_alpha(6.0, 3.0, 9.0, Sense.MINIMIZE) == 0.5


def test_alpha_maximization_endpoints():
    assert sector_alpha(9.0, 3.0, 9.0, Sense.MAXIMIZE) == 1.0
    assert sector_alpha(3.0, 3.0, 9.0, Sense.MAXIMIZE) == 0.0
    assert sector_alpha(6.0, 3.0, 9.0, Sense.MAXIMIZE) == 0.5


def test_alpha_degenerate_range_is_opaque():
    assert sector_alpha(5.0, 5.0, 5.0, Sense.MINIMIZE) == 1.0
    assert sector_alpha(5.0, 5.0, 5.0, Sense.MAXIMIZE) == 1.0


def test_alpha_is_affine_and_order_reversing_for_minimization():
    values = [3.0, 4.5, 6.0, 7.5, 9.0]
    alphas = [sector_alpha(v, 3.0, 9.0, Sense.MINIMIZE) for v in values]
    assert alphas == sorted(alphas, reverse=True)
    steps = [a - b for a, b in zip(alphas, alphas[1:])]
    assert all(s == pytest.approx(steps[0]) for s in steps)


def test_alpha_clamped_to_unit_interval():
    assert sector_alpha(10.0, 3.0, 9.0, Sense.MINIMIZE) == 0.0
    assert sector_alpha(2.0, 3.0, 9.0, Sense.MINIMIZE) == 1.0


# -- edge thickness ----------------------------------------------------------------

def _spec(**kw):
    kw.setdefault("similarity_display_range", (0.5, 0.8))
    return StyleSpec(**kw)


def test_thickness_endpoints():
    spec = _spec()
    t_min, t_max = spec.thickness_range
    assert edge_thickness(0.8, spec) == t_max
    assert edge_thickness(0.5, spec) == t_min


def test_thickness_clamps_out_of_range_sims():
    spec = _spec()
    t_min, t_max = spec.thickness_range
    assert edge_thickness(0.95, spec) == t_max
    assert edge_thickness(0.1, spec) == t_min


def test_thickness_monotone_in_similarity():
    spec = _spec()
    sims = [0.5, 0.55, 0.6, 0.7, 0.8]
    ts = [edge_thickness(s, spec) for s in sims]
    assert ts == sorted(ts)
    assert len(set(ts)) == len(ts)


def test_thickness_requires_resolved_range():
    with pytest.raises(InvalidRange):
        edge_thickness(0.5, StyleSpec())


# -- spec validation ----------------------------------------------------------------

def test_style_spec_validation():
    with pytest.raises(InvalidParams):
        StyleSpec(node_radius=0.0)
    with pytest.raises(InvalidParams):
        StyleSpec(thickness_range=(3.0, 1.0))
    with pytest.raises(InvalidParams):
        StyleSpec(thickness_range=(0.0, 6.0))
    with pytest.raises(InvalidRange):
        StyleSpec(similarity_display_range=(0.8, 0.5))
    with pytest.raises(InvalidRange):
        StyleSpec(similarity_display_range=(-0.1, 0.5))
    with pytest.raises(InvalidParams):
        StyleSpec(label_decimals=-1)
    with pytest.raises(InvalidParams):
        StyleSpec(palette=())


# -- styling the toy network -----------------------------------------------------------

def test_toy_node_one_sector_colors_and_alphas(toy_styled):
    first, second = toy_styled.node_sectors[0]
    assert first.color == DEFAULT_PALETTE[0]
    assert first.alpha == 1.0
    assert second.color == DEFAULT_PALETTE[1]
    assert second.alpha == 0.0


def test_toy_node_seven_reverses_the_pattern(toy_styled):
    first, second = toy_styled.node_sectors[6]
    assert first.alpha == 0.0
    assert second.alpha == 1.0


def test_toy_auto_display_range_spans_retained_sims(toy_styled):
    assert toy_styled.spec.similarity_display_range == (0.5, 0.8)


def test_toy_edge_one_two_thicker_than_two_seven(toy_styled):
    by_pair = {(e.a, e.b): e for e in toy_styled.edge_render}
    assert by_pair[(1, 2)].thickness > by_pair[(2, 7)].thickness
    assert by_pair[(1, 2)].thickness == toy_styled.spec.thickness_range[1]
    assert by_pair[(2, 7)].thickness == toy_styled.spec.thickness_range[0]


def test_toy_edge_labels_rounded_to_two_decimals(toy_styled):
    labels = {(e.a, e.b): e.label for e in toy_styled.edge_render}
    assert labels[(1, 2)] == "0.80"
    assert labels[(4, 5)] == "0.65"


def test_toy_default_labels_are_solution_ids(toy_styled):
    assert toy_styled.node_labels == tuple(str(i) for i in range(1, 8))


# -- sector counts and uniform mode ------------------------------------------------------

@pytest.mark.parametrize("n_obj", [1, 2, 3, 5])
def test_sector_count_equals_objective_count(n_obj):
    values = [[float(i + j) for j in range(n_obj)] for i in range(3)]
    sset = plain_solution_set(values)
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    styled = style(kamada_kawai(g), sset)
    assert all(len(sectors) == n_obj for sectors in styled.node_sectors)


def test_uniform_mode_single_disc():
    sset = plain_solution_set([[1.0, 5.0], [2.0, 4.0], [3.0, 3.0]])
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    spec = StyleSpec(objective_coloring_enabled=False, uniform_color="#123456")
    styled = style(kamada_kawai(g), sset, spec)
    for sectors in styled.node_sectors:
        assert len(sectors) == 1
        assert sectors[0].color == "#123456"
        assert sectors[0].alpha == 1.0


def test_single_shared_similarity_anchors_at_top_thickness():
    sset = plain_solution_set([[1.0, 5.0], [2.0, 4.0], [3.0, 3.0]])
    g = mogram_from_edges(3, {(1, 2): 0.7, (2, 3): 0.7})
    styled = style(kamada_kawai(g), sset)
    assert styled.spec.similarity_display_range == (0.0, 0.7)
    assert all(e.thickness == styled.spec.thickness_range[1] for e in styled.edge_render)


def test_explicit_display_range_is_kept():
    sset = plain_solution_set([[1.0, 5.0], [2.0, 4.0], [3.0, 3.0]])
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    spec = StyleSpec(similarity_display_range=(0.2, 0.6))
    styled = style(kamada_kawai(g), sset, spec)
    assert styled.spec.similarity_display_range == (0.2, 0.6)
    by_pair = {(e.a, e.b): e for e in styled.edge_render}
    assert by_pair[(1, 2)].thickness == spec.thickness_range[1]  # clamped high


# -- arity errors -------------------------------------------------------------------------

def test_node_count_mismatch_rejected(toy_set):
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    with pytest.raises(ArityMismatch):
        style(kamada_kawai(g), toy_set)


def test_palette_shorter_than_objectives_rejected():
    values = [[float(i + j) for j in range(3)] for i in range(3)]
    sset = plain_solution_set(values)
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    with pytest.raises(ArityMismatch):
        style(kamada_kawai(g), sset, StyleSpec(palette=("#111111", "#222222")))


def test_label_override_length_checked(toy_set, toy_matrix):
    g = pathfinder_prune(to_distance(toy_matrix), PathfinderParams())
    with pytest.raises(ArityMismatch):
        style(kamada_kawai(g), toy_set, labels=["a", "b"])
