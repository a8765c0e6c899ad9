import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from mograms.layout import LayoutParams, kamada_kawai
from mograms.pathfinder import PathfinderParams, pathfinder_prune, to_distance
from mograms.render import CANVAS, emit_dot, emit_svg, pixel_positions
from mograms.styling import StyleSpec, style

from helpers import mogram_from_edges, plain_solution_set

SVG_NS = "{http://www.w3.org/2000/svg}"

_DOT_NODE = re.compile(r'^  n(\d+) \[label="([^"]*)", pos="(-?\d+\.\d\d),(-?\d+\.\d\d)!"\];$')
_DOT_EDGE = re.compile(r'^  n(\d+) -- n(\d+) \[penwidth=(\d+\.\d\d), label="([^"]*)"\];$')


@pytest.fixture(scope="module")
def toy_styled(toy_matrix, toy_set):
    g = pathfinder_prune(to_distance(toy_matrix), PathfinderParams())
    return style(kamada_kawai(g), toy_set)


@pytest.fixture(scope="module")
def toy_svg(toy_styled):
    return emit_svg(toy_styled)


def _node_groups(svg_text):
    root = ET.fromstring(svg_text)
    return [
        g
        for g in root.iter(f"{SVG_NS}g")
        if g.get("id", "").startswith("node-")
    ]


# -- SVG structure ------------------------------------------------------------------

def test_svg_is_well_formed_xml(toy_svg):
    root = ET.fromstring(toy_svg)
    assert root.tag == f"{SVG_NS}svg"
    assert root.get("version") == "1.1"


def test_svg_counts_for_toy_network(toy_svg):
    root = ET.fromstring(toy_svg)
    assert len(_node_groups(toy_svg)) == 7
    assert len(root.findall(f".//{SVG_NS}line")) == 7


def test_two_objective_nodes_have_two_sector_paths(toy_svg):
    for group in _node_groups(toy_svg):
        paths = group.findall(f"{SVG_NS}path")
        circles = group.findall(f"{SVG_NS}circle")
        texts = group.findall(f"{SVG_NS}text")
        assert len(paths) == 2
        assert len(circles) == 1  # white backing disc
        assert circles[0].get("fill") == "#FFFFFF"
        assert len(texts) == 1


def test_node_groups_ordered_by_id(toy_svg):
    ids = [g.get("id") for g in _node_groups(toy_svg)]
    assert ids == [f"node-{i}" for i in range(1, 8)]
    labels = [g.find(f"{SVG_NS}text").text for g in _node_groups(toy_svg)]
    assert labels == [str(i) for i in range(1, 8)]


def test_edge_labels_present(toy_svg):
    root = ET.fromstring(toy_svg)
    edge_texts = {
        t.text
        for t in root.iter(f"{SVG_NS}text")
        if t.get("dy") == "-3"
    }
    assert {"0.80", "0.70", "0.65", "0.60", "0.50"} <= edge_texts


def test_emission_is_byte_identical(toy_styled, toy_matrix, toy_set):
    again = emit_svg(toy_styled)
    assert again == emit_svg(toy_styled)
    g = pathfinder_prune(to_distance(toy_matrix), PathfinderParams())
    rebuilt = style(kamada_kawai(g), toy_set)
    assert emit_svg(rebuilt) == again
    assert emit_dot(rebuilt) == emit_dot(toy_styled)


def test_viewbox_adds_ten_percent_margin(toy_styled, toy_svg):
    px = pixel_positions(toy_styled)
    lo = px.min(axis=0)
    hi = px.max(axis=0)
    margin = 0.10 * max(hi[0] - lo[0], hi[1] - lo[1])
    vx, vy, vw, vh = (float(v) for v in ET.fromstring(toy_svg).get("viewBox").split())
    assert vx == pytest.approx(lo[0] - margin, abs=0.01)
    assert vy == pytest.approx(lo[1] - margin, abs=0.01)
    assert vw == pytest.approx((hi[0] - lo[0]) + 2 * margin, abs=0.01)
    assert vh == pytest.approx((hi[1] - lo[1]) + 2 * margin, abs=0.01)


def test_first_sector_starts_at_twelve_oclock(toy_styled, toy_svg):
    px = pixel_positions(toy_styled)
    group = _node_groups(toy_svg)[0]
    first = group.findall(f"{SVG_NS}path")[0]
    tokens = first.get("d").split()
    # M cx cy L x0 y0 A r r 0 large sweep x1 y1 Z
    assert tokens[0] == "M" and tokens[3] == "L" and tokens[6] == "A"
    cx, cy = float(tokens[1]), float(tokens[2])
    x0, y0 = float(tokens[4]), float(tokens[5])
    r = float(tokens[7])
    assert cx == pytest.approx(px[0, 0], abs=0.01)
    assert x0 == pytest.approx(cx, abs=0.01)
    assert y0 == pytest.approx(cy - r, abs=0.01)  # straight up, y-down canvas
    assert tokens[11] == "1"  # clockwise sweep
    # with two sectors the first one ends at 6 o'clock
    x1, y1 = float(tokens[12]), float(tokens[13])
    assert x1 == pytest.approx(cx, abs=0.01)
    assert y1 == pytest.approx(cy + r, abs=0.01)


def test_three_sectors_are_arcs_of_120_degrees():
    sset = plain_solution_set([[1.0, 5.0, 2.0], [2.0, 4.0, 1.0], [3.0, 3.0, 3.0]])
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    styled = style(kamada_kawai(g), sset)
    svg = emit_svg(styled)
    group = _node_groups(svg)[0]
    paths = group.findall(f"{SVG_NS}path")
    assert len(paths) == 3
    for p in paths:
        tokens = p.get("d").split()
        cx, cy = float(tokens[1]), float(tokens[2])
        x0, y0 = float(tokens[4]), float(tokens[5])
        x1, y1 = float(tokens[12]), float(tokens[13])
        r = float(tokens[7])
        chord = np.hypot(x1 - x0, y1 - y0)
        assert chord == pytest.approx(r * np.sqrt(3.0), abs=0.05)


def test_single_objective_renders_full_disc():
    sset = plain_solution_set([[1.0], [2.0], [3.0]])
    g = mogram_from_edges(3, {(1, 2): 0.9, (2, 3): 0.4})
    svg = emit_svg(style(kamada_kawai(g), sset))
    for group in _node_groups(svg):
        assert len(group.findall(f"{SVG_NS}path")) == 0
        circles = group.findall(f"{SVG_NS}circle")
        assert len(circles) == 2  # backing disc + colored disc
        assert circles[1].get("fill-opacity") is not None


def test_uniform_mode_disc_color(toy_matrix, toy_set):
    g = pathfinder_prune(to_distance(toy_matrix), PathfinderParams())
    spec = StyleSpec(objective_coloring_enabled=False)
    svg = emit_svg(style(kamada_kawai(g), toy_set, spec))
    for group in _node_groups(svg):
        circles = group.findall(f"{SVG_NS}circle")
        assert len(circles) == 2
        assert circles[1].get("fill") == spec.uniform_color
        assert circles[1].get("fill-opacity") == "1.0000"


def test_coordinates_use_fixed_point_format(toy_svg):
    assert not re.search(r"\d[eE][+-]?\d", toy_svg)
    for number in re.findall(r'(?<= )[xy][12]?="(-?\d+\.\d+)"', toy_svg):
        whole, frac = number.lstrip("-").split(".")
        assert len(frac) == 2
    assert "-0.00" not in toy_svg


def test_pixel_positions_fit_canvas(toy_styled):
    px = pixel_positions(toy_styled)
    span = px.max(axis=0) - px.min(axis=0)
    assert span.max() == pytest.approx(CANVAS, rel=1e-9)
    # y axis flips between layout and pixels
    pos = toy_styled.layout.positions
    assert np.argmax(pos[:, 1]) == np.argmin(px[:, 1])


# -- DOT output ----------------------------------------------------------------------

def test_dot_structure_and_counts(toy_styled):
    dot = emit_dot(toy_styled)
    lines = dot.strip().split("\n")
    assert lines[0] == "graph mogram {"
    assert lines[-1] == "}"
    node_lines = [l for l in lines if _DOT_NODE.match(l)]
    edge_lines = [l for l in lines if _DOT_EDGE.match(l)]
    assert len(node_lines) == 7
    assert len(edge_lines) == 7
    # every body statement is a default, node, or edge statement
    for line in lines[1:-1]:
        assert (
            _DOT_NODE.match(line)
            or _DOT_EDGE.match(line)
            or line.startswith("  node [")
        )


def test_dot_labels_verbatim(toy_styled):
    dot = emit_dot(toy_styled)
    labels = {m.group(2) for m in map(_DOT_NODE.match, dot.split("\n")) if m}
    assert labels == {str(i) for i in range(1, 8)}
    edges = {
        (int(m.group(1)), int(m.group(2)), m.group(4))
        for m in map(_DOT_EDGE.match, dot.split("\n"))
        if m
    }
    assert (1, 2, "0.80") in edges
    assert (2, 7, "0.50") in edges


def test_dot_penwidths_match_thickness(toy_styled):
    dot = emit_dot(toy_styled)
    widths = {
        (int(m.group(1)), int(m.group(2))): float(m.group(3))
        for m in map(_DOT_EDGE.match, dot.split("\n"))
        if m
    }
    by_pair = {(e.a, e.b): e.thickness for e in toy_styled.edge_render}
    for pair, width in widths.items():
        assert width == pytest.approx(by_pair[pair], abs=0.005)
