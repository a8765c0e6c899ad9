"""Visual encoding: objective sectors with opacity, similarity-scaled edges.

Each node is split into one equal sector per objective.  A sector's opacity
encodes how good the solution is on that objective over the current node
set: the best value is fully opaque, the worst fully transparent.  This
holds for both senses, so "strong color" always reads as "good".  Edge
thickness is an affine map of similarity over a display range, which the
decision maker can narrow to spread visually similar edges apart.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .errors import ArityMismatch, InvalidParams, InvalidRange
from .model import LayoutedMoGram, Sense, SolutionSet

# First two entries are the conventional hues for two-objective sets; the
# rest complete a fixed 8-color cycle for higher objective counts.
DEFAULT_PALETTE: tuple[str, ...] = (
    "#E69500",
    "#1F77B4",
    "#2CA02C",
    "#D62728",
    "#9467BD",
    "#8C564B",
    "#E377C2",
    "#7F7F7F",
)

DEFAULT_UNIFORM_COLOR = "#808080"


@dataclass(frozen=True)
class StyleSpec:
    """Rendering knobs; ``similarity_display_range=None`` means auto (min/max
    retained edge similarity, resolved by :func:`style`)."""

    palette: tuple[str, ...] = DEFAULT_PALETTE
    node_radius: float = 18.0
    thickness_range: tuple[float, float] = (1.0, 6.0)
    similarity_display_range: tuple[float, float] | None = None
    label_decimals: int = 2
    objective_coloring_enabled: bool = True
    uniform_color: str = DEFAULT_UNIFORM_COLOR

    def __post_init__(self) -> None:
        if not self.palette:
            raise InvalidParams("palette must not be empty")
        if self.node_radius <= 0:
            raise InvalidParams("node_radius must be positive")
        t_min, t_max = self.thickness_range
        if not (0 < t_min < t_max):
            raise InvalidParams(
                f"thickness_range must satisfy 0 < t_min < t_max, got {self.thickness_range}"
            )
        if self.similarity_display_range is not None:
            s_lo, s_hi = self.similarity_display_range
            if not (0.0 <= s_lo < s_hi <= 1.0):
                raise InvalidRange(
                    f"similarity display range must satisfy 0 <= s_lo < s_hi <= 1, "
                    f"got ({s_lo}, {s_hi})"
                )
        if self.label_decimals < 0:
            raise InvalidParams("label_decimals must be >= 0")


@dataclass(frozen=True)
class NodeSector:
    color: str
    alpha: float


@dataclass(frozen=True)
class EdgeRender:
    a: int
    b: int
    similarity: float
    thickness: float
    label: str


@dataclass(frozen=True)
class StyledMoGram:
    """A laid-out network plus everything an emitter needs.

    ``spec`` is the fully resolved style (auto display range filled in).
    ``node_labels`` carries display ids, which differ from positional ids
    after a session has excluded nodes.
    """

    layout: LayoutedMoGram
    spec: StyleSpec
    node_sectors: tuple[tuple[NodeSector, ...], ...]
    edge_render: tuple[EdgeRender, ...]
    node_labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.layout.base.n


def sector_alpha(value: float, f_min: float, f_max: float, sense: Sense) -> float:
    """Opacity of one objective sector; 1 = best value in the set, 0 = worst."""
    if f_max == f_min:
        return 1.0
    if sense is Sense.MINIMIZE:
        alpha = (f_max - value) / (f_max - f_min)
    else:
        alpha = (value - f_min) / (f_max - f_min)
    return min(1.0, max(0.0, alpha))


def edge_thickness(sim: float, spec: StyleSpec) -> float:
    """Stroke width for a similarity value: clamp to the display range, then
    map affinely onto [t_min, t_max]."""
    if spec.similarity_display_range is None:
        raise InvalidRange("similarity display range not resolved; call style() first")
    s_lo, s_hi = spec.similarity_display_range
    t_min, t_max = spec.thickness_range
    clamped = min(s_hi, max(s_lo, sim))
    return t_min + (t_max - t_min) * (clamped - s_lo) / (s_hi - s_lo)


def _auto_display_range(sims: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(sims), max(sims)
    if lo < hi:
        return (lo, hi)
    # All retained edges share one similarity value.  Any valid range maps
    # them to one thickness; anchor the shared value at the top end.
    if hi > 0.0:
        return (0.0, hi)
    return (0.0, 1.0)


def style(
    layout: LayoutedMoGram,
    sset: SolutionSet,
    spec: StyleSpec | None = None,
    labels: Sequence[str] | None = None,
) -> StyledMoGram:
    """Attach visual attributes to a laid-out network.

    ``labels`` overrides the displayed node ids (used by sessions to keep
    original numbering after exclusions); defaults to the solution ids.
    """
    spec = spec or StyleSpec()
    g = layout.base
    if g.n != sset.n:
        raise ArityMismatch(
            f"layout has {g.n} nodes but the solution set has {sset.n}"
        )
    if spec.objective_coloring_enabled and len(spec.palette) < sset.n_obj:
        raise ArityMismatch(
            f"palette has {len(spec.palette)} colors for {sset.n_obj} objectives"
        )
    if labels is None:
        labels = [str(s.id) for s in sset.solutions]
    elif len(labels) != g.n:
        raise ArityMismatch(f"{len(labels)} labels for {g.n} nodes")

    if spec.similarity_display_range is None:
        resolved = replace(
            spec,
            similarity_display_range=_auto_display_range(
                list(g.edge_similarity.values())
            ),
        )
    else:
        resolved = spec

    if spec.objective_coloring_enabled:
        ranges = []
        for j, obj in enumerate(sset.objectives):
            column = sset.objective_column(j)
            ranges.append((min(column), max(column), obj.sense))
        node_sectors = tuple(
            tuple(
                NodeSector(
                    color=resolved.palette[j],
                    alpha=sector_alpha(sol.objective_values[j], lo, hi, sense),
                )
                for j, (lo, hi, sense) in enumerate(ranges)
            )
            for sol in sset.solutions
        )
    else:
        disc = (NodeSector(color=resolved.uniform_color, alpha=1.0),)
        node_sectors = tuple(disc for _ in range(g.n))

    edge_render = tuple(
        EdgeRender(
            a=a,
            b=b,
            similarity=g.edge_similarity[(a, b)],
            thickness=edge_thickness(g.edge_similarity[(a, b)], resolved),
            label=f"{g.edge_similarity[(a, b)]:.{resolved.label_decimals}f}",
        )
        for a, b in g.edges()
    )

    return StyledMoGram(
        layout=layout,
        spec=resolved,
        node_sectors=node_sectors,
        edge_render=edge_render,
        node_labels=tuple(labels),
    )
