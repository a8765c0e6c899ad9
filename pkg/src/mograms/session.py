"""Stateful exploration sessions over the pipeline.

A session runs the four pipeline phases once, caches the similarity matrix,
and then supports the decision-maker operations: exclude nodes (prune +
re-layout on the cached submatrix, original ids kept as labels), rescale the
similarity display range, toggle objective coloring, and reset.  Restyling
operations never touch adjacency or positions.

Every mutation is appended to an operation log; replaying the log against a
fresh session reproduces the final view exactly.
"""

from __future__ import annotations

import secrets
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

import numpy as np

from .errors import MoGramError, TooFewRemaining, UnknownId
from .layout import LayoutParams, kamada_kawai
from .model import SimilarityMatrix, SolutionSet, validate_solution_set
from .pathfinder import PathfinderParams, pathfinder_prune, to_distance
from .render import emit_dot, emit_svg, pixel_positions
from .similarity import MetricChoice, build_similarity_matrix
from .styling import StyledMoGram, StyleSpec, style


@contextmanager
def _phase(name: str) -> Iterator[None]:
    """Tag any domain error with the pipeline phase it came from."""
    try:
        yield
    except MoGramError as exc:
        exc.detail.setdefault("phase", name)
        raise


@dataclass
class Session:
    id: str
    base_set: SolutionSet
    metric: MetricChoice
    base_matrix: SimilarityMatrix
    pf_params: PathfinderParams
    layout_params: LayoutParams
    base_style: StyleSpec
    style_spec: StyleSpec
    excluded: set[int] = field(default_factory=set)
    current: StyledMoGram | None = None
    current_set: SolutionSet | None = None
    op_log: list[dict] = field(default_factory=list)
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)
    last_access: float = field(default_factory=time.monotonic)

    @property
    def surviving_ids(self) -> list[int]:
        return [i for i in range(1, self.base_set.n + 1) if i not in self.excluded]


def _restricted(s: Session) -> tuple[SolutionSet, list[str], SimilarityMatrix]:
    """Base data limited to surviving ids, renumbered 1..m.

    Original ids travel on as display labels; objective values and payloads
    are untouched, so restyles renormalize opacities over the survivors.
    """
    keep = s.surviving_ids
    idx = [k - 1 for k in keep]
    sub = s.base_matrix.values[np.ix_(idx, idx)]
    matrix = SimilarityMatrix(n=len(keep), values=sub)
    solutions = tuple(
        replace(s.base_set.solutions[k - 1], id=new_id)
        for new_id, k in enumerate(keep, start=1)
    )
    restricted = SolutionSet(
        objectives=s.base_set.objectives,
        solutions=solutions,
        pool_size=s.base_set.pool_size,
    )
    return restricted, [str(k) for k in keep], matrix


def _regenerate(s: Session) -> None:
    sset, labels, matrix = _restricted(s)
    with _phase("pruning"):
        g = pathfinder_prune(to_distance(matrix), s.pf_params)
    with _phase("layout"):
        layout = kamada_kawai(g, s.layout_params)
    with _phase("styling"):
        s.current = style(layout, sset, s.style_spec, labels=labels)
    s.current_set = sset


def create_session(
    sset: SolutionSet,
    metric: MetricChoice,
    pf: PathfinderParams | None = None,
    lay: LayoutParams | None = None,
    style_spec: StyleSpec | None = None,
    session_id: str | None = None,
) -> Session:
    """Run all four phases end to end and cache the similarity matrix."""
    pf = pf or PathfinderParams()
    lay = lay or LayoutParams()
    style_spec = style_spec or StyleSpec()
    with _phase("similarity"):
        validate_solution_set(sset)
        matrix = build_similarity_matrix(sset, metric)
    s = Session(
        id=session_id or secrets.token_hex(12),
        base_set=sset,
        metric=metric,
        base_matrix=matrix,
        pf_params=pf,
        layout_params=lay,
        base_style=style_spec,
        style_spec=style_spec,
    )
    _regenerate(s)
    return s


def exclude_nodes(s: Session, ids: Iterable[int]) -> Session:
    """Drop nodes and relaunch pruning + layout on the cached submatrix.

    Exclusions accumulate across calls; passing already-excluded or no ids
    is a no-op.
    """
    requested = set(ids)
    known = set(range(1, s.base_set.n + 1))
    unknown = requested - known
    if unknown:
        raise UnknownId(f"unknown node ids {sorted(unknown)}", ids=sorted(unknown))
    combined = s.excluded | requested
    if s.base_set.n - len(combined) < 2:
        raise TooFewRemaining(
            f"excluding {sorted(combined)} would leave fewer than 2 nodes",
            excluded=sorted(combined),
        )
    s.op_log.append({"op": "exclude", "ids": sorted(requested)})
    if combined != s.excluded:
        s.excluded = combined
        _regenerate(s)
    return s


def _restyle(s: Session) -> None:
    assert s.current is not None and s.current_set is not None
    with _phase("styling"):
        s.current = style(
            s.current.layout, s.current_set, s.style_spec, labels=s.current.node_labels
        )


def apply_style(
    s: Session,
    s_lo: float | None = None,
    s_hi: float | None = None,
    objective_coloring: bool | None = None,
    label_decimals: int | None = None,
) -> Session:
    """Partial style update; only restyles, never re-prunes or re-lays-out.

    When just one end of the display range is given, the other end keeps its
    currently resolved value.
    """
    changes: dict = {}
    if s_lo is not None or s_hi is not None:
        assert s.current is not None
        lo, hi = s.current.spec.similarity_display_range or (0.0, 1.0)
        new_lo = lo if s_lo is None else s_lo
        new_hi = hi if s_hi is None else s_hi
        changes["similarity_display_range"] = (new_lo, new_hi)
    if objective_coloring is not None:
        changes["objective_coloring_enabled"] = objective_coloring
    if label_decimals is not None:
        changes["label_decimals"] = label_decimals
    if changes:
        s.style_spec = replace(s.style_spec, **changes)  # validates ranges
        _restyle(s)
    entry: dict = {"op": "style"}
    if s_lo is not None:
        entry["s_lo"] = s_lo
    if s_hi is not None:
        entry["s_hi"] = s_hi
    if objective_coloring is not None:
        entry["objective_coloring"] = objective_coloring
    if label_decimals is not None:
        entry["label_decimals"] = label_decimals
    s.op_log.append(entry)
    return s


def set_similarity_display_range(s: Session, s_lo: float, s_hi: float) -> Session:
    return apply_style(s, s_lo=s_lo, s_hi=s_hi)


def set_objective_coloring(s: Session, enabled: bool) -> Session:
    return apply_style(s, objective_coloring=enabled)


def reset(s: Session) -> Session:
    """Clear exclusions and style overrides, back to the creation state."""
    s.op_log.append({"op": "reset"})
    s.excluded = set()
    s.style_spec = s.base_style
    _regenerate(s)
    return s


def replay(s: Session) -> Session:
    """Fresh session built from the same inputs with the op log reapplied."""
    twin = create_session(
        s.base_set, s.metric, s.pf_params, s.layout_params, s.base_style
    )
    for entry in list(s.op_log):
        op = entry["op"]
        if op == "exclude":
            exclude_nodes(twin, entry["ids"])
        elif op == "style":
            apply_style(
                twin,
                s_lo=entry.get("s_lo"),
                s_hi=entry.get("s_hi"),
                objective_coloring=entry.get("objective_coloring"),
                label_decimals=entry.get("label_decimals"),
            )
        elif op == "reset":
            reset(twin)
    return twin


def get_view(s: Session) -> dict:
    """Serialize the current styled network as the view JSON document."""
    styled = s.current
    assert styled is not None
    px = pixel_positions(styled)
    labels = styled.node_labels
    nodes = [
        {
            "id": int(labels[i]),
            "x": float(px[i, 0]),
            "y": float(px[i, 1]),
            "sectors": [
                {"color": sec.color, "alpha": sec.alpha}
                for sec in styled.node_sectors[i]
            ],
        }
        for i in range(styled.n)
    ]
    edges = [
        {
            "a": int(labels[e.a - 1]),
            "b": int(labels[e.b - 1]),
            "sim": float(e.similarity),
            "thickness": float(e.thickness),
            "label": e.label,
        }
        for e in styled.edge_render
    ]
    report = styled.layout.layout_report
    s_lo, s_hi = styled.spec.similarity_display_range or (0.0, 1.0)
    r = s.pf_params.r
    meta = {
        "objectives": [
            {"name": o.name, "sense": o.sense.value} for o in s.base_set.objectives
        ],
        "excluded": sorted(s.excluded),
        "metric": s.metric.name,
        "n": styled.n,
        "edge_count": len(styled.edge_render),
        "pathfinder": {
            "r": "inf" if r == float("inf") else r,
            "q": s.pf_params.effective_q(styled.n),
        },
        "layout": {
            "iterations": report.iterations,
            "final_max_gradient": report.final_max_gradient,
            "final_energy": report.final_energy,
            "converged": report.converged,
        },
        "style": {
            "s_lo": s_lo,
            "s_hi": s_hi,
            "objective_coloring": styled.spec.objective_coloring_enabled,
            "label_decimals": styled.spec.label_decimals,
            "thickness_range": list(styled.spec.thickness_range),
        },
        "operations": [dict(entry) for entry in s.op_log],
    }
    return {"nodes": nodes, "edges": edges, "meta": meta}


def view_svg(s: Session) -> str:
    assert s.current is not None
    return emit_svg(s.current)


def view_dot(s: Session) -> str:
    assert s.current is not None
    return emit_dot(s.current)
