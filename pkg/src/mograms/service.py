"""HTTP/JSON front end for exploration sessions.

Endpoints:
    POST   /sessions                      create (solution set + metric + params)
    GET    /sessions/{id}/view            ?format=json|svg|dot
    POST   /sessions/{id}/exclude         {"ids": [int, ...]}
    POST   /sessions/{id}/style           {"s_lo"?, "s_hi"?, "objective_coloring"?, "label_decimals"?}
    POST   /sessions/{id}/reset
    DELETE /sessions/{id}

Domain errors map to HTTP 400 with {error_code, message, detail}; unknown
sessions to 404.  Sessions live in memory and are evicted after a
configurable idle timeout.  Each session processes its operations under a
lock, one at a time; distinct sessions are independent.
"""

from __future__ import annotations

import math
import os
import threading
import time
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from . import session as ops
from .errors import MoGramError, SchemaError
from .layout import LayoutParams
from .model import solution_set_from_json
from .pathfinder import PathfinderParams
from .similarity import MetricChoice, precomputed_matrix_from_json
from .styling import StyleSpec

_METRIC_ALIASES = {
    "tsalbp": "tsalbp_line",
    "tsalbp_line": "tsalbp_line",
    "hamming": "hamming_binary",
    "hamming_binary": "hamming_binary",
    "levenshtein": "levenshtein_tokens",
    "levenshtein_tokens": "levenshtein_tokens",
    "precomputed": "precomputed",
}


class UnknownSession(MoGramError):
    code = "unknown_session"


def _require_dict(obj: Any, where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be a JSON object")
    return obj


def _number(obj: dict, key: str, where: str) -> float | None:
    v = obj.get(key)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{where}.{key} must be a number")
    return float(v)


def _integer(obj: dict, key: str, where: str) -> int | None:
    v = obj.get(key)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{where}.{key} must be an integer")
    return v


def _boolean(obj: dict, key: str, where: str) -> bool | None:
    v = obj.get(key)
    if v is None:
        return None
    if not isinstance(v, bool):
        raise SchemaError(f"{where}.{key} must be a boolean")
    return v


def parse_metric(obj: Any) -> MetricChoice:
    obj = _require_dict(obj, "metric")
    name = obj.get("name")
    if name not in _METRIC_ALIASES:
        raise SchemaError(
            f"metric.name must be one of {sorted(set(_METRIC_ALIASES))}, got {name!r}"
        )
    canonical = _METRIC_ALIASES[name]
    if canonical == "precomputed":
        if "matrix" not in obj:
            raise SchemaError("precomputed metric requires a 'matrix' field")
        return MetricChoice.precomputed(precomputed_matrix_from_json(obj["matrix"]))
    if "matrix" in obj:
        raise SchemaError(f"metric {canonical!r} does not take a matrix")
    return MetricChoice(name=canonical)


def parse_pathfinder(obj: Any) -> PathfinderParams:
    if obj is None:
        return PathfinderParams()
    obj = _require_dict(obj, "pathfinder")
    r = obj.get("r", "inf")
    if r == "inf":
        r_val = math.inf
    elif isinstance(r, (int, float)) and not isinstance(r, bool):
        r_val = float(r)
    else:
        raise SchemaError("pathfinder.r must be a number or \"inf\"")
    return PathfinderParams(r=r_val, q=_integer(obj, "q", "pathfinder"))


def parse_layout(obj: Any) -> LayoutParams:
    if obj is None:
        return LayoutParams()
    obj = _require_dict(obj, "layout")
    kwargs: dict[str, Any] = {}
    seed = _integer(obj, "seed", "layout")
    if seed is not None:
        kwargs["seed"] = seed
    tol = _number(obj, "tolerance", "layout")
    if tol is not None:
        kwargs["gradient_tolerance"] = tol
    diameter = _number(obj, "desired_diameter", "layout")
    if diameter is not None:
        kwargs["desired_diameter"] = diameter
    cap = _integer(obj, "max_outer_iterations", "layout")
    if cap is not None:
        kwargs["max_outer_iterations"] = cap
    return LayoutParams(**kwargs)


def parse_style(obj: Any) -> StyleSpec:
    if obj is None:
        return StyleSpec()
    obj = _require_dict(obj, "style")
    kwargs: dict[str, Any] = {}
    s_lo = _number(obj, "s_lo", "style")
    s_hi = _number(obj, "s_hi", "style")
    if (s_lo is None) != (s_hi is None):
        raise SchemaError("style needs both s_lo and s_hi, or neither")
    if s_lo is not None and s_hi is not None:
        kwargs["similarity_display_range"] = (s_lo, s_hi)
    coloring = _boolean(obj, "objective_coloring", "style")
    if coloring is not None:
        kwargs["objective_coloring_enabled"] = coloring
    decimals = _integer(obj, "label_decimals", "style")
    if decimals is not None:
        kwargs["label_decimals"] = decimals
    radius = _number(obj, "node_radius", "style")
    if radius is not None:
        kwargs["node_radius"] = radius
    return StyleSpec(**kwargs)


def build_session_from_body(body: Any) -> ops.Session:
    body = _require_dict(body, "request body")
    if "solution_set" not in body:
        raise SchemaError("request body requires 'solution_set'")
    if "metric" not in body:
        raise SchemaError("request body requires 'metric'")
    sset = solution_set_from_json(body["solution_set"])
    metric = parse_metric(body["metric"])
    return ops.create_session(
        sset,
        metric,
        pf=parse_pathfinder(body.get("pathfinder")),
        lay=parse_layout(body.get("layout")),
        style_spec=parse_style(body.get("style")),
    )


def create_app(
    idle_timeout: float = 1800.0, ui_dir: str | Path | None = None
) -> FastAPI:
    app = FastAPI(title="mograms session service", docs_url=None, redoc_url=None)
    sessions: dict[str, ops.Session] = {}
    store_lock = threading.Lock()
    app.state.sessions = sessions

    def _sweep() -> None:
        now = time.monotonic()
        with store_lock:
            stale = [
                sid
                for sid, s in sessions.items()
                if now - s.last_access > idle_timeout
            ]
            for sid in stale:
                del sessions[sid]

    def _get(sid: str) -> ops.Session:
        _sweep()
        with store_lock:
            s = sessions.get(sid)
        if s is None:
            raise UnknownSession(f"no session {sid!r}")
        s.last_access = time.monotonic()
        return s

    @app.exception_handler(MoGramError)
    async def domain_error(request: Request, exc: MoGramError) -> JSONResponse:
        status = 404 if isinstance(exc, UnknownSession) else 400
        return JSONResponse(
            status_code=status,
            content={"error_code": exc.code, "message": str(exc), "detail": exc.detail},
        )

    @app.exception_handler(RequestValidationError)
    async def invalid_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={
                "error_code": "bad_request",
                "message": "invalid request",
                "detail": {"errors": str(exc.errors())},
            },
        )

    async def _json_body(request: Request) -> Any:
        try:
            return await request.json()
        except Exception as exc:
            raise SchemaError(f"request body is not valid JSON: {exc}") from exc

    @app.get("/")
    async def root() -> dict:
        return {
            "service": "mograms",
            "endpoints": [
                "POST /sessions",
                "GET /sessions/{id}/view?format=json|svg|dot",
                "POST /sessions/{id}/exclude",
                "POST /sessions/{id}/style",
                "POST /sessions/{id}/reset",
                "DELETE /sessions/{id}",
            ],
        }

    @app.post("/sessions")
    async def create(request: Request) -> dict:
        body = await _json_body(request)
        s = await run_in_threadpool(build_session_from_body, body)
        _sweep()
        with store_lock:
            sessions[s.id] = s
        return {"session_id": s.id}

    @app.get("/sessions/{sid}/view")
    async def view(sid: str, format: str = "json") -> Response:
        s = _get(sid)

        def render() -> Response:
            with s.lock:
                if format == "json":
                    return JSONResponse(content=ops.get_view(s))
                if format == "svg":
                    return Response(
                        content=ops.view_svg(s), media_type="image/svg+xml"
                    )
                if format == "dot":
                    return Response(
                        content=ops.view_dot(s), media_type="text/vnd.graphviz"
                    )
                raise SchemaError(f"unknown view format {format!r}")

        return await run_in_threadpool(render)

    @app.post("/sessions/{sid}/exclude")
    async def exclude(sid: str, request: Request) -> dict:
        body = _require_dict(await _json_body(request), "request body")
        ids = body.get("ids")
        if not isinstance(ids, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in ids
        ):
            raise SchemaError("'ids' must be a list of integers")
        s = _get(sid)

        def apply() -> dict:
            with s.lock:
                ops.exclude_nodes(s, ids)
                return {"ok": True, "excluded": sorted(s.excluded)}

        return await run_in_threadpool(apply)

    @app.post("/sessions/{sid}/style")
    async def restyle(sid: str, request: Request) -> dict:
        body = _require_dict(await _json_body(request), "request body")
        unknown = set(body) - {"s_lo", "s_hi", "objective_coloring", "label_decimals"}
        if unknown:
            raise SchemaError(f"unknown style fields {sorted(unknown)}")
        s_lo = _number(body, "s_lo", "style")
        s_hi = _number(body, "s_hi", "style")
        coloring = _boolean(body, "objective_coloring", "style")
        decimals = _integer(body, "label_decimals", "style")
        s = _get(sid)

        def apply() -> dict:
            with s.lock:
                ops.apply_style(
                    s,
                    s_lo=s_lo,
                    s_hi=s_hi,
                    objective_coloring=coloring,
                    label_decimals=decimals,
                )
                return {"ok": True}

        return await run_in_threadpool(apply)

    @app.post("/sessions/{sid}/reset")
    async def reset(sid: str) -> dict:
        s = _get(sid)

        def apply() -> dict:
            with s.lock:
                ops.reset(s)
                return {"ok": True}

        return await run_in_threadpool(apply)

    @app.delete("/sessions/{sid}", status_code=204)
    async def delete(sid: str) -> Response:
        _sweep()
        with store_lock:
            if sid not in sessions:
                raise UnknownSession(f"no session {sid!r}")
            del sessions[sid]
        return Response(status_code=204)

    resolved_ui = _resolve_ui_dir(ui_dir)
    if resolved_ui is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=resolved_ui, html=True), name="ui")

    return app


def _resolve_ui_dir(ui_dir: str | Path | None) -> Path | None:
    candidates = []
    if ui_dir is not None:
        candidates.append(Path(ui_dir))
    env = os.environ.get("MOGRAMS_UI_DIR")
    if env:
        candidates.append(Path(env))
    candidates.append(Path.cwd() / "frontend" / "dist")
    for c in candidates:
        if c.is_dir():
            return c
    return None
