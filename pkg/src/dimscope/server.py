"""HTTP/JSON API exposing one interactive session.

Endpoints:
  GET  /api/health        -> {"status": "ok"|"precomputing", "revision": n}
  GET  /api/dataset/meta  -> dataset + slider configuration
  GET  /api/view          -> current ViewModel (canonical JSON, carries revision)
  POST /api/event         -> apply one event; optional "expected_revision"
                             turns the call into compare-and-set

Errors: 400 on event validation, 409 on revision conflict, 503 while the
distance precompute is still running.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import RevisionConflict, ValidationError
from .jsonutil import canonical_json
from .session import Session


def _not_ready() -> JSONResponse:
    return JSONResponse(status_code=503, content={"error": "distance precompute is still running"})


def dataset_meta(session: Session) -> dict:
    ds = session.dataset
    cfg = session.config
    metric_max = cfg.metric.max_distance
    return {
        "name": ds.name,
        "items": ds.m,
        "numeric_dims": [
            {
                "id": d.id,
                "label": d.label,
                "vmin": None if d.constant and d.vmin != d.vmin else d.vmin,
                "vmax": None if d.constant and d.vmax != d.vmax else d.vmax,
                "missing": d.missing_count,
                "constant": d.constant,
            }
            for d in ds.numeric_dims
        ],
        "categorical_dims": [
            {"id": d.id, "label": d.label, "values": list(d.values), "counts": list(d.counts)}
            for d in ds.categorical_dims
        ],
        "metric": cfg.metric.value,
        "bin_count": cfg.bin_count,
        "sliders": {
            "d_select": {"min": 0.0, "max": metric_max, "steps": cfg.slider_steps},
            "d_remove": {"min": 0.0, "max": metric_max, "steps": cfg.slider_steps},
            "t_sup": {"min": 0.0, "max": 1.0, "steps": cfg.slider_steps},
            "t_con": {"min": 0.0, "max": 1.0, "steps": cfg.slider_steps},
            "opacity": {"min": 0.0, "max": 1.0, "steps": cfg.slider_steps},
        },
        "defaults": {
            "d_select": session.state.d_select,
            "d_remove": session.state.d_remove,
            "t_sup": session.state.rule_thresholds.t_sup,
            "t_con": session.state.rule_thresholds.t_con,
            "opacity": session.state.opacity,
        },
    }


def create_app(session: Session, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="dimscope", docs_url=None, redoc_url=None)

    @app.get("/api/health")
    def health():
        status = "ok" if session.ready.is_set() else "precomputing"
        return {"status": status, "revision": session.revision}

    @app.get("/api/dataset/meta")
    def meta():
        if not session.ready.is_set():
            return _not_ready()
        return Response(canonical_json(dataset_meta(session)), media_type="application/json")

    @app.get("/api/view")
    def view():
        if not session.ready.is_set():
            return _not_ready()
        return Response(canonical_json(session.view()), media_type="application/json")

    @app.post("/api/event")
    def event(payload: dict):
        if not session.ready.is_set():
            return _not_ready()
        expected = payload.pop("expected_revision", None)
        if expected is not None and not isinstance(expected, int):
            return JSONResponse(
                status_code=400,
                content={"error": {"field": "expected_revision", "message": "must be an integer"}},
            )
        try:
            revision, warnings = session.apply(payload, expected_revision=expected)
        except ValidationError as exc:
            return JSONResponse(
                status_code=400,
                content={"error": {"field": exc.field, "message": exc.reason}},
            )
        except RevisionConflict as exc:
            return JSONResponse(
                status_code=409,
                content={"error": {"field": "expected_revision", "message": str(exc)},
                         "revision": session.revision},
            )
        return {"revision": revision, "warnings": warnings}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
