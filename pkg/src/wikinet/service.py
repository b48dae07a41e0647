"""Read-only HTTP service exposing the pipeline to the browser UI.

Stateless between requests apart from the shared article store; request
bodies are the same configuration documents the CLI accepts, and responses
are the same canonical documents the CLI writes.
"""

from __future__ import annotations

from fastapi import Body, FastAPI, Query, Response
from fastapi.staticfiles import StaticFiles

from .errors import (
    ArticleNotFound,
    BackendUnavailable,
    InvalidConfig,
    NoRevisionBefore,
    SeedNotFound,
    SeedNotInGraph,
    SnapshotBuildError,
    WikinetError,
)
from .pipeline import RunConfig, canonical_json, make_source, run_build, run_series
from .records import parse_timestamp
from .source import Source
from .store import Store

_JSON = "application/json"


def _status_for(exc: Exception) -> int:
    if isinstance(exc, SnapshotBuildError):
        return _status_for(exc.cause)
    if isinstance(exc, (InvalidConfig, ValueError)):
        return 400
    if isinstance(exc, (SeedNotFound, SeedNotInGraph, ArticleNotFound, NoRevisionBefore)):
        return 404
    if isinstance(exc, BackendUnavailable):
        return 502
    return 500


def _error_response(exc: Exception) -> Response:
    body = canonical_json({"error": type(exc).__name__, "detail": str(exc)})
    return Response(content=body, status_code=_status_for(exc), media_type=_JSON)


def create_app(
    default_backend: str = "live",
    store: Store | None = None,
    frontend_dir: str | None = None,
) -> FastAPI:
    """Application factory; ``default_backend`` is used when a request body
    does not name one. When ``frontend_dir`` is set, the browser explorer is
    served from it at the root path."""
    app = FastAPI(title="wikinet", docs_url=None, redoc_url=None)
    sources: dict[str, Source] = {}

    def source_for(config: RunConfig) -> Source:
        # One Source per backend: requests share the cache and rate limiter.
        key = config.backend if config.backend != "live" else f"live:{config.api_url}"
        if key not in sources:
            sources[key] = make_source(config, store=store)
        return sources[key]

    def config_from(body: dict) -> RunConfig:
        if not isinstance(body, dict):
            raise InvalidConfig("request body must be a JSON object")
        body = dict(body)
        body.setdefault("backend", default_backend)
        return RunConfig.from_dict(body)

    @app.get("/api/health")
    def health() -> Response:
        return Response(canonical_json({"status": "ok"}), media_type=_JSON)

    @app.get("/api/seeds")
    def seeds(q: str = Query(default=""), limit: int = Query(default=10)) -> Response:
        try:
            source = source_for(RunConfig(backend=default_backend))
            titles = source.search_seeds(q, limit)
        except (WikinetError, ValueError) as exc:
            return _error_response(exc)
        return Response(
            canonical_json({"query": q.strip(), "seeds": titles}), media_type=_JSON
        )

    @app.post("/api/graph")
    def graph(body: dict = Body(...)) -> Response:
        try:
            config = config_from(body)
            result = run_build(source_for(config), config)
        except (WikinetError, ValueError) as exc:
            return _error_response(exc)
        return Response(canonical_json(result.export), media_type=_JSON)

    @app.post("/api/series")
    def series(body: dict = Body(...)) -> Response:
        try:
            if not isinstance(body, dict) or "timestamps" not in body:
                raise InvalidConfig("body must carry a timestamps list")
            body = dict(body)
            raw_stamps = body.pop("timestamps")
            if not isinstance(raw_stamps, list) or not raw_stamps:
                raise InvalidConfig("timestamps must be a non-empty list")
            try:
                timestamps = [parse_timestamp(t) for t in raw_stamps]
            except Exception as exc:
                raise InvalidConfig(f"bad timestamp: {exc}") from exc
            config = config_from(body)
            document = run_series(source_for(config), config, timestamps)
        except (WikinetError, ValueError) as exc:
            return _error_response(exc)
        return Response(canonical_json(document), media_type=_JSON)

    if frontend_dir:
        # API routes above take precedence over the catch-all static mount.
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app
