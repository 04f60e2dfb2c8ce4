"""HTTP layer: search, node detail, expand, AI introduction, stats.

Endpoints are thin wrappers over graph-core and the analysis agent. Every
error crosses the wire as {"error": {"code", "message"}} with a status from
one fixed mapping, and every emitted view keeps the endpoint-closure and
duplicate-freedom guarantees the frontend relies on.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from kgatlas.analysis import extract_context, introduce
from kgatlas.config import AppConfig
from kgatlas.errors import (
    AnalysisTimeout,
    InvalidKeyword,
    KgAtlasError,
    NodeNotFound,
    NotAProduct,
    ProviderError,
)
from kgatlas.graph import GraphStore, GraphView
from kgatlas.ingest import LanguageModel

NODE_LIMIT_DEFAULT = 25
REL_LIMIT_DEFAULT = 25

_ERROR_STATUS = (
    (AnalysisTimeout, 504, "analysis-timeout"),
    (ProviderError, 502, "provider-error"),
    (NotAProduct, 422, "not-a-product"),
    (NodeNotFound, 404, "node-not-found"),
    (InvalidKeyword, 400, "invalid-keyword"),
)


class BadRequest(KgAtlasError):
    """Request shape is fine but a value violates an endpoint precondition."""


class ExpandRequest(BaseModel):
    node_id: int
    visible_ids: list[int]


class IntroduceRequest(BaseModel):
    node_id: int


def search_view(store: GraphStore, keyword: str, node_limit: int, rel_limit: int) -> GraphView:
    """Matched nodes (ascending id), then their neighbors (ascending id),
    truncated to node_limit; links with both endpoints kept, truncated to
    rel_limit. Truncating nodes first keeps links endpoint-closed."""
    with store.read_lock():
        matched = store.find_nodes_containing(keyword)
        kept_ids = [node.id for node in matched]
        kept_set = set(kept_ids)
        neighbor_ids: set[int] = set()
        for node in matched:
            for rel in store.incident(node.id):
                other = rel.other(node.id)
                if other not in kept_set:
                    neighbor_ids.add(other)
        ordered = (kept_ids + sorted(neighbor_ids))[:node_limit]
        view_set = set(ordered)
        links = [
            rel for rel in store.relationships()
            if rel.source in view_set and rel.target in view_set
        ][:rel_limit]
        return GraphView(nodes=[store.get_node(i) for i in ordered], links=links)


def expand_view(store: GraphStore, node_id: int, visible_ids: set[int]) -> GraphView:
    """Neighbors of node_id not yet visible, plus every link incident to
    node_id; closure holds over visible_ids union the returned nodes."""
    with store.read_lock():
        full = store.neighborhood(node_id)
        return GraphView(
            nodes=[node for node in full.nodes if node.id not in visible_ids],
            links=full.links,
        )


def _error_response(exc: KgAtlasError) -> JSONResponse:
    for exc_type, status, code in _ERROR_STATUS:
        if isinstance(exc, exc_type):
            return JSONResponse(
                status_code=status, content={"error": {"code": code, "message": str(exc)}}
            )
    return JSONResponse(
        status_code=400, content={"error": {"code": "bad-request", "message": str(exc)}}
    )


def create_app(store: GraphStore, lm: LanguageModel, config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    max_limit = config.providers.max_limit
    app = FastAPI(title="kgatlas", docs_url=None, redoc_url=None)

    @app.exception_handler(KgAtlasError)
    async def _domain_error(request: Request, exc: KgAtlasError):
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "validation", "message": str(exc.errors()[:3])}},
        )

    def _check_limit(name: str, value: int) -> int:
        if not 1 <= value <= max_limit:
            raise BadRequest(f"{name} must be between 1 and {max_limit}, got {value}")
        return value

    @app.get("/api/search")
    def search(keyword: str = "", node_limit: int = NODE_LIMIT_DEFAULT,
               rel_limit: int = REL_LIMIT_DEFAULT) -> dict:
        _check_limit("node_limit", node_limit)
        _check_limit("rel_limit", rel_limit)
        return search_view(store, keyword, node_limit, rel_limit).to_dict()

    @app.get("/api/node/{node_id}")
    def node_detail(node_id: int) -> dict:
        with store.read_lock():
            node = store.get_node(node_id)
            detail = node.to_dict()
            detail["degree"] = store.degree(node_id)
            return detail

    @app.post("/api/expand")
    def expand(body: ExpandRequest) -> dict:
        visible = set(body.visible_ids)
        if body.node_id not in visible:
            raise BadRequest("node_id must be among visible_ids")
        return expand_view(store, body.node_id, visible).to_dict()

    @app.post("/api/ai-introduce")
    def ai_introduce(body: IntroduceRequest) -> dict:
        ctx = extract_context(store, body.node_id)
        report = introduce(ctx, lm, timeout_ms=config.providers.timeout_ms)
        return report.to_dict()

    @app.get("/api/stats")
    def stats() -> dict:
        return store.stats()

    ui_dir = config.ui_dir
    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
