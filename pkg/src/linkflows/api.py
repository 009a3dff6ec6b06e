"""The analytics HTTP API behind the editor dashboard.

The store is loaded once at service start and never mutated; requests only
read from it. Endpoint payloads come straight from the shared builders, so
CLI output and API responses are identical by construction.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .payloads import (
    ArticlesPayload,
    CommentFilters,
    CommentsPayload,
    CqPayload,
    FilterError,
    ReviewersPayload,
    SectionsPayload,
    build_articles,
    build_cq,
    build_comments,
    build_reviewers,
    build_sections,
)
from .store import QuadStore, UnknownArticleError


def create_api_app(store: QuadStore, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="linkflows analytics")
    app.state.store = store

    @app.exception_handler(UnknownArticleError)
    async def unknown_article(request: Request, exc: UnknownArticleError) -> JSONResponse:
        return JSONResponse({"detail": f"unknown article: {exc.article.value}"}, status_code=404)

    @app.exception_handler(FilterError)
    async def bad_filter(request: Request, exc: FilterError) -> JSONResponse:
        return JSONResponse({"detail": str(exc)}, status_code=400)

    @app.get("/api/articles", response_model=ArticlesPayload)
    def articles() -> ArticlesPayload:
        return build_articles(app.state.store)

    @app.get("/api/articles/{article_id}/reviewers", response_model=ReviewersPayload)
    def reviewers(article_id: str) -> ReviewersPayload:
        return build_reviewers(app.state.store, article_id)

    @app.get("/api/articles/{article_id}/sections", response_model=SectionsPayload)
    def sections(article_id: str) -> SectionsPayload:
        return build_sections(app.state.store, article_id)

    @app.get("/api/articles/{article_id}/cq/{question}", response_model=CqPayload)
    def competency_question(
        article_id: str,
        question: int,
        threshold: int | None = Query(default=None),
        mode: str | None = Query(default=None),
    ) -> CqPayload:
        if not 1 <= question <= 7:
            return JSONResponse({"detail": f"unknown question: {question}"}, status_code=404)
        return build_cq(app.state.store, article_id, question, threshold, mode)

    @app.get("/api/comments", response_model=CommentsPayload)
    def comments(
        article: str,
        reviewer: str | None = None,
        positivity: str | None = None,
        aspect: str | None = None,
        actionability: str | None = None,
        impact_min: int | None = None,
        section: str | None = None,
    ) -> CommentsPayload:
        filters = CommentFilters(
            article=article,
            reviewer=reviewer,
            positivity=positivity,
            aspect=aspect,
            actionability=actionability,
            impact_min=impact_min,
            section=section,
        )
        return build_comments(app.state.store, filters)

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="ui")
    return app


def serve_api(
    store: QuadStore,
    host: str = "127.0.0.1",
    port: int = 8000,
    frontend_dir: str | Path | None = None,
) -> None:
    """Run the analytics service until interrupted."""
    import uvicorn

    uvicorn.run(create_api_app(store, frontend_dir), host=host, port=port, log_level="warning")
