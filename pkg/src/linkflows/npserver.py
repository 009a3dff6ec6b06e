"""HTTP nanopublication server: publish and content-addressed retrieval.

Storage is one canonical N-Quads file per artifact code, written atomically
(temp file + rename). Re-publishing identical content is a no-op. An
artificial per-request latency can be injected for benchmarking.
"""

from __future__ import annotations

import asyncio
import os
import re
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .nanopub import (
    NanopubError,
    NotTrustyError,
    discover_nanopubs,
    trusty_artifact,
    validate,
    verify_trusty,
)
from .rdf import ParseError, parse_trig

TRIG_MEDIA = "application/trig"
NQUADS_MEDIA = "application/n-quads"
_CODE_RE = re.compile(r"^RA[A-Za-z0-9_\-]{43}$")


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    storage_dir: Path = Path("np-storage")
    latency_ms: int = 0


def create_np_app(storage_dir: str | Path, latency_ms: int = 0) -> FastAPI:
    app = FastAPI(title="nanopub server", docs_url=None, redoc_url=None)
    storage = Path(storage_dir)
    storage.mkdir(parents=True, exist_ok=True)

    state = app.state
    state.storage = storage
    state.latency_ms = latency_ms
    state.lock = threading.Lock()
    state.inflight = 0
    state.max_concurrent = 0
    state.served = 0
    state.published = 0

    @app.middleware("http")
    async def latency_and_counters(request: Request, call_next):
        if not request.url.path.startswith("/np"):
            return await call_next(request)
        with state.lock:
            state.inflight += 1
            state.max_concurrent = max(state.max_concurrent, state.inflight)
        try:
            if state.latency_ms:
                await asyncio.sleep(state.latency_ms / 1000.0)
            return await call_next(request)
        finally:
            with state.lock:
                state.inflight -= 1

    def _path(code: str) -> Path:
        return storage / f"{code}.nq"

    @app.post("/np")
    async def publish(request: Request) -> Response:
        try:
            body = (await request.body()).decode("utf-8")
        except UnicodeDecodeError:
            return JSONResponse({"error": "BAD_ENCODING", "message": "body is not UTF-8"}, status_code=400)
        try:
            found = discover_nanopubs(parse_trig(body))
        except ParseError as exc:
            return JSONResponse({"error": "PARSE_ERROR", "message": str(exc)}, status_code=400)
        except NanopubError as exc:
            return JSONResponse({"error": "NOT_A_NANOPUB", "message": str(exc)}, status_code=400)
        if len(found) != 1:
            return JSONResponse(
                {"error": "ONE_NANOPUB_PER_REQUEST", "message": f"found {len(found)} nanopublications"},
                status_code=400,
            )
        np = found[0]
        report = validate(np)
        if not report.valid:
            return JSONResponse(
                {"error": report.violations[0].rule, "message": str(report)}, status_code=400
            )
        try:
            if not verify_trusty(np):
                return JSONResponse(
                    {"error": "TRUSTY_MISMATCH", "message": f"content does not match {np.uri.value}"},
                    status_code=400,
                )
        except NotTrustyError as exc:
            return JSONResponse({"error": "NOT_TRUSTY", "message": str(exc)}, status_code=400)

        code = trusty_artifact(np).code
        target = _path(code)
        payload = {"artifact": code, "uri": np.uri.value}
        if target.exists():
            return JSONResponse(payload, status_code=200)
        tmp = target.with_suffix(f".tmp.{os.getpid()}.{threading.get_ident()}")
        tmp.write_text(np.canonical(), encoding="utf-8")
        os.replace(tmp, target)
        with state.lock:
            state.published += 1
        return JSONResponse(payload, status_code=201, headers={"Location": f"/np/{code}"})

    @app.get("/np/{code}")
    async def get_np(code: str, format: str | None = None) -> Response:
        if not _CODE_RE.match(code):
            return JSONResponse({"error": "NOT_FOUND", "message": f"malformed artifact code {code!r}"}, status_code=404)
        target = _path(code)
        if not target.exists():
            return JSONResponse({"error": "NOT_FOUND", "message": f"unknown artifact {code}"}, status_code=404)
        content = target.read_text(encoding="utf-8")
        with state.lock:
            state.served += 1
        if format == "nq":
            return PlainTextResponse(content, media_type=NQUADS_MEDIA)
        np = discover_nanopubs(parse_trig(content))[0]
        return PlainTextResponse(np.to_trig(), media_type=TRIG_MEDIA)

    @app.get("/stats")
    async def stats() -> dict:
        with state.lock:
            return {
                "published": state.published,
                "served": state.served,
                "inflight": state.inflight,
                "max_concurrent": state.max_concurrent,
                "stored": sum(1 for _ in storage.glob("*.nq")),
            }

    return app


def seed_storage(storage_dir: str | Path, nanopubs) -> int:
    """Write nanopublications straight into a server storage directory."""
    storage = Path(storage_dir)
    storage.mkdir(parents=True, exist_ok=True)
    count = 0
    for np in nanopubs:
        code = trusty_artifact(np).code
        (storage / f"{code}.nq").write_text(np.canonical(), encoding="utf-8")
        count += 1
    return count


def serve(config: ServerConfig) -> None:
    """Run the server until interrupted."""
    import uvicorn

    app = create_np_app(config.storage_dir, config.latency_ms)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
