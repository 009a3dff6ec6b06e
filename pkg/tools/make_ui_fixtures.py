#!/usr/bin/env python3
"""Capture real API payloads for the dashboard test suite.

Spins up the analytics app over the seed-42 corpus in-process and records
every response the dashboard tests may request, keyed by a normalized
"path|k=v|..." form (decoded params, sorted by key then value). Output goes
to frontend/tests/fixtures/api-fixtures.json.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from linkflows.api import create_api_app
from linkflows.corpus import CorpusSpec, generate_corpus
from linkflows.store import QuadStore

CLASS_PARAMS = {
    "positivity": ("positive", "negative", "neutral"),
    "aspect": ("content", "presentation"),
    "actionability": ("suggestion", "compulsory"),
}


def normalize(path: str, params: dict[str, str]) -> str:
    pairs = sorted((k, str(v)) for k, v in params.items())
    return "|".join([path] + [f"{k}={v}" for k, v in pairs])


def main() -> None:
    corpus = generate_corpus(CorpusSpec(seed=42))
    store = QuadStore.load(corpus.nanopubs)
    fixtures: dict[str, object] = {}

    with TestClient(create_api_app(store)) as client:
        def record(path: str, params: dict[str, str] | None = None) -> None:
            response = client.get(path, params=params or {})
            response.raise_for_status()
            fixtures[normalize(path, params or {})] = response.json()

        record("/api/articles")
        record("/api/articles/a1/reviewers")
        record("/api/articles/a1/sections")
        for question in range(1, 8):
            record(f"/api/articles/a1/cq/{question}")

        reviewers = fixtures[normalize("/api/articles/a1/reviewers", {})]["rows"]
        sections = fixtures[normalize("/api/articles/a1/sections", {})]["rows"]

        def comment_queries(scope: dict[str, str]):
            record("/api/comments", {"article": "a1", **scope})
            for dimension, classes in CLASS_PARAMS.items():
                for cls in classes:
                    record("/api/comments", {"article": "a1", **scope, dimension: cls})

        for row in reviewers:
            comment_queries({"reviewer": row["reviewer"]})
            record(
                "/api/comments",
                {"article": "a1", "reviewer": row["reviewer"], "positivity": "negative", "impact_min": "4"},
            )
        for row in sections:
            section = row["section"] if row["section"] is not None else "article-level"
            comment_queries({"section": section})
        record("/api/comments", {"article": "a1", "positivity": "negative", "impact_min": "4"})

    out = Path(__file__).parent.parent / "frontend" / "tests" / "fixtures" / "api-fixtures.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(fixtures, indent=1), encoding="utf-8")
    print(f"wrote {len(fixtures)} fixtures to {out}")


if __name__ == "__main__":
    main()
