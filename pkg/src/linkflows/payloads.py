"""JSON payloads shared by the HTTP API and the CLI.

Every numeric cell is taken verbatim from a store query; nothing here does
its own counting. Articles are addressed by short aliases (a1, a2, ...),
assigned in title order; the /api/articles payload carries the mapping to
the underlying trusty URIs. All numbers are integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel

from . import cq
from .model import ACTIONABILITY, ASPECTS, POSITIVITY, resolve_target
from .rdf import Iri
from .store import QuadStore, UnknownArticleError, format_table


class FilterError(ValueError):
    """A request carried an unusable filter value."""


class ArticleInfo(BaseModel):
    id: str
    uri: str
    title: str
    reviews: int
    comments: int
    sections: int
    paragraphs: int


class ArticlesPayload(BaseModel):
    articles: list[ArticleInfo]


class ReviewerRowModel(BaseModel):
    reviewer: str
    total: int
    positivity: dict[str, int]
    aspect: dict[str, int]
    actionability: dict[str, int]
    impact: dict[str, int]


class ReviewersPayload(BaseModel):
    article: str
    article_uri: str
    rows: list[ReviewerRowModel]


class SectionRowModel(BaseModel):
    section: str | None
    label: str
    total: int
    positivity: dict[str, int]
    aspect: dict[str, int]
    actionability: dict[str, int]
    impact: dict[str, int]
    paragraphs: int
    covered: int


class SectionsPayload(BaseModel):
    article: str
    article_uri: str
    rows: list[SectionRowModel]
    uncovered: list[str]


class CqPayload(BaseModel):
    question: int
    article: str
    result: Any


class CommentModel(BaseModel):
    uri: str
    text: str
    positivity: str
    aspect: str
    actionability: str
    impact: int
    target: str
    target_kind: str
    granularity: str
    section: str | None
    reviewer: str
    review: str


class CommentsPayload(BaseModel):
    article: str
    count: int
    comments: list[CommentModel]


@dataclass(frozen=True)
class CommentFilters:
    article: str
    reviewer: str | None = None
    positivity: str | None = None
    aspect: str | None = None
    actionability: str | None = None
    impact_min: int | None = None
    section: str | None = None  # top-level section URI, or "article-level"


# ---------------------------------------------------------------------------
# Alias handling
# ---------------------------------------------------------------------------

def article_alias_map(store: QuadStore) -> dict[str, Iri]:
    return {f"a{i + 1}": uri for i, uri in enumerate(store.articles)}


def resolve_alias(store: QuadStore, alias: str) -> Iri:
    uri = article_alias_map(store).get(alias)
    if uri is None:
        raise UnknownArticleError(Iri(f"urn:alias:{alias}") if ":" not in alias else Iri(alias))
    return uri


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_articles(store: QuadStore) -> ArticlesPayload:
    articles = []
    for alias, uri in article_alias_map(store).items():
        elements = store.article_elements(uri)
        articles.append(
            ArticleInfo(
                id=alias,
                uri=uri.value,
                title=store.elements[uri].text,
                reviews=len(store.article_containers(uri)),
                comments=len(store.article_comments(uri)),
                sections=sum(1 for e in elements if e.kind == "section"),
                paragraphs=sum(1 for e in elements if e.kind == "paragraph"),
            )
        )
    return ArticlesPayload(articles=articles)


def build_reviewers(store: QuadStore, alias: str) -> ReviewersPayload:
    article = resolve_alias(store, alias)
    rows = [
        ReviewerRowModel(
            reviewer=stack.reviewer.value,
            total=stack.total,
            positivity=stack.positivity,
            aspect=stack.aspect,
            actionability=stack.actionability,
            impact=stack.impact,
        )
        for stack in cq.reviewer_stacks(store, article)
    ]
    return ReviewersPayload(article=alias, article_uri=article.value, rows=rows)


def build_sections(store: QuadStore, alias: str) -> SectionsPayload:
    article = resolve_alias(store, alias)
    coverage = cq.cq7(store, article)
    coverage_by_section = {row.section: row for row in coverage.rows}
    rows = []
    for stack in cq.section_stacks(store, article):
        cov = coverage_by_section.get(stack.section) if stack.section is not None else None
        rows.append(
            SectionRowModel(
                section=stack.section.value if stack.section else None,
                label=stack.label,
                total=stack.total,
                positivity=stack.positivity,
                aspect=stack.aspect,
                actionability=stack.actionability,
                impact=stack.impact,
                paragraphs=cov.paragraphs if cov else 0,
                covered=cov.covered if cov else 0,
            )
        )
    return SectionsPayload(
        article=alias,
        article_uri=article.value,
        rows=rows,
        uncovered=[u.value for u in coverage.uncovered],
    )


def build_cq(
    store: QuadStore,
    alias: str,
    question: int,
    threshold: int | None = None,
    mode: str | None = None,
) -> CqPayload:
    article = resolve_alias(store, alias)
    if question == 1:
        result: Any = cq.cq1(store, article).to_json_dict()
    elif question == 2:
        result = cq.cq2(store, article).to_json_dict()
    elif question == 3:
        result = cq.cq3(store, article).to_json_dict()
    elif question == 4:
        result = cq.cq4(store, article).to_json_dict()
    elif question == 5:
        t = cq.DEFAULT_CRITICAL_IMPACT if threshold is None else threshold
        if not 1 <= t <= 5:
            raise FilterError(f"threshold must be in 1..5, got {t}")
        result = {"threshold": t, "points": [p.to_json_dict() for p in cq.cq5(store, article, t)]}
    elif question == 6:
        m = mode or "compulsory"
        if m not in cq.CQ6_MODES:
            raise FilterError(f"mode must be one of {cq.CQ6_MODES}, got {m!r}")
        result = {"mode": m, "count": cq.cq6(store, article, m)}
    elif question == 7:
        result = cq.cq7(store, article).to_json_dict()
    else:
        raise FilterError(f"question must be in 1..7, got {question}")
    return CqPayload(question=question, article=alias, result=result)


def cq_table(store: QuadStore, alias: str, question: int, threshold: int | None, mode: str | None) -> str:
    """Aligned-column rendering of a CQ result for terminal output."""
    article = resolve_alias(store, alias)
    if question == 1:
        return cq.cq1(store, article).to_table()
    if question == 2:
        return cq.cq2(store, article).to_table()
    if question == 3:
        return cq.cq3(store, article).to_table()
    if question == 4:
        return cq.cq4(store, article).to_table()
    if question == 5:
        t = cq.DEFAULT_CRITICAL_IMPACT if threshold is None else threshold
        points = cq.cq5(store, article, t)
        rows = [
            [p.comment.value, str(p.impact), p.section.value if p.section else "-", p.excerpt]
            for p in points
        ]
        return format_table(["comment", "impact", "section", "excerpt"], rows)
    if question == 6:
        m = mode or "compulsory"
        return f"points to address ({m}): {cq.cq6(store, article, m)}\n"
    if question == 7:
        return cq.cq7(store, article).to_table()
    raise FilterError(f"question must be in 1..7, got {question}")


def build_comments(store: QuadStore, filters: CommentFilters) -> CommentsPayload:
    article = resolve_alias(store, filters.article)
    if filters.positivity is not None and filters.positivity not in POSITIVITY:
        raise FilterError(f"positivity must be one of {POSITIVITY}, got {filters.positivity!r}")
    if filters.aspect is not None and filters.aspect not in ASPECTS:
        raise FilterError(f"aspect must be one of {ASPECTS}, got {filters.aspect!r}")
    if filters.actionability is not None and filters.actionability not in ACTIONABILITY:
        raise FilterError(
            f"actionability must be one of {ACTIONABILITY}, got {filters.actionability!r}"
        )
    if filters.impact_min is not None and not 1 <= filters.impact_min <= 5:
        raise FilterError(f"impact_min must be in 1..5, got {filters.impact_min}")

    rows = []
    for comment in store.article_comments(article):
        info = resolve_target(comment, store.elements)
        section = cq.rolled_up_section(store, info)
        if filters.reviewer is not None and comment.reviewer.value != filters.reviewer:
            continue
        if filters.positivity is not None and comment.positivity != filters.positivity:
            continue
        if filters.aspect is not None and comment.aspect != filters.aspect:
            continue
        if filters.actionability is not None and comment.actionability != filters.actionability:
            continue
        if filters.impact_min is not None and comment.impact < filters.impact_min:
            continue
        if filters.section is not None:
            if filters.section == "article-level":
                if section is not None:
                    continue
            elif section is None or section.value != filters.section:
                continue
        rows.append(
            CommentModel(
                uri=comment.uri.value,
                text=comment.text,
                positivity=comment.positivity,
                aspect=comment.aspect,
                actionability=comment.actionability,
                impact=comment.impact,
                target=comment.target.value,
                target_kind=store.elements[comment.target].kind,
                granularity=info.granularity,
                section=section.value if section else None,
                reviewer=comment.reviewer.value,
                review=comment.review.value,
            )
        )
    rows.sort(key=lambda r: r.uri)
    return CommentsPayload(article=filters.article, count=len(rows), comments=rows)
