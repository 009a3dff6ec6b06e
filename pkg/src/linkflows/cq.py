"""The seven editor analytics, realized as typed queries over the store.

Comments are attributed to sections via their target: a snippet target counts
toward the top-level section it lives under, a section target toward its own
top-level ancestor, and an article target toward the "(article-level)"
bucket. Each query's docstring carries the equivalent declarative (SPARQL)
form for reference; the implementation walks the typed domain index instead.

Ties are always broken by URI code point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    ARTICLE_LEVEL,
    ACTIONABILITY,
    ASPECTS,
    PARAGRAPH_LEVEL,
    POSITIVITY,
    SECTION_LEVEL,
    ReviewComment,
    TargetInfo,
    resolve_target,
)
from .rdf import Iri
from .store import QuadStore, format_table

ARTICLE_BUCKET_LABEL = "(article-level)"
DEFAULT_CRITICAL_IMPACT = 4
CQ6_MODES = ("compulsory", "negative-compulsory")
EXCERPT_LIMIT = 100


@dataclass(frozen=True)
class ReviewerRow:
    reviewer: Iri
    positive: int
    negative: int
    neutral: int

    @property
    def total(self) -> int:
        return self.positive + self.negative + self.neutral


@dataclass(frozen=True)
class ReviewerBreakdown:
    article: Iri
    rows: tuple[ReviewerRow, ...]

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "reviewer": r.reviewer.value,
                    "positive": r.positive,
                    "negative": r.negative,
                    "neutral": r.neutral,
                    "total": r.total,
                }
                for r in self.rows
            ]
        }

    def to_table(self) -> str:
        rows = [
            [r.reviewer.value, str(r.positive), str(r.negative), str(r.neutral), str(r.total)]
            for r in self.rows
        ]
        return format_table(["reviewer", "positive", "negative", "neutral", "total"], rows)


@dataclass(frozen=True)
class SectionRow:
    section: Iri | None  # None is the article-level bucket
    label: str
    positive: int
    negative: int
    neutral: int

    @property
    def total(self) -> int:
        return self.positive + self.negative + self.neutral


@dataclass(frozen=True)
class SectionBreakdown:
    article: Iri
    rows: tuple[SectionRow, ...]

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "section": r.section.value if r.section else None,
                    "label": r.label,
                    "positive": r.positive,
                    "negative": r.negative,
                    "neutral": r.neutral,
                    "total": r.total,
                }
                for r in self.rows
            ]
        }

    def to_table(self) -> str:
        rows = [
            [r.label, str(r.positive), str(r.negative), str(r.neutral), str(r.total)]
            for r in self.rows
        ]
        return format_table(["section", "positive", "negative", "neutral", "total"], rows)


@dataclass(frozen=True)
class AspectDistribution:
    content: int
    presentation: int

    def to_json_dict(self) -> dict:
        return {"content": self.content, "presentation": self.presentation}

    def to_table(self) -> str:
        return format_table(
            ["aspect", "comments"],
            [["content", str(self.content)], ["presentation", str(self.presentation)]],
        )


@dataclass(frozen=True)
class GranularityDistribution:
    paragraph_level: int
    section_level: int
    article_level: int

    def to_json_dict(self) -> dict:
        return {
            PARAGRAPH_LEVEL: self.paragraph_level,
            SECTION_LEVEL: self.section_level,
            ARTICLE_LEVEL: self.article_level,
        }

    def to_table(self) -> str:
        return format_table(
            ["granularity", "comments"],
            [
                [PARAGRAPH_LEVEL, str(self.paragraph_level)],
                [SECTION_LEVEL, str(self.section_level)],
                [ARTICLE_LEVEL, str(self.article_level)],
            ],
        )


@dataclass(frozen=True)
class CriticalPoint:
    comment: Iri
    impact: int
    section: Iri | None  # innermost section of the target, if any
    excerpt: str

    def to_json_dict(self) -> dict:
        return {
            "comment": self.comment.value,
            "impact": self.impact,
            "section": self.section.value if self.section else None,
            "excerpt": self.excerpt,
        }


@dataclass(frozen=True)
class CoverageRow:
    section: Iri
    label: str
    paragraphs: int
    comments: int
    covered: int


@dataclass(frozen=True)
class CoverageReport:
    article: Iri
    rows: tuple[CoverageRow, ...]
    uncovered: tuple[Iri, ...]

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {
                    "section": r.section.value,
                    "label": r.label,
                    "paragraphs": r.paragraphs,
                    "comments": r.comments,
                    "covered": r.covered,
                }
                for r in self.rows
            ],
            "uncovered": [u.value for u in self.uncovered],
        }

    def to_table(self) -> str:
        rows = [
            [r.label, str(r.paragraphs), str(r.comments), str(r.covered)]
            for r in self.rows
        ]
        table = format_table(["section", "paragraphs", "comments", "covered"], rows)
        return table + f"uncovered paragraphs: {len(self.uncovered)}\n"


@dataclass(frozen=True)
class ReviewerStack:
    """Per-reviewer counts along every dimension, for the stacked bar chart."""

    reviewer: Iri
    positivity: dict[str, int]
    aspect: dict[str, int]
    actionability: dict[str, int]
    impact: dict[str, int]
    total: int


@dataclass(frozen=True)
class SectionStack:
    """Per-section counts along every dimension, for the section matrix."""

    section: Iri | None
    label: str
    positivity: dict[str, int]
    aspect: dict[str, int]
    actionability: dict[str, int]
    impact: dict[str, int]
    total: int


# ---------------------------------------------------------------------------
# Shared attribution
# ---------------------------------------------------------------------------

def section_label(store: QuadStore, section: Iri) -> str:
    element = store.elements[section]
    return element.text or f"Section {element.order_index + 1}"


def comment_targets(store: QuadStore, article: Iri) -> dict[Iri, TargetInfo]:
    """resolve_target for every comment of the article."""
    return {
        c.uri: resolve_target(c, store.elements)
        for c in store.article_comments(article)
    }


def rolled_up_section(store: QuadStore, info: TargetInfo) -> Iri | None:
    """The top-level section a resolved target rolls up to (None = article)."""
    if info.innermost_section is None:
        return None
    return store.top_section_of(store.elements[info.innermost_section])


# ---------------------------------------------------------------------------
# The seven competency questions
# ---------------------------------------------------------------------------

def cq1(store: QuadStore, article: Iri) -> ReviewerBreakdown:
    """Positive/negative/neutral comment counts per reviewer.

    Declarative form::

        SELECT ?reviewer ?class (COUNT(?c) AS ?n) WHERE {
          ?review lf:isReviewOf <article> ; lf:hasComment ?c .
          GRAPH ?g { ?c a ?class }
          ?assertion prov:wasAttributedTo ?reviewer .
          FILTER(?class IN (lf:PositiveComment, lf:NegativeComment, lf:NeutralComment))
        } GROUP BY ?reviewer ?class
    """
    rows = []
    for container in store.article_containers(article):
        tally = {p: 0 for p in POSITIVITY}
        for uri in container.comments:
            tally[store.comments[uri].positivity] += 1
        rows.append(ReviewerRow(container.reviewer, tally["positive"], tally["negative"], tally["neutral"]))
    rows.sort(key=lambda r: r.reviewer.value)
    return ReviewerBreakdown(article, tuple(rows))


def cq2(store: QuadStore, article: Iri) -> SectionBreakdown:
    """Positive/negative/neutral comment counts per top-level section.

    Attribution rolls nested sections up to their top-level ancestor; the
    trailing "(article-level)" row collects comments on the article itself.

    Declarative form::

        SELECT ?section ?class (COUNT(?c) AS ?n) WHERE {
          ?c lf:refersTo ?target ; a ?class .
          ?target dcterms:isPartOf* ?section .
          ?section a doco:Section ; dcterms:isPartOf <article> .
        } GROUP BY ?section ?class
    """
    targets = comment_targets(store, article)
    tallies: dict[Iri | None, dict[str, int]] = {
        section.uri: {p: 0 for p in POSITIVITY} for section in store.top_sections(article)
    }
    tallies[None] = {p: 0 for p in POSITIVITY}
    for comment in store.article_comments(article):
        bucket = rolled_up_section(store, targets[comment.uri])
        tallies[bucket][comment.positivity] += 1

    rows = [
        SectionRow(
            section.uri,
            section_label(store, section.uri),
            tallies[section.uri]["positive"],
            tallies[section.uri]["negative"],
            tallies[section.uri]["neutral"],
        )
        for section in store.top_sections(article)
    ]
    rows.append(
        SectionRow(None, ARTICLE_BUCKET_LABEL, tallies[None]["positive"], tallies[None]["negative"], tallies[None]["neutral"])
    )
    return SectionBreakdown(article, tuple(rows))


def cq3(store: QuadStore, article: Iri) -> AspectDistribution:
    """Content vs presentation (syntax and style) distribution.

    Declarative form::

        SELECT ?class (COUNT(?c) AS ?n) WHERE {
          ?review lf:isReviewOf <article> ; lf:hasComment ?c . ?c a ?class .
          FILTER(?class IN (lf:ContentComment, lf:SyntaxComment))
        } GROUP BY ?class
    """
    tally = {a: 0 for a in ASPECTS}
    for comment in store.article_comments(article):
        tally[comment.aspect] += 1
    return AspectDistribution(tally["content"], tally["presentation"])


def cq4(store: QuadStore, article: Iri) -> GranularityDistribution:
    """Do comments target a snippet, a section, or the whole article?

    Declarative form::

        SELECT ?granularity (COUNT(?c) AS ?n) WHERE {
          ?c lf:refersTo ?target . ?target a ?kind .
          BIND(IF(?kind = fabio:ResearchPaper, "article-level",
               IF(?kind = doco:Section, "section-level", "paragraph-level")) AS ?granularity)
        } GROUP BY ?granularity
    """
    targets = comment_targets(store, article)
    tally = {PARAGRAPH_LEVEL: 0, SECTION_LEVEL: 0, ARTICLE_LEVEL: 0}
    for info in targets.values():
        tally[info.granularity] += 1
    return GranularityDistribution(tally[PARAGRAPH_LEVEL], tally[SECTION_LEVEL], tally[ARTICLE_LEVEL])


def cq5(
    store: QuadStore, article: Iri, threshold: int = DEFAULT_CRITICAL_IMPACT
) -> tuple[CriticalPoint, ...]:
    """Critical points: negative comments at or above the impact threshold,
    highest impact first.

    Declarative form::

        SELECT ?c ?impact WHERE {
          ?review lf:isReviewOf <article> ; lf:hasComment ?c .
          ?c a lf:NegativeComment ; lf:hasImpact ?impact .
          FILTER(?impact >= threshold)
        } ORDER BY DESC(?impact) ?c
    """
    targets = comment_targets(store, article)
    points = [
        CriticalPoint(
            comment.uri,
            comment.impact,
            targets[comment.uri].innermost_section,
            _excerpt(comment.text),
        )
        for comment in store.article_comments(article)
        if comment.positivity == "negative" and comment.impact >= threshold
    ]
    points.sort(key=lambda p: (-p.impact, p.comment.value))
    return tuple(points)


def cq6(store: QuadStore, article: Iri, mode: str = "compulsory") -> int:
    """How many points must the authors address?

    Counts compulsory comments; mode "negative-compulsory" restricts the
    count to comments that are also negative.

    Declarative form::

        SELECT (COUNT(?c) AS ?n) WHERE {
          ?review lf:isReviewOf <article> ; lf:hasComment ?c .
          ?c a lf:CompulsoryComment .
        }
    """
    if mode not in CQ6_MODES:
        raise ValueError(f"unknown cq6 mode: {mode!r}")
    count = 0
    for comment in store.article_comments(article):
        if comment.actionability != "compulsory":
            continue
        if mode == "negative-compulsory" and comment.positivity != "negative":
            continue
        count += 1
    return count


def cq7(store: QuadStore, article: Iri) -> CoverageReport:
    """How do the comments cover the sections and paragraphs?

    Per top-level section: its paragraph count, the comments attributed to
    it, and how many of its paragraphs have at least one comment pointing
    directly at them. `uncovered` lists every paragraph of the article with
    zero direct comments.

    Declarative form::

        SELECT ?paragraph WHERE {
          ?paragraph a doco:Paragraph .
          FILTER NOT EXISTS { ?c lf:refersTo ?paragraph }
        }
    """
    targets = comment_targets(store, article)
    comments = store.article_comments(article)
    directly_hit = {c.target for c in comments}

    attributed: dict[Iri, int] = {}
    for comment in comments:
        bucket = rolled_up_section(store, targets[comment.uri])
        if bucket is not None:
            attributed[bucket] = attributed.get(bucket, 0) + 1

    rows = []
    uncovered: list[Iri] = []
    for section in store.top_sections(article):
        paragraphs = [
            e for e in _subtree(store, section.uri) if e.kind == "paragraph"
        ]
        covered = [p for p in paragraphs if p.uri in directly_hit]
        rows.append(
            CoverageRow(
                section.uri,
                section_label(store, section.uri),
                len(paragraphs),
                attributed.get(section.uri, 0),
                len(covered),
            )
        )
        uncovered.extend(p.uri for p in paragraphs if p.uri not in directly_hit)
    uncovered.sort(key=lambda u: u.value)
    return CoverageReport(article, tuple(rows), tuple(uncovered))


def _subtree(store: QuadStore, root: Iri):
    out = []
    queue = [root]
    while queue:
        node = queue.pop(0)
        for child in store.children_of(node):
            out.append(child)
            queue.append(child.uri)
    return out


def _excerpt(text: str, limit: int = EXCERPT_LIMIT) -> str:
    return text if len(text) <= limit else text[: limit - 1] + "…"


# ---------------------------------------------------------------------------
# Dimension stacks for the dashboard views
# ---------------------------------------------------------------------------

def _stack(comments: list[ReviewComment]) -> tuple[dict, dict, dict, dict]:
    positivity = {p: 0 for p in POSITIVITY}
    aspect = {a: 0 for a in ASPECTS}
    actionability = {a: 0 for a in ACTIONABILITY}
    impact = {str(i): 0 for i in range(1, 6)}
    for c in comments:
        positivity[c.positivity] += 1
        aspect[c.aspect] += 1
        actionability[c.actionability] += 1
        impact[str(c.impact)] += 1
    return positivity, aspect, actionability, impact


def reviewer_stacks(store: QuadStore, article: Iri) -> tuple[ReviewerStack, ...]:
    """Per-reviewer counts across all four dimensions."""
    stacks = []
    for container in store.article_containers(article):
        comments = [store.comments[uri] for uri in container.comments]
        positivity, aspect, actionability, impact = _stack(comments)
        stacks.append(
            ReviewerStack(container.reviewer, positivity, aspect, actionability, impact, len(comments))
        )
    stacks.sort(key=lambda s: s.reviewer.value)
    return tuple(stacks)


def section_stacks(store: QuadStore, article: Iri) -> tuple[SectionStack, ...]:
    """Per-top-level-section counts across all four dimensions."""
    targets = comment_targets(store, article)
    grouped: dict[Iri | None, list[ReviewComment]] = {
        section.uri: [] for section in store.top_sections(article)
    }
    grouped[None] = []
    for comment in store.article_comments(article):
        grouped[rolled_up_section(store, targets[comment.uri])].append(comment)

    stacks = []
    for section in store.top_sections(article):
        positivity, aspect, actionability, impact = _stack(grouped[section.uri])
        stacks.append(
            SectionStack(
                section.uri,
                section_label(store, section.uri),
                positivity,
                aspect,
                actionability,
                impact,
                len(grouped[section.uri]),
            )
        )
    positivity, aspect, actionability, impact = _stack(grouped[None])
    stacks.append(
        SectionStack(None, ARTICLE_BUCKET_LABEL, positivity, aspect, actionability, impact, len(grouped[None]))
    )
    return tuple(stacks)
