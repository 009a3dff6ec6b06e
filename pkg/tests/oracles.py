"""Brute-force recomputations of every analytic, straight from corpus objects.

Nothing here touches the quad store, the typed query module, or even the
model's own traversal helpers: attribution is re-derived by walking parent
links directly over the generator's ground-truth element list.
"""

from __future__ import annotations

from collections import Counter

from linkflows.corpus import Corpus
from linkflows.rdf import Iri


def comments_of(corpus: Corpus, article: Iri):
    reviews = {c.uri for c in corpus.containers if c.article == article}
    return [c for c in corpus.comments if c.review in reviews]


def target_walk(corpus: Corpus, target: Iri):
    """(granularity, innermost section, top-level section) by parent walking."""
    elements = {e.uri: e for e in corpus.elements}
    element = elements[target]
    if element.kind == "article":
        return "article-level", None, None
    if element.kind == "section":
        granularity, innermost = "section-level", element
    else:
        granularity, innermost = "paragraph-level", elements[element.parent]
    top = innermost
    while elements[top.parent].kind != "article":
        top = elements[top.parent]
    return granularity, innermost.uri, top.uri


def cq1(corpus: Corpus, article: Iri) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for container in corpus.containers:
        if container.article != article:
            continue
        tally = Counter(c.positivity for c in corpus.comments if c.review == container.uri)
        out[container.reviewer.value] = {
            "positive": tally["positive"],
            "negative": tally["negative"],
            "neutral": tally["neutral"],
        }
    return out


def cq2(corpus: Corpus, article: Iri) -> dict[str | None, dict[str, int]]:
    elements = {e.uri: e for e in corpus.elements}

    def article_of(element):
        while element.parent is not None:
            element = elements[element.parent]
        return element.uri

    tallies: dict[str | None, Counter] = {
        e.uri.value: Counter()
        for e in corpus.elements
        if e.kind == "section" and elements[e.parent].kind == "article" and article_of(e) == article
    }
    tallies[None] = Counter()
    for comment in comments_of(corpus, article):
        _, _, top = target_walk(corpus, comment.target)
        tallies[top.value if top else None][comment.positivity] += 1
    return {
        key: {"positive": c["positive"], "negative": c["negative"], "neutral": c["neutral"]}
        for key, c in tallies.items()
    }


def cq3(corpus: Corpus, article: Iri) -> tuple[int, int]:
    tally = Counter(c.aspect for c in comments_of(corpus, article))
    return tally["content"], tally["presentation"]


def cq4(corpus: Corpus, article: Iri) -> tuple[int, int, int]:
    tally = Counter(target_walk(corpus, c.target)[0] for c in comments_of(corpus, article))
    return tally["paragraph-level"], tally["section-level"], tally["article-level"]


def cq5(corpus: Corpus, article: Iri, threshold: int) -> list[str]:
    points = [
        c for c in comments_of(corpus, article)
        if c.positivity == "negative" and c.impact >= threshold
    ]
    points.sort(key=lambda c: (-c.impact, c.uri.value))
    return [c.uri.value for c in points]


def cq6(corpus: Corpus, article: Iri, mode: str = "compulsory") -> int:
    count = 0
    for c in comments_of(corpus, article):
        if c.actionability != "compulsory":
            continue
        if mode == "negative-compulsory" and c.positivity != "negative":
            continue
        count += 1
    return count


def cq7(corpus: Corpus, article: Iri):
    """Per top-level section (paragraphs, attributed comments, covered), plus
    the set of uncovered paragraph URIs."""
    elements = {e.uri: e for e in corpus.elements}

    def article_of(element):
        while element.parent is not None:
            element = elements[element.parent]
        return element.uri

    paragraphs = [e for e in corpus.elements if e.kind == "paragraph" and article_of(e) == article]
    hit = {c.target for c in comments_of(corpus, article)}

    per_section: dict[str, list[int]] = {
        e.uri.value: [0, 0, 0]
        for e in corpus.elements
        if e.kind == "section" and elements[e.parent].kind == "article" and article_of(e) == article
    }
    for paragraph in paragraphs:
        _, _, top = target_walk(corpus, paragraph.uri)
        row = per_section.setdefault(top.value, [0, 0, 0])
        row[0] += 1
        if paragraph.uri in hit:
            row[2] += 1
    for comment in comments_of(corpus, article):
        _, _, top = target_walk(corpus, comment.target)
        if top is not None:
            per_section.setdefault(top.value, [0, 0, 0])[1] += 1

    uncovered = {p.uri.value for p in paragraphs if p.uri not in hit}
    return per_section, uncovered
