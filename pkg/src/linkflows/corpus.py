"""Deterministic synthetic corpus of articles, reviews, and their nanopublications.

The default corpus is pinned to the reference tallies: 3 articles carrying
89 sections, 279 paragraphs, 11 figures, 10 tables, 8 formulas and 2
footnotes, reviewed in 9 reviews totalling 213 comments (85/59/69 per
article, reviewer splits 17/18/50, 16/21/22 and 11/42/16). Everything is
published as 627 nanopublications: 402 elements, 213 comments, 9 review
containers, 2 sub-indexes and 1 top-level index, summing to 10,437 triples
once assertions are padded to 5,420 with editorial notes.

Only the review-dimension draws and comment targets depend on the seed; the
structure (and therefore every triple count) is seed-independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .model import (
    DocElement,
    LEAF_KINDS,
    ReviewComment,
    ReviewContainer,
    assertion_quads,
    fragment_for,
)
from .nanopub import (
    DEFAULT_PUBLISH_BASE,
    Nanopublication,
    PubMeta,
    assemble,
    build_index,
    make_trusty,
)
from .rdf import Iri, Literal, Quad
from .vocab import DCTERMS, ORCID_PREFIX


class CorpusError(Exception):
    """The corpus spec cannot produce the requested corpus."""


@dataclass(frozen=True)
class ArticleLayout:
    title: str
    sections: int
    top_sections: int
    paragraphs: int
    figures: int = 0
    tables: int = 0
    formulas: int = 0
    footnotes: int = 0

    def __post_init__(self) -> None:
        if min(self.sections, self.paragraphs, self.figures, self.tables, self.formulas, self.footnotes) < 0:
            raise ValueError("layout counts must be >= 0")
        if self.sections and not 1 <= self.top_sections <= self.sections:
            raise ValueError("top_sections must be in 1..sections")
        leaves = self.paragraphs + self.figures + self.tables + self.formulas + self.footnotes
        if leaves and self.sections == 0:
            raise ValueError("cannot place snippets in an article without sections")


@dataclass(frozen=True)
class DimensionWeights:
    """Categorical draw weights for the synthetic review dimensions.

    These are corpus parameters, not ground truth from any source; analytics
    are always checked against recounts of the generated objects.
    """

    positivity: tuple[tuple[str, float], ...] = (("negative", 0.55), ("positive", 0.35), ("neutral", 0.10))
    aspect: tuple[tuple[str, float], ...] = (("content", 0.60), ("presentation", 0.40))
    actionability: tuple[tuple[str, float], ...] = (("suggestion", 0.50), ("compulsory", 0.50))
    impact: tuple[tuple[int, float], ...] = ((1, 1.0), (2, 1.0), (3, 1.0), (4, 1.0), (5, 1.0))
    target: tuple[tuple[str, float], ...] = (("snippet", 0.70), ("section", 0.20), ("article", 0.10))


DEFAULT_ARTICLES = (
    ArticleLayout("Article 1", sections=30, top_sections=8, paragraphs=93, figures=4, tables=4, formulas=3, footnotes=1),
    ArticleLayout("Article 2", sections=30, top_sections=8, paragraphs=93, figures=4, tables=3, formulas=3, footnotes=1),
    ArticleLayout("Article 3", sections=29, top_sections=7, paragraphs=93, figures=3, tables=3, formulas=2, footnotes=0),
)
DEFAULT_REVIEWS = ((17, 18, 50), (16, 21, 22), (11, 42, 16))

JOURNAL_BASE = "https://journal.example.org/"
DATASET_SOURCE = Iri(JOURNAL_BASE + "reviews/linkflows-dataset")
MODELER = Iri(ORCID_PREFIX + "0000-0002-0000-0001")


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 42
    articles: tuple[ArticleLayout, ...] = DEFAULT_ARTICLES
    reviews: tuple[tuple[int, ...], ...] = DEFAULT_REVIEWS
    weights: DimensionWeights = field(default_factory=DimensionWeights)
    assertion_total: int | None = 5420
    created: str = "2021-07-12T09:00:00Z"
    publish_base: str = DEFAULT_PUBLISH_BASE

    def __post_init__(self) -> None:
        if len(self.reviews) != len(self.articles):
            raise ValueError("reviews must list one tuple of reviewer comment counts per article")


@dataclass(frozen=True)
class Corpus:
    spec: CorpusSpec
    nanopubs: tuple[Nanopublication, ...]
    elements: tuple[DocElement, ...]
    comments: tuple[ReviewComment, ...]
    containers: tuple[ReviewContainer, ...]
    article_uris: tuple[Iri, ...]
    index_uris: tuple[Iri, ...]  # sub-indexes first, top-level index last

    @property
    def top_index(self) -> Iri:
        return self.index_uris[-1]

    def element_index(self) -> dict[Iri, DocElement]:
        return {e.uri: e for e in self.elements}


def build_article(layout: ArticleLayout, base: str = "urn:draft:article/") -> list[DocElement]:
    """The article root, its (possibly nested) sections, and its snippets.

    URIs under `base` are provisional; they are replaced by trusty fragment
    URIs when the elements are published. Deterministic for a given layout.
    """
    root = DocElement(Iri(base + "article"), "article", text=layout.title or "Untitled")
    elements = [root]
    next_order: dict[Iri, int] = {root.uri: 0}

    def place(uri: Iri, kind: str, parent: Iri, text: str = "") -> DocElement:
        order = next_order.get(parent, 0)
        next_order[parent] = order + 1
        element = DocElement(uri, kind, text=text, parent=parent, order_index=order)
        elements.append(element)
        next_order.setdefault(element.uri, 0)
        return element

    sections: list[DocElement] = []
    for i in range(layout.sections):
        if i < layout.top_sections:
            parent = root.uri
        else:
            parent = sections[(i - layout.top_sections) % layout.top_sections].uri
        sections.append(place(Iri(f"{base}s{i}"), "section", parent))

    counts = {
        "paragraph": layout.paragraphs,
        "figure": layout.figures,
        "table": layout.tables,
        "formula": layout.formulas,
        "footnote": layout.footnotes,
    }
    short = {"paragraph": "p", "figure": "fig", "table": "tab", "formula": "frm", "footnote": "fn"}
    for kind in LEAF_KINDS:
        for i in range(counts[kind]):
            parent = sections[i % len(sections)].uri
            place(Iri(f"{base}{short[kind]}{i}"), kind, parent, text=f"{kind.capitalize()} {i + 1} text.")
    return elements


def _draw(rng: random.Random, weighted: tuple[tuple[object, float], ...]):
    values = [v for v, _ in weighted]
    weights = [w for _, w in weighted]
    return rng.choices(values, weights=weights, k=1)[0]


def generate_corpus(spec: CorpusSpec) -> Corpus:
    """Generate and publish the whole corpus, deterministically from the seed."""
    rng = random.Random(spec.seed)
    publish_base = Iri(spec.publish_base)

    # Phase A: draw the whole object graph under provisional URIs. All RNG
    # use happens here, in one fixed order.
    draft_elements: list[tuple[int, DocElement]] = []
    draft_comments: list[tuple[int, ReviewComment]] = []
    draft_containers: list[tuple[int, ReviewContainer]] = []
    sources: list[Iri] = []

    for a, layout in enumerate(spec.articles):
        base = f"urn:draft:a{a + 1}/"
        elements = build_article(layout, base)
        draft_elements += [(a, e) for e in elements]
        sources.append(Iri(f"{JOURNAL_BASE}articles/{a + 1}"))

        root = elements[0]
        section_pool = [e for e in elements if e.kind == "section"]
        snippet_pool = [e for e in elements if e.kind in LEAF_KINDS]
        comment_no = 0
        for r, comment_count in enumerate(spec.reviews[a]):
            reviewer = Iri(f"{ORCID_PREFIX}0000-0003-{a + 1:04d}-{r + 1:04d}")
            review_uri = Iri(f"{JOURNAL_BASE}articles/{a + 1}/reviews/{r + 1}")
            members: list[Iri] = []
            for _ in range(comment_count):
                comment_no += 1
                bucket = _draw(rng, spec.weights.target)
                if bucket == "snippet" and snippet_pool:
                    target = rng.choice(snippet_pool)
                elif bucket == "section" and section_pool:
                    target = rng.choice(section_pool)
                else:
                    target = root
                comment = ReviewComment(
                    uri=Iri(f"{base}r{r + 1}/c{comment_no}"),
                    target=target.uri,
                    positivity=_draw(rng, spec.weights.positivity),
                    aspect=_draw(rng, spec.weights.aspect),
                    actionability=_draw(rng, spec.weights.actionability),
                    impact=_draw(rng, spec.weights.impact),
                    text=f"Comment {comment_no} on {target.kind}",
                    reviewer=reviewer,
                    review=review_uri,
                )
                draft_comments.append((a, comment))
                members.append(comment.uri)
            draft_containers.append((a, ReviewContainer(review_uri, root.uri, reviewer, tuple(members))))

    # Padding schedule: fixed by the structure alone, never by the seed, so
    # triple totals are identical across seeds.
    probe = Iri("urn:draft:probe")
    value_base = (
        sum(len(assertion_quads(e, probe)) for _, e in draft_elements)
        + 8 * len(draft_comments)
        + sum(2 + len(c.comments) for _, c in draft_containers)
    )
    index_base = (
        (1 + len(draft_elements))
        + (1 + len(draft_comments) + len(draft_containers))
        + (1 + 2)
    )
    content_count = len(draft_elements) + len(draft_comments) + len(draft_containers)
    if spec.assertion_total is None:
        pads = [0] * content_count
    else:
        pad_total = spec.assertion_total - value_base - index_base
        if pad_total < 0:
            raise CorpusError(
                f"assertion target {spec.assertion_total} is below the structural "
                f"minimum {value_base + index_base} (short by {-pad_total})"
            )
        pads = [pad_total // content_count] * content_count
        for i in range(pad_total % content_count):
            pads[i] += 1
    pad_iter = iter(pads)

    # Phase B: publish bottom-up, rewriting provisional URIs to trusty ones.
    final: dict[Iri, Iri] = {}
    nanopubs: list[Nanopublication] = []
    published_elements: list[DocElement] = []
    published_comments: list[ReviewComment] = []
    published_containers: list[ReviewContainer] = []
    element_np_uris: list[Iri] = []
    review_np_uris: list[Iri] = []
    article_uris: list[Iri] = []

    temp_no = 0
    note_no = 0

    def publish(value, meta: PubMeta) -> Nanopublication:
        nonlocal temp_no, note_no
        temp_no += 1
        temp = Iri(f"urn:temp:np{temp_no:05d}")
        quads = assertion_quads(value, temp)
        subject = quads[0].subject
        for _ in range(next(pad_iter)):
            note_no += 1
            quads.append(Quad(subject, DCTERMS.description, Literal(f"Editorial note {note_no}"), temp))
        np = make_trusty(assemble(quads, None, meta, temp), publish_base)
        nanopubs.append(np)
        return np

    for a, element in draft_elements:
        author = Iri(f"{ORCID_PREFIX}0000-0001-{a + 1:04d}-0001")
        fixed = replace(element, parent=final[element.parent] if element.parent else None)
        np = publish(fixed, PubMeta(author, spec.created, sources[a]))
        uri = Iri(f"{np.uri.value}#{fragment_for(fixed)}")
        final[element.uri] = uri
        published_elements.append(replace(fixed, uri=uri))
        element_np_uris.append(np.uri)
        if element.kind == "article":
            article_uris.append(uri)

    for a, comment in draft_comments:
        fixed = replace(comment, target=final[comment.target])
        np = publish(fixed, PubMeta(comment.reviewer, spec.created, sources[a]))
        uri = Iri(f"{np.uri.value}#{fragment_for(fixed)}")
        final[comment.uri] = uri
        published_comments.append(replace(fixed, uri=uri))
        review_np_uris.append(np.uri)

    for a, container in draft_containers:
        fixed = replace(
            container,
            article=final[container.article],
            comments=tuple(sorted((final[c] for c in container.comments), key=lambda u: u.value)),
        )
        np = publish(fixed, PubMeta(container.reviewer, spec.created, sources[a]))
        published_containers.append(fixed)
        review_np_uris.append(np.uri)

    index_meta = PubMeta(MODELER, spec.created, DATASET_SOURCE)
    chain_a = build_index(element_np_uris, index_meta, publish_base)
    chain_b = build_index(review_np_uris, index_meta, publish_base)
    chain_top = build_index(
        [chain_a[-1].uri, chain_b[-1].uri],
        index_meta,
        publish_base,
        description="Top-level index of the article, review, and comment nanopublications.",
    )
    index_uris: list[Iri] = []
    for link in (*chain_a, *chain_b, *chain_top):
        nanopubs.append(link.nanopub)
        index_uris.append(link.uri)

    corpus = Corpus(
        spec=spec,
        nanopubs=tuple(nanopubs),
        elements=tuple(published_elements),
        comments=tuple(published_comments),
        containers=tuple(published_containers),
        article_uris=tuple(article_uris),
        index_uris=tuple(index_uris),
    )
    _check_totals(corpus)
    return corpus


def _check_totals(corpus: Corpus) -> None:
    spec = corpus.spec
    if spec.assertion_total is None:
        return
    assertion = sum(len(np.assertion) for np in corpus.nanopubs)
    if assertion != spec.assertion_total:
        raise CorpusError(f"assertion triples: wanted {spec.assertion_total}, produced {assertion}")
