"""Article snippets, review comments, and the links between them.

Values here are plain immutable records; the codec at the bottom maps each
of them to and from a nanopublication. Element and comment identities are
fragments of their nanopublication URI (``...RAxyz#paragraph``), so a value
only receives its final URI once its nanopublication is made trusty.

For article elements the ``text`` field holds the title; sections usually
leave it empty.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from typing import Iterable, Mapping

from .nanopub import (
    PROVENANCE_SUFFIX,
    TEMP_PREFIX,
    Nanopublication,
    PubMeta,
    assemble,
    make_trusty,
)
from .rdf import XSD_INTEGER, Iri, Literal, Quad
from .vocab import C4O, DCTERMS, DOCO, FABIO, LF, ORCID_PREFIX, PROV, RDF

ELEMENT_KINDS = ("article", "section", "paragraph", "figure", "table", "formula", "footnote")
LEAF_KINDS = ("paragraph", "figure", "table", "formula", "footnote")
POSITIVITY = ("positive", "negative", "neutral")
ASPECTS = ("content", "presentation")
ACTIONABILITY = ("suggestion", "compulsory")

PARAGRAPH_LEVEL = "paragraph-level"
SECTION_LEVEL = "section-level"
ARTICLE_LEVEL = "article-level"
GRANULARITIES = (PARAGRAPH_LEVEL, SECTION_LEVEL, ARTICLE_LEVEL)

KIND_CLASS = {
    "article": FABIO.ResearchPaper,
    "section": DOCO.Section,
    "paragraph": DOCO.Paragraph,
    "figure": DOCO.Figure,
    "table": DOCO.Table,
    "formula": DOCO.Formula,
    "footnote": DOCO.Footnote,
}
CLASS_KIND = {v: k for k, v in KIND_CLASS.items()}

POSITIVITY_CLASS = {
    "positive": LF.PositiveComment,
    "negative": LF.NegativeComment,
    "neutral": LF.NeutralComment,
}
ASPECT_CLASS = {"content": LF.ContentComment, "presentation": LF.SyntaxComment}
ACTIONABILITY_CLASS = {"suggestion": LF.SuggestionComment, "compulsory": LF.CompulsoryComment}

CLASS_POSITIVITY = {v: k for k, v in POSITIVITY_CLASS.items()}
CLASS_ASPECT = {v: k for k, v in ASPECT_CLASS.items()}
CLASS_ACTIONABILITY = {v: k for k, v in ACTIONABILITY_CLASS.items()}

COMMENT_FRAGMENT = "comment"
REVIEW_FRAGMENT = "review"


class ShapeError(ValueError):
    """An assertion graph does not match any known value shape."""


class DanglingTargetError(LookupError):
    def __init__(self, target: Iri):
        super().__init__(f"comment target does not resolve: {target.value}")
        self.target = target


class CycleError(ValueError):
    def __init__(self, nodes: list[Iri], kind: str):
        chain = " -> ".join(n.value for n in nodes)
        super().__init__(f"{kind} edges form a cycle: {chain}")
        self.nodes = nodes


@dataclass(frozen=True)
class DocElement:
    uri: Iri
    kind: str
    text: str = ""
    parent: Iri | None = None
    order_index: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(f"unknown element kind: {self.kind!r}")
        if self.kind == "article" and self.parent is not None:
            raise ValueError("article elements have no parent")
        if self.kind != "article" and self.parent is None:
            raise ValueError(f"{self.kind} element requires a parent")
        if self.order_index < 0:
            raise ValueError("order_index must be >= 0")


@dataclass(frozen=True)
class ReviewComment:
    uri: Iri
    target: Iri
    positivity: str
    aspect: str
    actionability: str
    impact: int
    text: str
    reviewer: Iri
    review: Iri

    def __post_init__(self) -> None:
        if self.positivity not in POSITIVITY:
            raise ValueError(f"unknown positivity: {self.positivity!r}")
        if self.aspect not in ASPECTS:
            raise ValueError(f"unknown aspect: {self.aspect!r}")
        if self.actionability not in ACTIONABILITY:
            raise ValueError(f"unknown actionability: {self.actionability!r}")
        if not 1 <= self.impact <= 5:
            raise ValueError(f"impact must be in 1..5, got {self.impact}")
        if not self.reviewer.value.startswith(ORCID_PREFIX):
            raise ValueError(f"reviewer must be an ORCID IRI: {self.reviewer.value}")


@dataclass(frozen=True)
class ReviewContainer:
    uri: Iri
    article: Iri
    reviewer: Iri
    comments: tuple[Iri, ...]

    def __post_init__(self) -> None:
        if not self.reviewer.value.startswith(ORCID_PREFIX):
            raise ValueError(f"reviewer must be an ORCID IRI: {self.reviewer.value}")


LINK_KINDS = ("refersTo", "isResponseTo", "isUpdateOf")


@dataclass(frozen=True)
class LinkEdge:
    kind: str
    source: Iri
    target: Iri

    def __post_init__(self) -> None:
        if self.kind not in LINK_KINDS:
            raise ValueError(f"unknown link kind: {self.kind!r}")


DomainValue = DocElement | ReviewComment | ReviewContainer


# ---------------------------------------------------------------------------
# Target resolution and link traversal
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TargetInfo:
    granularity: str
    innermost_section: Iri | None


def resolve_target(comment: ReviewComment, elements: Mapping[Iri, DocElement]) -> TargetInfo:
    """Classify what a comment points at: a snippet, a section, or the article."""
    element = elements.get(comment.target)
    if element is None:
        raise DanglingTargetError(comment.target)
    if element.kind == "article":
        return TargetInfo(ARTICLE_LEVEL, None)
    if element.kind == "section":
        return TargetInfo(SECTION_LEVEL, element.uri)
    # Leaf snippets live directly under a section.
    return TargetInfo(PARAGRAPH_LEVEL, element.parent)


def _update_edges(edges: Iterable[LinkEdge]) -> list[LinkEdge]:
    return [e for e in edges if e.kind == "isUpdateOf"]


def version_chain(element: Iri, edges: Iterable[LinkEdge]) -> list[tuple[Iri, ...]]:
    """All maximal oldest-to-newest version chains that pass through `element`.

    A branching history yields one chain per leaf. Raises CycleError when the
    isUpdateOf edges are not a DAG.
    """
    updates = _update_edges(edges)
    newer_of: dict[Iri, list[Iri]] = {}
    older_of: dict[Iri, list[Iri]] = {}
    nodes = {element}
    for e in updates:
        newer_of.setdefault(e.target, []).append(e.source)
        older_of.setdefault(e.source, []).append(e.target)
        nodes.add(e.source)
        nodes.add(e.target)
    for successors in newer_of.values():
        successors.sort(key=lambda n: n.value)

    _check_acyclic(nodes, newer_of, "isUpdateOf")

    roots = sorted((n for n in nodes if n not in older_of), key=lambda n: n.value)
    chains: list[tuple[Iri, ...]] = []

    def walk(node: Iri, path: list[Iri]) -> None:
        path.append(node)
        successors = newer_of.get(node, [])
        if not successors:
            if element in path:
                chains.append(tuple(path))
        else:
            for nxt in successors:
                walk(nxt, path)
        path.pop()

    for root in roots:
        walk(root, [])
    chains.sort(key=lambda chain: tuple(n.value for n in chain))
    return chains


@dataclass(frozen=True)
class ThreadNode:
    uri: Iri
    children: tuple["ThreadNode", ...] = ()


def response_thread(comment: Iri, edges: Iterable[LinkEdge]) -> ThreadNode:
    """The tree of transitive responses rooted at `comment`."""
    responses = [e for e in edges if e.kind == "isResponseTo"]
    children_of: dict[Iri, list[Iri]] = {}
    nodes = {comment}
    for e in responses:
        children_of.setdefault(e.target, []).append(e.source)
        nodes.add(e.source)
        nodes.add(e.target)
    for kids in children_of.values():
        kids.sort(key=lambda n: n.value)

    _check_acyclic(nodes, children_of, "isResponseTo")

    def build(node: Iri) -> ThreadNode:
        return ThreadNode(node, tuple(build(child) for child in children_of.get(node, [])))

    return build(comment)


def _check_acyclic(nodes: Iterable[Iri], successors: Mapping[Iri, list[Iri]], kind: str) -> None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[Iri, int] = {n: WHITE for n in nodes}
    stack: list[Iri] = []

    def visit(node: Iri) -> None:
        color[node] = GRAY
        stack.append(node)
        for nxt in successors.get(node, []):
            if color.get(nxt, WHITE) == GRAY:
                cycle = stack[stack.index(nxt):] + [nxt]
                raise CycleError(cycle, kind)
            if color.get(nxt, WHITE) == WHITE:
                visit(nxt)
        stack.pop()
        color[node] = BLACK

    for node in sorted(color, key=lambda n: n.value):
        if color[node] == WHITE:
            visit(node)


# ---------------------------------------------------------------------------
# Codec: domain values <-> nanopublications
# ---------------------------------------------------------------------------

def fragment_for(value: DomainValue) -> str:
    if isinstance(value, DocElement):
        return value.kind
    if isinstance(value, ReviewComment):
        return COMMENT_FRAGMENT
    return REVIEW_FRAGMENT


def assertion_quads(value: DomainValue, base: Iri) -> list[Quad]:
    """The assertion triples encoding a value.

    Elements and comments are identified by fragments of their (eventual)
    nanopublication URI, so their subject is rooted at base#fragment. A
    review container keeps its own stable URI: its comments must reference
    the review before the review's nanopublication can exist, which rules
    out a hash-dependent identity.
    """
    if isinstance(value, ReviewContainer):
        subject = value.uri
    else:
        subject = Iri(f"{base.value}#{fragment_for(value)}")
    quads: list[Quad] = []

    def add(p: Iri, o) -> None:
        quads.append(Quad(subject, p, o, base))

    if isinstance(value, DocElement):
        add(RDF.type, KIND_CLASS[value.kind])
        if value.parent is not None:
            add(DCTERMS.isPartOf, value.parent)
            add(LF.hasOrderIndex, Literal(str(value.order_index), XSD_INTEGER))
        if value.text:
            add(C4O.hasContent, Literal(value.text))
    elif isinstance(value, ReviewComment):
        add(RDF.type, LF.ReviewComment)
        add(RDF.type, POSITIVITY_CLASS[value.positivity])
        add(RDF.type, ASPECT_CLASS[value.aspect])
        add(RDF.type, ACTIONABILITY_CLASS[value.actionability])
        add(LF.hasImpact, Literal(str(value.impact), XSD_INTEGER))
        add(LF.refersTo, value.target)
        add(C4O.hasContent, Literal(value.text))
        add(DCTERMS.isPartOf, value.review)
    else:
        add(RDF.type, LF.Review)
        add(LF.isReviewOf, value.article)
        for comment in value.comments:
            add(LF.hasComment, comment)
    return quads


def to_nanopub(
    value: DomainValue,
    meta: PubMeta,
    temp_base: Iri | None = None,
    publish_base: Iri | None = None,
) -> Nanopublication:
    """Encode a value as a trusty nanopublication."""
    temp = temp_base or Iri(f"{TEMP_PREFIX}np-{uuid.uuid4().hex}")
    return make_trusty(assemble(assertion_quads(value, temp), None, meta, temp), publish_base)


def _attributed_to(n: Nanopublication) -> Iri:
    for quad in n.graph_quads(Iri(n.uri.value + PROVENANCE_SUFFIX)):
        if quad.predicate == PROV.wasAttributedTo and isinstance(quad.object, Iri):
            return quad.object
    raise ShapeError(f"missing required triple: <{n.assertion_graph.value}> prov:wasAttributedTo ?agent")


def from_nanopub(n: Nanopublication) -> DomainValue:
    """Decode a nanopublication back into its typed value.

    Extra annotation triples (dcterms:description notes) are tolerated and
    dropped; anything else unexpected is a ShapeError.
    """
    by_subject: dict[Iri, list[Quad]] = {}
    for quad in n.assertion:
        if isinstance(quad.subject, Iri):
            by_subject.setdefault(quad.subject, []).append(quad)

    primary: Iri | None = None
    for subject, quads in by_subject.items():
        types = {q.object for q in quads if q.predicate == RDF.type}
        if types & (set(CLASS_KIND) | {LF.ReviewComment, LF.Review}):
            if primary is not None:
                raise ShapeError(f"multiple primary subjects in assertion of {n.uri.value}")
            primary = subject
    if primary is None:
        raise ShapeError("missing required triple: ?subject rdf:type <element/comment/review class>")

    quads = by_subject[primary]
    types = {q.object for q in quads if q.predicate == RDF.type}

    def one(predicate: Iri, required: bool = True):
        values = [q.object for q in quads if q.predicate == predicate]
        if not values:
            if required:
                raise ShapeError(f"missing required triple: <{primary.value}> <{predicate.value}> ?o")
            return None
        if len(values) > 1:
            raise ShapeError(f"multiple values for <{predicate.value}> on {primary.value}")
        return values[0]

    def text_of(term, default: str = "") -> str:
        return term.lexical if isinstance(term, Literal) else default

    if LF.ReviewComment in types:
        positivity = [CLASS_POSITIVITY[t] for t in types if t in CLASS_POSITIVITY]
        aspect = [CLASS_ASPECT[t] for t in types if t in CLASS_ASPECT]
        actionability = [CLASS_ACTIONABILITY[t] for t in types if t in CLASS_ACTIONABILITY]
        if len(positivity) != 1:
            raise ShapeError(f"comment must carry exactly one positivity class: {primary.value}")
        if len(aspect) != 1:
            raise ShapeError(f"comment must carry exactly one aspect class: {primary.value}")
        if len(actionability) != 1:
            raise ShapeError(f"comment must carry exactly one actionability class: {primary.value}")
        impact_term = one(LF.hasImpact)
        try:
            impact = int(impact_term.lexical) if isinstance(impact_term, Literal) else -1
        except ValueError:
            impact = -1
        if not 1 <= impact <= 5:
            raise ShapeError(f"lf:hasImpact must be an integer in 1..5 on {primary.value}")
        target = one(LF.refersTo)
        if not isinstance(target, Iri):
            raise ShapeError(f"lf:refersTo must point at an IRI on {primary.value}")
        review = one(DCTERMS.isPartOf)
        if not isinstance(review, Iri):
            raise ShapeError(f"dcterms:isPartOf must point at the review IRI on {primary.value}")
        return ReviewComment(
            uri=primary,
            target=target,
            positivity=positivity[0],
            aspect=aspect[0],
            actionability=actionability[0],
            impact=impact,
            text=text_of(one(C4O.hasContent, required=False)),
            reviewer=_attributed_to(n),
            review=review,
        )

    if LF.Review in types:
        article = one(LF.isReviewOf)
        if not isinstance(article, Iri):
            raise ShapeError(f"lf:isReviewOf must point at an IRI on {primary.value}")
        comments = sorted(
            (q.object for q in quads if q.predicate == LF.hasComment and isinstance(q.object, Iri)),
            key=lambda c: c.value,
        )
        return ReviewContainer(primary, article, _attributed_to(n), tuple(comments))

    kinds = [CLASS_KIND[t] for t in types if t in CLASS_KIND]
    if len(kinds) != 1:
        raise ShapeError(f"element must carry exactly one structure class: {primary.value}")
    kind = kinds[0]
    parent = one(DCTERMS.isPartOf, required=(kind != "article"))
    if parent is not None and not isinstance(parent, Iri):
        raise ShapeError(f"dcterms:isPartOf must point at an IRI on {primary.value}")
    order = 0
    if kind != "article":
        order_term = one(LF.hasOrderIndex)
        try:
            order = int(order_term.lexical) if isinstance(order_term, Literal) else -1
        except ValueError:
            order = -1
        if order < 0:
            raise ShapeError(f"lf:hasOrderIndex must be a non-negative integer on {primary.value}")
    return DocElement(
        uri=primary,
        kind=kind,
        text=text_of(one(C4O.hasContent, required=False)),
        parent=parent,
        order_index=order,
    )


def link_edges(n: Nanopublication) -> list[LinkEdge]:
    """All refersTo/isResponseTo/isUpdateOf edges asserted by a nanopublication."""
    predicates = {LF.refersTo: "refersTo", LF.isResponseTo: "isResponseTo", LF.isUpdateOf: "isUpdateOf"}
    out = []
    for quad in n.assertion:
        kind = predicates.get(quad.predicate)
        if kind and isinstance(quad.subject, Iri) and isinstance(quad.object, Iri):
            out.append(LinkEdge(kind, quad.subject, quad.object))
    return out
