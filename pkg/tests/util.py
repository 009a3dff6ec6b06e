"""Hand-built miniature corpora for forced-scenario tests."""

from __future__ import annotations

from dataclasses import replace

from linkflows.model import DocElement, ReviewComment, ReviewContainer, to_nanopub
from linkflows.nanopub import PubMeta
from linkflows.rdf import Iri
from linkflows.store import QuadStore

META = PubMeta(Iri("https://orcid.org/0000-0002-9999-0001"), "2021-07-12T09:00:00Z")
REVIEWER = Iri("https://orcid.org/0000-0003-9999-0001")


def handmade_store(
    paragraphs: int = 2,
    comment_targets: list[str] | None = None,
    comment_dims: list[dict] | None = None,
) -> tuple[QuadStore, dict[str, Iri]]:
    """One article with one section and `paragraphs` paragraphs, plus one
    review whose comments hit the given targets ("article", "section", or
    "p<i>"). Returns the loaded store and a name->URI map.
    """
    nanopubs = []
    names: dict[str, Iri] = {}

    def publish(value, creator=META.creator):
        np = to_nanopub(value, replace(META, creator=creator))
        nanopubs.append(np)
        return np

    article = DocElement(Iri("urn:draft:x/article"), "article", text="Handmade article")
    np = publish(article)
    names["article"] = Iri(np.uri.value + "#article")

    section = DocElement(Iri("urn:draft:x/s"), "section", parent=names["article"])
    np = publish(section)
    names["section"] = Iri(np.uri.value + "#section")

    for i in range(paragraphs):
        paragraph = DocElement(
            Iri(f"urn:draft:x/p{i}"), "paragraph", text=f"P{i}", parent=names["section"], order_index=i
        )
        np = publish(paragraph)
        names[f"p{i}"] = Iri(np.uri.value + "#paragraph")

    review_uri = Iri("https://journal.example.org/handmade/review/1")
    comment_uris = []
    for i, target in enumerate(comment_targets or []):
        dims = (comment_dims or [{}] * len(comment_targets))[i]
        comment = ReviewComment(
            uri=Iri(f"urn:draft:x/c{i}"),
            target=names[target],
            positivity=dims.get("positivity", "negative"),
            aspect=dims.get("aspect", "content"),
            actionability=dims.get("actionability", "suggestion"),
            impact=dims.get("impact", 3),
            text=f"Comment {i} on {target}",
            reviewer=REVIEWER,
            review=review_uri,
        )
        np = publish(comment, creator=REVIEWER)
        comment_uris.append(Iri(np.uri.value + "#comment"))

    if comment_targets is not None:
        container = ReviewContainer(review_uri, names["article"], REVIEWER, tuple(sorted(comment_uris)))
        publish(container, creator=REVIEWER)

    return QuadStore.load(nanopubs), names
