"""In-memory quad store over verified nanopublications.

Loading verifies every nanopublication, indexes the quads (by graph, by
subject, by predicate-object), and materializes the typed domain views:
elements, review comments, review containers, link edges, and indexes. The
store is immutable after load; readers can share it freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .model import (
    DocElement,
    LinkEdge,
    ReviewComment,
    ReviewContainer,
    ShapeError,
    from_nanopub,
    link_edges,
)
from .nanopub import (
    Nanopublication,
    NanopubIndex,
    discover_nanopubs,
    is_index,
    parse_index,
    verify_trusty,
)
from .rdf import Iri, Quad, Term, parse_trig


class StoreError(Exception):
    """Raised when nanopublications cannot be loaded into a store."""


class UnknownArticleError(KeyError):
    def __init__(self, article: Iri):
        super().__init__(article.value)
        self.article = article


@dataclass(frozen=True)
class CorpusStats:
    """The descriptive tabulation of a loaded corpus."""

    nanopubs: int
    articles: int
    sections: int
    paragraphs: int
    figures: int
    tables: int
    formulas: int
    footnotes: int
    review_comments: int
    reviews: int
    indexes: int
    head_triples: int
    assertion_triples: int
    provenance_triples: int
    pubinfo_triples: int

    @property
    def total_triples(self) -> int:
        return (
            self.head_triples
            + self.assertion_triples
            + self.provenance_triples
            + self.pubinfo_triples
        )

    def to_json_dict(self) -> dict:
        return {
            "nanopubs": self.nanopubs,
            "elements": {
                "articles": self.articles,
                "sections": self.sections,
                "paragraphs": self.paragraphs,
                "figures": self.figures,
                "tables": self.tables,
                "formulas": self.formulas,
                "footnotes": self.footnotes,
            },
            "review_comments": self.review_comments,
            "reviews": self.reviews,
            "indexes": self.indexes,
            "triples": {
                "head": self.head_triples,
                "assertion": self.assertion_triples,
                "provenance": self.provenance_triples,
                "pubinfo": self.pubinfo_triples,
                "total": self.total_triples,
            },
        }

    def to_table(self) -> str:
        def avg(n: int) -> str:
            return f"{n / self.nanopubs:.2f}" if self.nanopubs else "-"

        rows = [
            ("articles", str(self.articles), ""),
            ("sections", str(self.sections), ""),
            ("paragraphs", str(self.paragraphs), ""),
            ("figures", str(self.figures), ""),
            ("tables", str(self.tables), ""),
            ("formula", str(self.formulas), ""),
            ("footnote", str(self.footnotes), ""),
            ("review comments", str(self.review_comments), ""),
            ("reviews", str(self.reviews), ""),
            ("indexes", str(self.indexes), ""),
            ("nanopublications", str(self.nanopubs), ""),
            ("head triples", str(self.head_triples), avg(self.head_triples)),
            ("assertion triples", str(self.assertion_triples), avg(self.assertion_triples)),
            ("provenance triples", str(self.provenance_triples), avg(self.provenance_triples)),
            ("pubinfo triples", str(self.pubinfo_triples), avg(self.pubinfo_triples)),
            ("total triples", str(self.total_triples), avg(self.total_triples)),
        ]
        return format_table(["part", "number", "average"], [list(r) for r in rows])


def format_table(headers: list[str], rows: list[list[str]]) -> str:
    """Aligned-column text table."""
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


class QuadStore:
    """Immutable store; construct via QuadStore.load / QuadStore.load_path."""

    def __init__(self) -> None:
        self.nanopubs: dict[Iri, Nanopublication] = {}
        self.by_graph: dict[Iri, list[Quad]] = {}
        self.by_subject: dict[Term, list[Quad]] = {}
        self.by_pred_obj: dict[tuple[Iri, Term], list[Quad]] = {}
        self.elements: dict[Iri, DocElement] = {}
        self.comments: dict[Iri, ReviewComment] = {}
        self.containers: dict[Iri, ReviewContainer] = {}
        self.indexes: dict[Iri, NanopubIndex] = {}
        self.edges: tuple[LinkEdge, ...] = ()
        self.others: tuple[Iri, ...] = ()
        self.articles: tuple[Iri, ...] = ()
        self._children: dict[Iri, list[DocElement]] = {}

    # --- construction ---------------------------------------------------

    @classmethod
    def load(cls, nanopubs: Iterable[Nanopublication]) -> "QuadStore":
        store = cls()
        edges: list[LinkEdge] = []
        others: list[Iri] = []
        for np in nanopubs:
            if not verify_trusty(np):
                raise StoreError(f"nanopublication fails verification: {np.uri.value}")
            if np.uri in store.nanopubs:
                raise StoreError(f"duplicate nanopublication URI: {np.uri.value}")
            store.nanopubs[np.uri] = np
            for quad in np.quads:
                store.by_graph.setdefault(quad.graph, []).append(quad)
                store.by_subject.setdefault(quad.subject, []).append(quad)
                store.by_pred_obj.setdefault((quad.predicate, quad.object), []).append(quad)
            if is_index(np):
                store.indexes[np.uri] = parse_index(np)
                continue
            edges.extend(link_edges(np))
            try:
                value = from_nanopub(np)
            except ShapeError:
                others.append(np.uri)
                continue
            if isinstance(value, DocElement):
                store.elements[value.uri] = value
            elif isinstance(value, ReviewComment):
                store.comments[value.uri] = value
            else:
                store.containers[value.uri] = value

        store.edges = tuple(edges)
        store.others = tuple(others)
        for element in store.elements.values():
            if element.parent is not None:
                store._children.setdefault(element.parent, []).append(element)
        for children in store._children.values():
            children.sort(key=lambda e: (e.order_index, e.uri.value))
        store.articles = tuple(
            sorted(
                (e.uri for e in store.elements.values() if e.kind == "article"),
                key=lambda uri: (store.elements[uri].text, uri.value),
            )
        )
        return store

    @classmethod
    def load_path(cls, path: str | Path) -> "QuadStore":
        """Load .trig files from a directory, or one (possibly concatenated) file."""
        path = Path(path)
        if path.is_dir():
            files = sorted(path.glob("*.trig")) + sorted(path.glob("*.nq"))
            if not files:
                raise StoreError(f"no .trig or .nq files in {path}")
        elif path.is_file():
            files = [path]
        else:
            raise StoreError(f"no such corpus path: {path}")
        nanopubs: list[Nanopublication] = []
        for file in files:
            nanopubs.extend(discover_nanopubs(parse_trig(file.read_text(encoding="utf-8"))))
        return cls.load(nanopubs)

    # --- navigation -------------------------------------------------------

    def require_article(self, article: Iri) -> DocElement:
        element = self.elements.get(article)
        if element is None or element.kind != "article":
            raise UnknownArticleError(article)
        return element

    def children_of(self, parent: Iri) -> list[DocElement]:
        return list(self._children.get(parent, []))

    def article_elements(self, article: Iri) -> list[DocElement]:
        """Every element in the article's tree, parents before children."""
        root = self.require_article(article)
        out = [root]
        queue = [root.uri]
        while queue:
            node = queue.pop(0)
            for child in self._children.get(node, []):
                out.append(child)
                queue.append(child.uri)
        return out

    def top_sections(self, article: Iri) -> list[DocElement]:
        self.require_article(article)
        return [e for e in self._children.get(article, []) if e.kind == "section"]

    def top_section_of(self, element: DocElement) -> Iri | None:
        """The top-level section an element (or nested section) lives under."""
        current = element
        while current.parent is not None:
            parent = self.elements.get(current.parent)
            if parent is None:
                return None
            if parent.kind == "article":
                return current.uri if current.kind == "section" else None
            current = parent
        return None

    def article_containers(self, article: Iri) -> list[ReviewContainer]:
        self.require_article(article)
        found = [c for c in self.containers.values() if c.article == article]
        found.sort(key=lambda c: (c.reviewer.value, c.uri.value))
        return found

    def article_comments(self, article: Iri) -> list[ReviewComment]:
        out: list[ReviewComment] = []
        for container in self.article_containers(article):
            for uri in container.comments:
                comment = self.comments.get(uri)
                if comment is None:
                    raise StoreError(f"review {container.uri.value} lists unknown comment {uri.value}")
                out.append(comment)
        return out

    # --- statistics -------------------------------------------------------

    def stats(self) -> CorpusStats:
        kind_counts = {k: 0 for k in ("article", "section", "paragraph", "figure", "table", "formula", "footnote")}
        for element in self.elements.values():
            kind_counts[element.kind] += 1
        head = assertion = provenance = pubinfo = 0
        for np in self.nanopubs.values():
            head += len(np.quads.graph(np.head_graph))
            assertion += len(np.assertion)
            provenance += len(np.quads.graph(np.provenance_graph))
            pubinfo += len(np.quads.graph(np.pubinfo_graph))
        return CorpusStats(
            nanopubs=len(self.nanopubs),
            articles=kind_counts["article"],
            sections=kind_counts["section"],
            paragraphs=kind_counts["paragraph"],
            figures=kind_counts["figure"],
            tables=kind_counts["table"],
            formulas=kind_counts["formula"],
            footnotes=kind_counts["footnote"],
            review_comments=len(self.comments),
            reviews=len(self.containers),
            indexes=len(self.indexes),
            head_triples=head,
            assertion_triples=assertion,
            provenance_triples=provenance,
            pubinfo_triples=pubinfo,
        )
