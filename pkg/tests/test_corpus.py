from __future__ import annotations

from collections import Counter

import pytest

from linkflows.corpus import (
    ArticleLayout,
    Corpus,
    CorpusError,
    CorpusSpec,
    DEFAULT_ARTICLES,
    build_article,
    generate_corpus,
)
from linkflows.model import resolve_target
from linkflows.nanopub import verify_trusty
from linkflows.rdf import Iri


def test_default_layouts_reproduce_dataset_counts():
    elements = []
    for i, layout in enumerate(DEFAULT_ARTICLES):
        elements += build_article(layout, base=f"urn:draft:a{i}/")
    kinds = Counter(e.kind for e in elements)
    assert kinds == {
        "article": 3, "section": 89, "paragraph": 279,
        "figure": 11, "table": 10, "formula": 8, "footnote": 2,
    }


def test_build_article_minimal():
    elements = build_article(ArticleLayout("T", sections=1, top_sections=1, paragraphs=0))
    assert [e.kind for e in elements] == ["article", "section"]
    assert elements[1].parent == elements[0].uri


def test_build_article_deterministic():
    layout = DEFAULT_ARTICLES[0]
    assert build_article(layout) == build_article(layout)


def test_build_article_order_indexes_contiguous():
    elements = build_article(DEFAULT_ARTICLES[0])
    by_parent: dict[Iri, list[int]] = {}
    for e in elements:
        if e.parent is not None:
            by_parent.setdefault(e.parent, []).append(e.order_index)
    for orders in by_parent.values():
        assert sorted(orders) == list(range(len(orders)))


def test_layout_rejects_snippets_without_sections():
    with pytest.raises(ValueError, match="without sections"):
        ArticleLayout("T", sections=0, top_sections=0, paragraphs=3)


def test_default_corpus_totals(corpus42: Corpus):
    assert len(corpus42.nanopubs) == 627
    assert sum(len(np.quads) for np in corpus42.nanopubs) == 10437
    assert len(corpus42.elements) == 402
    assert len(corpus42.comments) == 213
    assert len(corpus42.containers) == 9
    assert len(corpus42.index_uris) == 3
    assert all(verify_trusty(np) for np in corpus42.nanopubs)


def test_per_reviewer_comment_counts(corpus42: Corpus):
    per_review = Counter(c.review for c in corpus42.comments)
    expected = [(17, 18, 50), (16, 21, 22), (11, 42, 16)]
    for article, counts in zip(corpus42.article_uris, expected):
        containers = sorted(
            (c for c in corpus42.containers if c.article == article),
            key=lambda c: c.reviewer.value,
        )
        assert tuple(per_review[c.uri] for c in containers) == counts


def test_seed_determinism_and_sensitivity(corpus42: Corpus):
    again = generate_corpus(CorpusSpec(seed=42))
    assert [np.canonical() for np in again.nanopubs] == [np.canonical() for np in corpus42.nanopubs]

    other = generate_corpus(CorpusSpec(seed=7))
    assert len(other.nanopubs) == 627
    assert sum(len(np.quads) for np in other.nanopubs) == 10437
    assert Counter(e.kind for e in other.elements) == Counter(e.kind for e in corpus42.elements)
    assert [np.canonical() for np in other.nanopubs] != [np.canonical() for np in corpus42.nanopubs]
    # dimension draws actually differ
    assert [c.positivity for c in other.comments] != [c.positivity for c in corpus42.comments]


def test_every_refers_to_resolves(corpus42: Corpus):
    elements = corpus42.element_index()
    for comment in corpus42.comments:
        resolve_target(comment, elements)  # raises on dangling targets


def test_unreachable_triple_target_errors():
    with pytest.raises(CorpusError, match="short by"):
        generate_corpus(CorpusSpec(seed=1, assertion_total=100))


def test_custom_spec_without_padding():
    spec = CorpusSpec(
        seed=3,
        articles=(ArticleLayout("Solo", sections=2, top_sections=1, paragraphs=3),),
        reviews=((2,),),
        assertion_total=None,
    )
    corpus = generate_corpus(spec)
    # 6 elements + 2 comments + 1 container + 3 indexes
    assert len(corpus.nanopubs) == 12
    assert all(verify_trusty(np) for np in corpus.nanopubs)


def test_codec_roundtrip_holds_for_every_generated_value():
    # The store's domain index is from_nanopub over every nanopublication;
    # equality with the generator's ground truth is corpus-wide codec losslessness.
    from linkflows.store import QuadStore

    for seed in (5, 42):
        corpus = generate_corpus(CorpusSpec(seed=seed))
        store = QuadStore.load(corpus.nanopubs)
        assert {e.uri: e for e in corpus.elements} == store.elements
        assert {c.uri: c for c in corpus.comments} == store.comments
        assert {r.uri: r for r in corpus.containers} == store.containers


def test_artifact_codes_distinct_across_corpus(corpus42: Corpus):
    from linkflows.nanopub import trusty_artifact

    codes = [trusty_artifact(np).code for np in corpus42.nanopubs]
    assert len(set(codes)) == len(codes)
