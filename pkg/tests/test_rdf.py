from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkflows.rdf import (
    BlankNode,
    Iri,
    Literal,
    ParseError,
    Quad,
    QuadSet,
    RdfError,
    XSD_INTEGER,
    canonical_nquads,
    parse_trig,
    rewrite_terms,
    to_trig,
)

from conftest import FIXTURES

EX = "http://example.org/"


def q(s: str, p: str, o, g: str) -> Quad:
    obj = o if not isinstance(o, str) else Iri(EX + o)
    return Quad(Iri(EX + s), Iri(EX + p), obj, Iri(EX + g))


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

def test_iri_requires_scheme_and_no_whitespace():
    Iri("urn:temp:x")
    with pytest.raises(ValueError):
        Iri("")
    with pytest.raises(ValueError):
        Iri("no-scheme-here")
    with pytest.raises(ValueError):
        Iri("http://ex.org/a b")


def test_langtag_normalized_and_datatype_coerced():
    lit = Literal("Hallo", langtag="DE")
    assert lit.langtag == "de"
    assert lit.datatype.value.endswith("langString")
    with pytest.raises(ValueError):
        Literal("x", XSD_INTEGER, langtag="en")


def test_blank_node_label_charset():
    BlankNode("b1")
    with pytest.raises(ValueError):
        BlankNode("b-1")


# ---------------------------------------------------------------------------
# parse_trig
# ---------------------------------------------------------------------------

def test_parse_four_graph_review_comment_document():
    quads = parse_trig((FIXTURES / "sample_review_comment.trig").read_text())
    graphs = {g.value for g in quads.graphs()}
    assert graphs == {
        "urn:temp:np1#Head",
        "urn:temp:np1#assertion",
        "urn:temp:np1#provenance",
        "urn:temp:np1#pubinfo",
    }
    assert len(quads) == 16


def test_parse_empty_document():
    assert len(parse_trig("")) == 0
    assert parse_trig("   # only a comment\n") == QuadSet()


def test_duplicate_triple_collapses():
    doc = f"<{EX}g> {{ <{EX}s> <{EX}p> <{EX}o> . <{EX}s> <{EX}p> <{EX}o> . }}"
    assert len(parse_trig(doc)) == 1


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_trig('<http://ex.org/g> {\n  <http://ex.org/s> "no predicate" .\n}')
    assert info.value.line == 2


def test_undefined_prefix():
    with pytest.raises(ParseError, match="undefined prefix"):
        parse_trig("ex:g { ex:s ex:p ex:o . }")


def test_relative_iri_without_base():
    with pytest.raises(ParseError, match="without a base"):
        parse_trig("<g> { <s> <p> <o> . }")
    quads = parse_trig("@base <http://ex.org/doc> .\n<#g> { <#s> <#p> <#o> . }")
    assert {g.value for g in quads.graphs()} == {"http://ex.org/doc#g"}


def test_default_graph_statements_rejected():
    with pytest.raises(ParseError, match="named graph"):
        parse_trig("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> .")
    with pytest.raises(ParseError, match="default-graph"):
        parse_trig("{ <http://ex.org/s> <http://ex.org/p> <http://ex.org/o> . }")


def test_parse_literals_numbers_and_booleans():
    doc = f"""
    @prefix ex: <{EX}> .
    ex:g {{
      ex:s ex:int 42 ; ex:dec 3.25 ; ex:dbl 1.0e3 ; ex:yes true ;
           ex:str "two\\nlines" ; ex:lang "hi"@EN-US .
    }}
    """
    quads = parse_trig(doc)
    objects = {q.predicate.value.split("/")[-1]: q.object for q in quads}
    assert objects["int"] == Literal("42", XSD_INTEGER)
    assert objects["dec"].datatype.value.endswith("decimal")
    assert objects["dbl"].datatype.value.endswith("double")
    assert objects["yes"].datatype.value.endswith("boolean")
    assert objects["str"].lexical == "two\nlines"
    assert objects["lang"].langtag == "en-us"


def test_parse_blank_nodes_and_collections():
    doc = f"""
    @prefix ex: <{EX}> .
    ex:g {{
      _:b1 ex:p [ ex:q "inner" ] .
      ex:s ex:list ( ex:a ex:b ) .
    }}
    """
    quads = parse_trig(doc)
    assert any(isinstance(q.subject, BlankNode) for q in quads)
    assert sum(1 for q in quads if q.predicate.value.endswith("#first")) == 2


def test_parse_nquads_line_with_graph():
    quads = parse_trig(f"<{EX}s> <{EX}p> \"x\" <{EX}g> .")
    assert len(quads) == 1


# ---------------------------------------------------------------------------
# canonical_nquads
# ---------------------------------------------------------------------------

def test_canonical_lines_sorted():
    # Oracle: independently hand-written N-Quads lines in sorted order.
    expected = (
        f'<{EX}a> <{EX}p> "v" <{EX}g> .\n'
        f"<{EX}b> <{EX}p> <{EX}a> <{EX}g> .\n"
    )
    quads = QuadSet.of([
        q("b", "p", "a", "g"),  # inserted in reverse lexical order
        Quad(Iri(EX + "a"), Iri(EX + "p"), Literal("v"), Iri(EX + "g")),
    ])
    assert canonical_nquads(quads) == expected


def test_canonical_empty():
    assert canonical_nquads(QuadSet()) == ""


def test_canonical_roundtrip_fixpoint():
    quads = QuadSet.of([q("s", "p", "o", "g"), q("s", "p2", "o2", "g2")])
    once = canonical_nquads(quads)
    assert canonical_nquads(parse_trig(once)) == once


def test_canonical_escapes_only_mandatory():
    lit = Literal('say "hi"\\\n\t\r')
    quads = QuadSet.of([Quad(Iri(EX + "s"), Iri(EX + "p"), lit, Iri(EX + "g"))])
    line = canonical_nquads(quads)
    assert '"say \\"hi\\"\\\\\\n\\t\\r"' in line
    # non-ASCII stays raw
    quads = QuadSet.of([Quad(Iri(EX + "s"), Iri(EX + "p"), Literal("café"), Iri(EX + "g"))])
    assert "café" in canonical_nquads(quads)


# ---------------------------------------------------------------------------
# rewrite_terms
# ---------------------------------------------------------------------------

def test_rewrite_direct_substitution():
    quads = QuadSet.of([
        Quad(Iri("urn:temp:np1#assertion"), Iri(EX + "p"), Iri("urn:temp:np1"), Iri("urn:temp:np1#Head"))
    ])
    out = rewrite_terms(quads, {"urn:temp:np1": "https://ex.org/RAxyz"})
    values = {t.value for quad in out for t in (quad.subject, quad.object, quad.graph)}
    assert values == {"https://ex.org/RAxyz#assertion", "https://ex.org/RAxyz", "https://ex.org/RAxyz#Head"}


def test_rewrite_identity_and_noop():
    quads = QuadSet.of([q("s", "p", "o", "g")])
    assert rewrite_terms(quads, {}) == quads
    assert rewrite_terms(quads, {"urn:absent:": "urn:other:"}) == quads


def test_rewrite_ambiguous_map_rejected():
    quads = QuadSet.of([q("s", "p", "o", "g")])
    with pytest.raises(RdfError, match="prefix of"):
        rewrite_terms(quads, {"urn:a": "urn:x", "urn:a:b": "urn:y"})


def test_rewrite_literals_untouched():
    lit = Literal("urn:temp:np1")
    quads = QuadSet.of([Quad(Iri(EX + "s"), Iri(EX + "p"), lit, Iri(EX + "g"))])
    out = rewrite_terms(quads, {"urn:temp:np1": "https://ex.org/x"})
    assert next(iter(out)).object == lit


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

_iris = st.builds(
    lambda tail: Iri(EX + tail),
    st.text(alphabet="abcdefgh0123456789/#", min_size=1, max_size=10),
)
_bnodes = st.builds(BlankNode, st.from_regex(r"[A-Za-z0-9]{1,6}", fullmatch=True))
_plain = st.builds(Literal, st.text(max_size=20))
_typed = st.builds(lambda s: Literal(s, XSD_INTEGER), st.from_regex(r"-?[0-9]{1,6}", fullmatch=True))
_tagged = st.builds(
    lambda s, tag: Literal(s, langtag=tag),
    st.text(max_size=10),
    st.sampled_from(["en", "en-US", "de"]),
)
_quads = st.builds(
    Quad,
    subject=st.one_of(_iris, _bnodes),
    predicate=_iris,
    object=st.one_of(_iris, _bnodes, _plain, _typed, _tagged),
    graph=_iris,
)
_quadsets = st.lists(_quads, max_size=12).map(QuadSet.of)


@settings(max_examples=150, deadline=None)
@given(_quadsets)
def test_parse_serialize_roundtrip(quads):
    assert parse_trig(canonical_nquads(quads)) == quads


@settings(max_examples=100, deadline=None)
@given(_quadsets)
def test_trig_writer_roundtrip(quads):
    assert parse_trig(to_trig(quads)) == quads


@settings(max_examples=100, deadline=None)
@given(st.lists(_quads, max_size=10), st.randoms())
def test_canonical_insensitive_to_insertion_order(quads, rng):
    shuffled = list(quads)
    rng.shuffle(shuffled)
    assert canonical_nquads(QuadSet.of(shuffled)) == canonical_nquads(QuadSet.of(quads))


@settings(max_examples=100, deadline=None)
@given(_quadsets)
def test_rewrite_invertible(quads):
    forward = rewrite_terms(quads, {EX: "https://other.example/ns/"})
    back = rewrite_terms(forward, {"https://other.example/ns/": EX})
    assert back == quads
