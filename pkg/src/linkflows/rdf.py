"""Minimal RDF term/quad model with a TriG reader and deterministic writers.

The reader accepts a pragmatic superset of TriG: prefix/base directives,
named graph blocks (optionally introduced by ``GRAPH``), Turtle-style
predicate/object lists inside blocks, and line-oriented N-Quads statements
(``s p o g .``) at the top level, so canonical N-Quads output parses back
with the same reader. Quads outside a named graph are rejected: every quad
in this model belongs to a named graph.

The canonical N-Quads writer is the substrate for content hashing: one line
per quad, lines sorted by Unicode code point, mandatory escapes only, and
non-ASCII characters emitted as raw UTF-8.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping
from urllib.parse import urljoin


class RdfError(Exception):
    """Base class for errors raised by this module."""


class ParseError(RdfError):
    """Syntax or resolution failure, carrying the offending position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_WS_RE = re.compile(r"\s")
_BNODE_LABEL_RE = re.compile(r"^[A-Za-z0-9]+$")
_LANGTAG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")


@dataclass(frozen=True, slots=True, order=True)
class Iri:
    """An absolute IRI. Orders by code point of its value."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if _WS_RE.search(self.value):
            raise ValueError(f"IRI contains whitespace: {self.value!r}")
        if not _SCHEME_RE.match(self.value):
            raise ValueError(f"IRI lacks a scheme: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __post_init__(self) -> None:
        if not _BNODE_LABEL_RE.match(self.label):
            raise ValueError(f"blank node label must match [A-Za-z0-9]+: {self.label!r}")

    def __str__(self) -> str:
        return f"_:{self.label}"


XSD_STRING = Iri("http://www.w3.org/2001/XMLSchema#string")
XSD_INTEGER = Iri("http://www.w3.org/2001/XMLSchema#integer")
XSD_DECIMAL = Iri("http://www.w3.org/2001/XMLSchema#decimal")
XSD_DOUBLE = Iri("http://www.w3.org/2001/XMLSchema#double")
XSD_BOOLEAN = Iri("http://www.w3.org/2001/XMLSchema#boolean")
XSD_DATETIME = Iri("http://www.w3.org/2001/XMLSchema#dateTime")
RDF_LANG_STRING = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#langString")
RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
RDF_FIRST = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#first")
RDF_REST = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#rest")
RDF_NIL = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#nil")


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal; language tags are normalized to lowercase."""

    lexical: str
    datatype: Iri = XSD_STRING
    langtag: str | None = None

    def __post_init__(self) -> None:
        if self.langtag is not None:
            if not _LANGTAG_RE.match(self.langtag):
                raise ValueError(f"malformed language tag: {self.langtag!r}")
            object.__setattr__(self, "langtag", self.langtag.lower())
            if self.datatype == XSD_STRING:
                object.__setattr__(self, "datatype", RDF_LANG_STRING)
            elif self.datatype != RDF_LANG_STRING:
                raise ValueError("language-tagged literal must have datatype rdf:langString")
        elif self.datatype == RDF_LANG_STRING:
            raise ValueError("rdf:langString literal requires a language tag")


Term = Iri | BlankNode | Literal


@dataclass(frozen=True, slots=True)
class Quad:
    subject: Iri | BlankNode
    predicate: Iri
    object: Term
    graph: Iri

    def __post_init__(self) -> None:
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise ValueError(f"quad subject must be an IRI or blank node: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise ValueError(f"quad predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise ValueError(f"quad object must be a term: {self.object!r}")
        if not isinstance(self.graph, Iri):
            raise ValueError(f"quad graph must be a named graph IRI: {self.graph!r}")


@dataclass(frozen=True)
class QuadSet:
    """An immutable set of quads plus prefix hints for serialization.

    Prefixes never participate in equality: two QuadSets are equal exactly
    when they hold the same quads.
    """

    quads: frozenset[Quad] = frozenset()
    prefixes: Mapping[str, str] = field(default_factory=dict, compare=False)

    @classmethod
    def of(cls, quads: Iterable[Quad], prefixes: Mapping[str, str] | None = None) -> "QuadSet":
        return cls(frozenset(quads), dict(prefixes or {}))

    def __iter__(self) -> Iterator[Quad]:
        return iter(self.quads)

    def __len__(self) -> int:
        return len(self.quads)

    def __contains__(self, quad: object) -> bool:
        return quad in self.quads

    def graph(self, graph: Iri) -> tuple[Quad, ...]:
        """All quads in one named graph, in canonical line order."""
        return tuple(sorted((q for q in self.quads if q.graph == graph), key=_quad_sort_key))

    def graphs(self) -> tuple[Iri, ...]:
        return tuple(sorted({q.graph for q in self.quads}, key=lambda g: g.value))

    def union(self, other: Iterable[Quad]) -> "QuadSet":
        return QuadSet(self.quads | frozenset(other), dict(self.prefixes))

    def with_prefixes(self, prefixes: Mapping[str, str]) -> "QuadSet":
        merged = dict(self.prefixes)
        merged.update(prefixes)
        return QuadSet(self.quads, merged)


# ---------------------------------------------------------------------------
# N-Quads canonical writer
# ---------------------------------------------------------------------------

def _escape(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def nq_term(term: Term) -> str:
    """Serialize one term in N-Quads syntax."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = f'"{_escape(term.lexical)}"'
        if term.langtag is not None:
            return f"{body}@{term.langtag}"
        if term.datatype == XSD_STRING:
            return body
        return f"{body}^^<{term.datatype.value}>"
    raise TypeError(f"not an RDF term: {term!r}")


def nq_line(quad: Quad) -> str:
    return (
        f"{nq_term(quad.subject)} {nq_term(quad.predicate)} "
        f"{nq_term(quad.object)} {nq_term(quad.graph)} .\n"
    )


def _quad_sort_key(quad: Quad) -> str:
    return nq_line(quad)


def canonical_nquads(quadset: QuadSet) -> str:
    """One sorted N-Quads line per quad; identical for equal QuadSets."""
    return "".join(sorted(nq_line(q) for q in quadset.quads))


# ---------------------------------------------------------------------------
# TriG writer
# ---------------------------------------------------------------------------

_LOCAL_SAFE_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")


def _compress(iri: Iri, prefixes: Mapping[str, str]) -> str | None:
    best: tuple[str, str] | None = None
    for prefix, base in prefixes.items():
        if iri.value.startswith(base) and (best is None or len(base) > len(best[1])):
            local = iri.value[len(base):]
            if local == "" or _LOCAL_SAFE_RE.match(local):
                best = (prefix, base)
    if best is None:
        return None
    return f"{best[0]}:{iri.value[len(best[1]):]}"


def _trig_term(term: Term, prefixes: Mapping[str, str]) -> str:
    if isinstance(term, Iri):
        compressed = _compress(term, prefixes)
        if compressed is not None:
            return compressed
        return f"<{term.value}>"
    if isinstance(term, Literal):
        body = f'"{_escape(term.lexical)}"'
        if term.langtag is not None:
            return f"{body}@{term.langtag}"
        if term.datatype == XSD_STRING:
            return body
        dt = _compress(term.datatype, prefixes)
        return f"{body}^^{dt}" if dt else f"{body}^^<{term.datatype.value}>"
    return nq_term(term)


def to_trig(
    quadset: QuadSet,
    graph_order: Iterable[Iri] | None = None,
    extra_prefixes: Mapping[str, str] | None = None,
) -> str:
    """Pretty, prefixed TriG. Only used for file output, never for hashing."""
    prefixes = dict(quadset.prefixes)
    if extra_prefixes:
        prefixes.update(extra_prefixes)
    used = {p: b for p, b in prefixes.items() if _any_iri_uses(quadset, b)}

    out: list[str] = []
    for prefix in sorted(used):
        out.append(f"@prefix {prefix}: <{used[prefix]}> .\n")
    if used:
        out.append("\n")

    ordered: list[Iri] = []
    seen: set[Iri] = set()
    for g in graph_order or ():
        if g not in seen and any(q.graph == g for q in quadset.quads):
            ordered.append(g)
            seen.add(g)
    for g in quadset.graphs():
        if g not in seen:
            ordered.append(g)
            seen.add(g)

    for g in ordered:
        out.append(f"{_trig_term(g, used)} {{\n")
        for quad in quadset.graph(g):
            s = _trig_term(quad.subject, used)
            p = "a" if quad.predicate == RDF_TYPE else _trig_term(quad.predicate, used)
            o = _trig_term(quad.object, used)
            out.append(f"  {s} {p} {o} .\n")
        out.append("}\n")
    return "".join(out)


def _any_iri_uses(quadset: QuadSet, base: str) -> bool:
    for q in quadset.quads:
        for term in (q.subject, q.predicate, q.object, q.graph):
            if isinstance(term, Iri) and term.value.startswith(base):
                return True
            if isinstance(term, Literal) and term.datatype.value.startswith(base):
                return True
    return False


# ---------------------------------------------------------------------------
# Prefix rewriting (the IRI substitution step of content hashing)
# ---------------------------------------------------------------------------

def rewrite_terms(quadset: QuadSet, mapping: Mapping[str, str]) -> QuadSet:
    """Replace IRI prefixes in every quad position. Literals are untouched.

    Raises RdfError if one mapping key is a prefix of another (the
    substitution would be order-dependent).
    """
    keys = sorted(mapping)
    for i, key in enumerate(keys):
        for other in keys[i + 1:]:
            if other.startswith(key):
                raise RdfError(f"ambiguous rewrite map: {key!r} is a prefix of {other!r}")

    def map_iri(iri: Iri) -> Iri:
        for key in keys:
            if iri.value.startswith(key):
                return Iri(mapping[key] + iri.value[len(key):])
        return iri

    def map_term(term: Term) -> Term:
        return map_iri(term) if isinstance(term, Iri) else term

    quads = frozenset(
        Quad(map_term(q.subject), map_iri(q.predicate), map_term(q.object), map_iri(q.graph))  # type: ignore[arg-type]
        for q in quadset.quads
    )
    prefixes = {p: map_iri(Iri(b)).value if _SCHEME_RE.match(b) else b for p, b in quadset.prefixes.items()}
    return QuadSet(quads, prefixes)


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_PUNCT = set("{}.;,()[]")
_ESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}


@dataclass(slots=True)
class _Token:
    kind: str  # IRIREF PNAME BNODE ANON STRING LANGTAG DTYPE NUMBER NAME PUNCT DIRECTIVE EOF
    value: str
    line: int
    column: int
    extra: str = ""  # NUMBER: integer|decimal|double


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _advance(self, n: int = 1) -> str:
        chunk = self.text[self.pos:self.pos + n]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def tokens(self) -> list[_Token]:
        out: list[_Token] = []
        while True:
            tok = self._next_token()
            out.append(tok)
            if tok.kind == "EOF":
                return out

    def _skip_ws(self) -> None:
        while self.pos < len(self.text):
            ch = self._peek()
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            else:
                return

    def _next_token(self) -> _Token:
        self._skip_ws()
        line, col = self.line, self.col
        if self.pos >= len(self.text):
            return _Token("EOF", "", line, col)
        ch = self._peek()

        if ch == "<":
            return self._iriref(line, col)
        if ch in "\"'":
            return self._string(line, col)
        if ch == "@":
            self._advance()
            word = self._take_while(lambda c: c.isalpha() or c == "-")
            if word in ("prefix", "base"):
                return _Token("DIRECTIVE", word, line, col)
            if not _LANGTAG_RE.match(word):
                raise ParseError(f"malformed language tag @{word}", line, col)
            return _Token("LANGTAG", word.lower(), line, col)
        if ch == "^" and self._peek(1) == "^":
            self._advance(2)
            return _Token("DTYPE", "^^", line, col)
        if ch == "_" and self._peek(1) == ":":
            self._advance(2)
            label = self._take_while(lambda c: c.isalnum())
            if not label:
                raise ParseError("empty blank node label", line, col)
            return _Token("BNODE", label, line, col)
        if ch in _PUNCT:
            # '[' directly followed by ']' is an anonymous blank node
            if ch == "[":
                save = self.pos
                self._advance()
                self._skip_ws()
                if self._peek() == "]":
                    self._advance()
                    return _Token("ANON", "[]", line, col)
                self.pos = save  # plain '[' token; position restore is index-only
                self.line, self.col = line, col
            self._advance()
            return _Token("PUNCT", ch, line, col)
        if ch.isdigit() or (ch in "+-" and (self._peek(1).isdigit() or self._peek(1) == ".")) or (
            ch == "." and self._peek(1).isdigit()
        ):
            return self._number(line, col)
        if ch.isalpha() or ch == ":":
            return self._pname_or_name(line, col)
        raise ParseError(f"unexpected character {ch!r}", line, col)

    def _take_while(self, pred) -> str:
        start = self.pos
        while self.pos < len(self.text) and pred(self.text[self.pos]):
            self._advance()
        return self.text[start:self.pos]

    def _iriref(self, line: int, col: int) -> _Token:
        self._advance()  # <
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise ParseError("unterminated IRI", line, col)
            ch = self._advance()
            if ch == ">":
                return _Token("IRIREF", "".join(out), line, col)
            if ch in " \t\n\r":
                raise ParseError("whitespace inside IRI", line, col)
            if ch == "\\":
                esc = self._advance()
                if esc == "u":
                    out.append(chr(int(self._advance(4), 16)))
                elif esc == "U":
                    out.append(chr(int(self._advance(8), 16)))
                else:
                    raise ParseError(f"invalid IRI escape \\{esc}", self.line, self.col)
            else:
                out.append(ch)

    def _string(self, line: int, col: int) -> _Token:
        quote = self._peek()
        if self.text.startswith(quote * 3, self.pos):
            self._advance(3)
            return self._string_body(quote * 3, line, col)
        self._advance()
        return self._string_body(quote, line, col)

    def _string_body(self, closer: str, line: int, col: int) -> _Token:
        long = len(closer) == 3
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise ParseError("unterminated string", line, col)
            if self.text.startswith(closer, self.pos):
                self._advance(len(closer))
                return _Token("STRING", "".join(out), line, col)
            ch = self._advance()
            if ch == "\\":
                esc = self._advance()
                if esc == "u":
                    out.append(chr(int(self._advance(4), 16)))
                elif esc == "U":
                    out.append(chr(int(self._advance(8), 16)))
                elif esc in _ESCAPES:
                    out.append(_ESCAPES[esc])
                else:
                    raise ParseError(f"invalid string escape \\{esc}", self.line, self.col)
            elif not long and ch in "\n\r":
                raise ParseError("newline in single-quoted string", line, col)
            else:
                out.append(ch)

    def _number(self, line: int, col: int) -> _Token:
        start = self.pos
        if self._peek() in "+-":
            self._advance()
        self._take_while(str.isdigit)
        kind = "integer"
        if self._peek() == "." and self._peek(1).isdigit():
            self._advance()
            self._take_while(str.isdigit)
            kind = "decimal"
        if self._peek() in "eE":
            self._advance()
            if self._peek() in "+-":
                self._advance()
            digits = self._take_while(str.isdigit)
            if not digits:
                raise ParseError("malformed double literal", line, col)
            kind = "double"
        return _Token("NUMBER", self.text[start:self.pos], line, col, kind)

    def _pname_or_name(self, line: int, col: int) -> _Token:
        def is_prefix_char(c: str) -> bool:
            return c.isalnum() or c in "_-"

        prefix = "" if self._peek() == ":" else self._take_while(is_prefix_char)
        if self._peek() != ":":
            return _Token("NAME", prefix, line, col)
        self._advance()  # consume ':'

        out: list[str] = []
        while self.pos < len(self.text):
            c = self._peek()
            if c.isalnum() or c in "_-:%":
                out.append(self._advance())
            elif c == "." and (self._peek(1).isalnum() or self._peek(1) in "_-:%."):
                out.append(self._advance())
            else:
                break
        return _Token("PNAME", f"{prefix}:{''.join(out)}", line, col)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0
        self.prefixes: dict[str, str] = {}
        self.base: str | None = None
        self.quads: list[Quad] = []
        self._anon = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def next(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def err(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect_punct(self, char: str) -> _Token:
        tok = self.next()
        if tok.kind != "PUNCT" or tok.value != char:
            raise self.err(f"expected '{char}', found {tok.value!r}", tok)
        return tok

    # --- document -----------------------------------------------------

    def parse_document(self) -> QuadSet:
        while True:
            tok = self.peek()
            if tok.kind == "EOF":
                break
            if tok.kind == "DIRECTIVE":
                self._directive()
            elif tok.kind == "NAME" and tok.value in ("PREFIX", "BASE", "prefix", "base"):
                self._sparql_directive()
            elif tok.kind == "NAME" and tok.value == "GRAPH":
                self.next()
                graph = self._graph_label()
                self._graph_block(graph)
            elif tok.kind == "PUNCT" and tok.value == "{":
                raise self.err("default-graph blocks are not supported; label the graph")
            else:
                self._labeled_block_or_statement()
        return QuadSet(frozenset(self.quads), self.prefixes)

    def _directive(self) -> None:
        tok = self.next()
        if tok.value == "prefix":
            name = self.next()
            if name.kind != "PNAME" or not name.value.endswith(":"):
                raise self.err("expected prefix name ending in ':'", name)
            iri = self.next()
            if iri.kind != "IRIREF":
                raise self.err("expected IRI in @prefix", iri)
            self.prefixes[name.value[:-1]] = self._resolve(iri)
            self.expect_punct(".")
        else:
            iri = self.next()
            if iri.kind != "IRIREF":
                raise self.err("expected IRI in @base", iri)
            self.base = self._resolve(iri)
            self.expect_punct(".")

    def _sparql_directive(self) -> None:
        tok = self.next()
        if tok.value.lower() == "prefix":
            name = self.next()
            if name.kind != "PNAME" or not name.value.endswith(":"):
                raise self.err("expected prefix name ending in ':'", name)
            iri = self.next()
            if iri.kind != "IRIREF":
                raise self.err("expected IRI in PREFIX", iri)
            self.prefixes[name.value[:-1]] = self._resolve(iri)
        else:
            iri = self.next()
            if iri.kind != "IRIREF":
                raise self.err("expected IRI in BASE", iri)
            self.base = self._resolve(iri)

    def _labeled_block_or_statement(self) -> None:
        first = self._simple_term(allow_literal=False)
        tok = self.peek()
        if tok.kind == "PUNCT" and tok.value == "{":
            if not isinstance(first, Iri):
                raise self.err("graph label must be an IRI", tok)
            self._graph_block(first)
            return
        # N-Quads style: subject predicate object graph '.'
        subject = first
        predicate = self._predicate()
        obj = self._simple_term(allow_literal=True)
        tok = self.peek()
        if tok.kind == "PUNCT" and tok.value == ".":
            raise self.err("statement outside a named graph (supply a graph term)", tok)
        graph = self._simple_term(allow_literal=False)
        if not isinstance(graph, Iri):
            raise self.err("graph term must be an IRI", tok)
        self.expect_punct(".")
        if not isinstance(subject, (Iri, BlankNode)):
            raise self.err("subject must be an IRI or blank node", tok)
        self.quads.append(Quad(subject, predicate, obj, graph))

    def _graph_label(self) -> Iri:
        term = self._simple_term(allow_literal=False)
        if not isinstance(term, Iri):
            raise self.err("graph label must be an IRI")
        return term

    # --- graph blocks ---------------------------------------------------

    def _graph_block(self, graph: Iri) -> None:
        self.expect_punct("{")
        while True:
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value == "}":
                self.next()
                return
            if tok.kind == "EOF":
                raise self.err("unterminated graph block", tok)
            self._triples(graph)
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value == ".":
                self.next()
            elif not (tok.kind == "PUNCT" and tok.value == "}"):
                raise self.err(f"expected '.' or '}}', found {tok.value!r}", tok)

    def _triples(self, graph: Iri) -> None:
        tok = self.peek()
        if tok.kind == "ANON" or (tok.kind == "PUNCT" and tok.value == "["):
            subject = self._blank_node_property_list(graph)
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value in ".}":
                return  # [ p o ] standing alone is a valid statement
            self._predicate_object_list(subject, graph)
            return
        subject = self._term(graph, allow_literal=False)
        if not isinstance(subject, (Iri, BlankNode)):
            raise self.err("subject must be an IRI or blank node", tok)
        self._predicate_object_list(subject, graph)

    def _predicate_object_list(self, subject: Iri | BlankNode, graph: Iri) -> None:
        while True:
            predicate = self._predicate()
            while True:
                obj = self._term(graph, allow_literal=True)
                self.quads.append(Quad(subject, predicate, obj, graph))
                tok = self.peek()
                if tok.kind == "PUNCT" and tok.value == ",":
                    self.next()
                    continue
                break
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value == ";":
                while self.peek().kind == "PUNCT" and self.peek().value == ";":
                    self.next()
                nxt = self.peek()
                if nxt.kind == "PUNCT" and nxt.value in ".}":
                    return  # trailing ';'
                continue
            return

    def _predicate(self) -> Iri:
        tok = self.next()
        if tok.kind == "NAME" and tok.value == "a":
            return RDF_TYPE
        if tok.kind == "IRIREF":
            return Iri(self._resolve(tok))
        if tok.kind == "PNAME":
            return Iri(self._expand_pname(tok))
        raise self.err(f"expected predicate, found {tok.value!r}", tok)

    # --- terms ----------------------------------------------------------

    def _simple_term(self, allow_literal: bool) -> Term:
        """Terms legal in line-oriented statements: no lists, no property lists."""
        tok = self.next()
        if tok.kind == "IRIREF":
            return Iri(self._resolve(tok))
        if tok.kind == "PNAME":
            return Iri(self._expand_pname(tok))
        if tok.kind == "BNODE":
            return BlankNode(tok.value)
        if allow_literal and tok.kind == "STRING":
            return self._literal_tail(tok)
        if allow_literal and tok.kind == "NUMBER":
            return self._number_literal(tok)
        if allow_literal and tok.kind == "NAME" and tok.value in ("true", "false"):
            return Literal(tok.value, XSD_BOOLEAN)
        raise self.err(f"unexpected token {tok.value!r}", tok)

    def _term(self, graph: Iri, allow_literal: bool) -> Term:
        tok = self.peek()
        if tok.kind == "ANON":
            self.next()
            return self._fresh_bnode()
        if tok.kind == "PUNCT" and tok.value == "[":
            return self._blank_node_property_list(graph)
        if tok.kind == "PUNCT" and tok.value == "(":
            return self._collection(graph)
        return self._simple_term(allow_literal)

    def _literal_tail(self, tok: _Token) -> Literal:
        nxt = self.peek()
        if nxt.kind == "LANGTAG":
            self.next()
            return Literal(tok.value, langtag=nxt.value)
        if nxt.kind == "DTYPE":
            self.next()
            dt = self.next()
            if dt.kind == "IRIREF":
                return Literal(tok.value, Iri(self._resolve(dt)))
            if dt.kind == "PNAME":
                return Literal(tok.value, Iri(self._expand_pname(dt)))
            raise self.err("expected datatype IRI after ^^", dt)
        return Literal(tok.value)

    def _number_literal(self, tok: _Token) -> Literal:
        datatype = {"integer": XSD_INTEGER, "decimal": XSD_DECIMAL, "double": XSD_DOUBLE}[tok.extra]
        return Literal(tok.value, datatype)

    def _fresh_bnode(self) -> BlankNode:
        self._anon += 1
        return BlankNode(f"genid{self._anon}")

    def _blank_node_property_list(self, graph: Iri) -> BlankNode:
        tok = self.peek()
        if tok.kind == "ANON":
            self.next()
            return self._fresh_bnode()
        self.expect_punct("[")
        node = self._fresh_bnode()
        self._predicate_object_list(node, graph)
        self.expect_punct("]")
        return node

    def _collection(self, graph: Iri) -> Term:
        self.expect_punct("(")
        items: list[Term] = []
        while not (self.peek().kind == "PUNCT" and self.peek().value == ")"):
            if self.peek().kind == "EOF":
                raise self.err("unterminated collection")
            items.append(self._term(graph, allow_literal=True))
        self.next()  # ')'
        head: Term = RDF_NIL
        for item in reversed(items):
            node = self._fresh_bnode()
            self.quads.append(Quad(node, RDF_FIRST, item, graph))
            self.quads.append(Quad(node, RDF_REST, head, graph))
            head = node
        return head

    # --- IRI handling -----------------------------------------------------

    def _expand_pname(self, tok: _Token) -> str:
        prefix, _, local = tok.value.partition(":")
        if prefix not in self.prefixes:
            raise self.err(f"undefined prefix {prefix!r}", tok)
        return self.prefixes[prefix] + _unescape_local(local)

    def _resolve(self, tok: _Token) -> str:
        ref = tok.value
        if _SCHEME_RE.match(ref):
            return ref
        if self.base is None:
            raise self.err(f"relative IRI {ref!r} without a base", tok)
        if ref.startswith("#"):
            return self.base.split("#", 1)[0] + ref
        if self.base.split(":", 1)[1].startswith("//"):
            return urljoin(self.base, ref)
        raise self.err(f"cannot resolve relative IRI {ref!r} against non-hierarchical base", tok)


def _unescape_local(local: str) -> str:
    # Percent-encodings are kept verbatim (they are part of the IRI).
    return local


def parse_trig(text: str) -> QuadSet:
    """Parse a TriG document (or canonical N-Quads) into a QuadSet."""
    tokens = _Lexer(text).tokens()
    return _Parser(tokens).parse_document()
