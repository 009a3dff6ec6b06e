"""Assemble, hash-address, verify, validate, and index nanopublications.

A nanopublication is four named graphs under one root URI: a head graph that
ties the other three together, an assertion graph with the content, a
provenance graph about the assertion, and a publication-info graph about the
nanopublication itself. Once finalized, the root URI embeds a hash of the
canonical content (an "RA..." artifact code), so any change to the quads is
detectable.

The hash recipe is fixed: rewrite the temporary base to a placeholder IRI,
serialize to canonical N-Quads, SHA-256 the UTF-8 bytes, and encode the
digest as unpadded base64url.
"""

from __future__ import annotations

import base64
import hashlib
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .rdf import (
    XSD_DATETIME,
    BlankNode,
    Iri,
    Literal,
    Quad,
    QuadSet,
    canonical_nquads,
    rewrite_terms,
    to_trig,
)
from .vocab import DCTERMS, NP, NPX, ORCID_PREFIX, PREFIXES, PROV, RDF

HEAD_SUFFIX = "#Head"
ASSERTION_SUFFIX = "#assertion"
PROVENANCE_SUFFIX = "#provenance"
PUBINFO_SUFFIX = "#pubinfo"

TEMP_PREFIX = "urn:temp:"
PLACEHOLDER = "urn:trusty:placeholder"
DEFAULT_PUBLISH_BASE = "https://w3id.org/linkflows/np/"

MAX_INDEX_SIZE = 1000

TRUSTY_CODE_RE = re.compile(r"RA[A-Za-z0-9_\-]{43}$")
_CREATED_RE = re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$")


class NanopubError(Exception):
    """Raised when a nanopublication cannot be built or interpreted."""


class NotTrustyError(NanopubError):
    """The URI carries no artifact code, so verification is undefined."""


class InvalidNanopubError(NanopubError):
    def __init__(self, report: "ValidationReport"):
        rules = ", ".join(v.rule for v in report.violations)
        super().__init__(f"nanopublication is invalid: {rules}")
        self.report = report


class IndexChainError(NanopubError):
    """An index chain link could not be resolved."""


@dataclass(frozen=True, slots=True)
class TrustyArtifact:
    code: str

    def __post_init__(self) -> None:
        if not re.fullmatch(r"RA[A-Za-z0-9_\-]{43}", self.code):
            raise ValueError(f"malformed artifact code: {self.code!r}")


@dataclass(frozen=True, slots=True)
class PubMeta:
    """Creator/creation metadata stamped into provenance and pubinfo."""

    creator: Iri
    created: str  # xsd:dateTime, UTC, seconds precision
    source: Iri | None = None

    def __post_init__(self) -> None:
        if not self.creator.value.startswith(ORCID_PREFIX):
            raise ValueError(f"creator must be an ORCID IRI: {self.creator.value!r}")
        if not _CREATED_RE.match(self.created):
            raise ValueError(f"created must look like 2021-07-12T09:00:00Z: {self.created!r}")


@dataclass(frozen=True)
class Nanopublication:
    """Root URI plus the quads of its four named graphs."""

    uri: Iri
    quads: QuadSet

    @property
    def head_graph(self) -> Iri:
        return Iri(self.uri.value + HEAD_SUFFIX)

    @property
    def assertion_graph(self) -> Iri:
        return Iri(self.uri.value + ASSERTION_SUFFIX)

    @property
    def provenance_graph(self) -> Iri:
        return Iri(self.uri.value + PROVENANCE_SUFFIX)

    @property
    def pubinfo_graph(self) -> Iri:
        return Iri(self.uri.value + PUBINFO_SUFFIX)

    def graph_quads(self, graph: Iri) -> tuple[Quad, ...]:
        return self.quads.graph(graph)

    @property
    def assertion(self) -> tuple[Quad, ...]:
        return self.quads.graph(self.assertion_graph)

    def canonical(self) -> str:
        return canonical_nquads(self.quads)

    def to_trig(self) -> str:
        extra = dict(PREFIXES)
        extra["this"] = self.uri.value
        extra["sub"] = self.uri.value + "#"
        order = [self.head_graph, self.assertion_graph, self.provenance_graph, self.pubinfo_graph]
        return to_trig(self.quads, graph_order=order, extra_prefixes=extra)


@dataclass(frozen=True, slots=True)
class Violation:
    rule: str
    message: str
    where: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return "; ".join(f"{v.rule}: {v.message} [{v.where}]" for v in self.violations)


def validate(n: Nanopublication) -> ValidationReport:
    """Check every structural invariant; failures are reported, not raised."""
    violations: list[Violation] = []
    known = {n.head_graph, n.assertion_graph, n.provenance_graph, n.pubinfo_graph}

    for quad in n.quads:
        for term in (quad.subject, quad.object):
            if isinstance(term, BlankNode):
                violations.append(
                    Violation("BLANK_NODE", "blank nodes are not allowed", str(term))
                )
    for graph in n.quads.graphs():
        if graph not in known:
            violations.append(
                Violation("EXTRA_GRAPH", "quads outside the four nanopub graphs", graph.value)
            )

    head = n.quads.graph(n.head_graph)
    if len(head) != 4:
        violations.append(
            Violation("HEAD_TRIPLE_COUNT", f"head graph has {len(head)} triples, need 4", n.head_graph.value)
        )
    expected = {
        Quad(n.uri, RDF.type, NP.Nanopublication, n.head_graph),
        Quad(n.uri, NP.hasAssertion, n.assertion_graph, n.head_graph),
        Quad(n.uri, NP.hasProvenance, n.provenance_graph, n.head_graph),
        Quad(n.uri, NP.hasPublicationInfo, n.pubinfo_graph, n.head_graph),
    }
    missing = expected - set(head)
    if missing:
        preds = ", ".join(sorted(q.predicate.value for q in missing))
        violations.append(Violation("HEAD_SHAPE", f"head lacks required triples ({preds})", n.head_graph.value))

    if not n.quads.graph(n.assertion_graph):
        violations.append(Violation("EMPTY_ASSERTION", "assertion graph is empty", n.assertion_graph.value))
    prov = n.quads.graph(n.provenance_graph)
    if not prov:
        violations.append(Violation("NP_MISSING_GRAPH", "provenance graph is empty", n.provenance_graph.value))
    elif not any(q.subject == n.assertion_graph for q in prov):
        violations.append(
            Violation("PROV_ABOUT_ASSERTION", "no provenance triple about the assertion graph", n.provenance_graph.value)
        )
    pubinfo = n.quads.graph(n.pubinfo_graph)
    if not pubinfo:
        violations.append(Violation("NP_MISSING_GRAPH", "pubinfo graph is empty", n.pubinfo_graph.value))
    elif not any(q.subject == n.uri for q in pubinfo):
        violations.append(
            Violation("PUBINFO_ABOUT_URI", "no pubinfo triple about the nanopublication", n.pubinfo_graph.value)
        )
    return ValidationReport(tuple(violations))


def _rehome(quads: Iterable[Quad] | QuadSet | None, graph: Iri) -> list[Quad]:
    if quads is None:
        return []
    return [Quad(q.subject, q.predicate, q.object, graph) for q in quads]


def assemble(
    assertion: QuadSet | Iterable[Quad],
    prov: QuadSet | Iterable[Quad] | None,
    meta: PubMeta,
    temp_base: Iri,
    extra_pubinfo: Iterable[Quad] | None = None,
) -> Nanopublication:
    """Build a pre-trusty nanopublication rooted at a urn:temp: base.

    Input quads are rehomed into the assertion graph regardless of the graph
    they carried. When no provenance quads are given, attribution defaults to
    the assertion graph being prov:wasAttributedTo the creator, plus
    prov:hadPrimarySource when the meta has a source.
    """
    if not temp_base.value.startswith(TEMP_PREFIX):
        raise NanopubError(f"temp base must start with {TEMP_PREFIX}: {temp_base.value!r}")
    if "#" in temp_base.value:
        raise NanopubError(f"temp base must not carry a fragment: {temp_base.value!r}")

    head_g = Iri(temp_base.value + HEAD_SUFFIX)
    assertion_g = Iri(temp_base.value + ASSERTION_SUFFIX)
    prov_g = Iri(temp_base.value + PROVENANCE_SUFFIX)
    pubinfo_g = Iri(temp_base.value + PUBINFO_SUFFIX)

    assertion_quads = _rehome(assertion, assertion_g)
    if not assertion_quads:
        raise NanopubError("EMPTY_ASSERTION: assertion must contain at least one quad")

    prov_quads = _rehome(prov, prov_g)
    if not prov_quads:
        prov_quads = [Quad(assertion_g, PROV.wasAttributedTo, meta.creator, prov_g)]
        if meta.source is not None:
            prov_quads.append(Quad(assertion_g, PROV.hadPrimarySource, meta.source, prov_g))

    pubinfo_quads = [
        Quad(temp_base, DCTERMS.creator, meta.creator, pubinfo_g),
        Quad(temp_base, DCTERMS.created, Literal(meta.created, XSD_DATETIME), pubinfo_g),
    ]
    pubinfo_quads += _rehome(extra_pubinfo, pubinfo_g)

    head_quads = [
        Quad(temp_base, RDF.type, NP.Nanopublication, head_g),
        Quad(temp_base, NP.hasAssertion, assertion_g, head_g),
        Quad(temp_base, NP.hasProvenance, prov_g, head_g),
        Quad(temp_base, NP.hasPublicationInfo, pubinfo_g, head_g),
    ]

    all_quads = head_quads + assertion_quads + prov_quads + pubinfo_quads
    for quad in all_quads:
        if isinstance(quad.subject, BlankNode) or isinstance(quad.object, BlankNode):
            raise NanopubError(f"BLANK_NODE: blank nodes are not allowed ({quad})")
    return Nanopublication(temp_base, QuadSet.of(all_quads, PREFIXES))


def _artifact_from_digest(digest: bytes) -> str:
    return "RA" + base64.urlsafe_b64encode(digest).decode("ascii").rstrip("=")


def make_trusty(n: Nanopublication, publish_base: Iri | None = None) -> Nanopublication:
    """Finalize a pre-trusty nanopublication under a hash-embedding URI."""
    base = publish_base.value if publish_base is not None else DEFAULT_PUBLISH_BASE
    if not n.uri.value.startswith(TEMP_PREFIX):
        raise NanopubError(f"not a pre-trusty nanopublication: {n.uri.value!r}")
    report = validate(n)
    if not report.valid:
        raise InvalidNanopubError(report)

    pinned = rewrite_terms(n.quads, {n.uri.value: PLACEHOLDER})
    for quad in pinned:
        for term in (quad.subject, quad.predicate, quad.object, quad.graph):
            if isinstance(term, Iri) and term.value.startswith(TEMP_PREFIX):
                raise NanopubError(f"UNRESOLVED_TEMP_REF: {term.value} still references a temp IRI")

    digest = hashlib.sha256(canonical_nquads(pinned).encode("utf-8")).digest()
    code = _artifact_from_digest(digest)
    final_uri = Iri(base + code)
    final_quads = rewrite_terms(pinned, {PLACEHOLDER: final_uri.value})
    return Nanopublication(final_uri, final_quads)


def trusty_artifact(n: Nanopublication) -> TrustyArtifact:
    match = TRUSTY_CODE_RE.search(n.uri.value)
    if match is None:
        raise NotTrustyError(f"URI carries no artifact code: {n.uri.value}")
    return TrustyArtifact(match.group(0))


def verify_trusty(n: Nanopublication) -> bool:
    """Recompute the artifact code from the content; True iff it matches."""
    artifact = trusty_artifact(n)
    pinned = rewrite_terms(n.quads, {n.uri.value: PLACEHOLDER})
    digest = hashlib.sha256(canonical_nquads(pinned).encode("utf-8")).digest()
    return _artifact_from_digest(digest) == artifact.code


# ---------------------------------------------------------------------------
# Reconstruction from parsed quads
# ---------------------------------------------------------------------------

def discover_nanopubs(quadset: QuadSet) -> list[Nanopublication]:
    """Split a QuadSet (one file, possibly concatenated) into nanopublications."""
    roots: list[Iri] = []
    for quad in quadset:
        if (
            quad.predicate == RDF.type
            and quad.object == NP.Nanopublication
            and isinstance(quad.subject, Iri)
            and quad.graph.value == quad.subject.value + HEAD_SUFFIX
        ):
            roots.append(quad.subject)
    roots.sort(key=lambda u: u.value)

    claimed: set[Quad] = set()
    out: list[Nanopublication] = []
    for root in roots:
        graphs = {
            Iri(root.value + suffix)
            for suffix in (HEAD_SUFFIX, ASSERTION_SUFFIX, PROVENANCE_SUFFIX, PUBINFO_SUFFIX)
        }
        quads = frozenset(q for q in quadset if q.graph in graphs)
        claimed |= quads
        out.append(Nanopublication(root, QuadSet(quads, dict(quadset.prefixes))))

    stray = [q for q in quadset if q not in claimed]
    if stray:
        graphs = sorted({q.graph.value for q in stray})
        raise NanopubError(f"quads outside any nanopublication, in graphs: {', '.join(graphs)}")
    return out


def nanopub_from_quads(quadset: QuadSet) -> Nanopublication:
    found = discover_nanopubs(quadset)
    if len(found) != 1:
        raise NanopubError(f"expected exactly one nanopublication, found {len(found)}")
    return found[0]


# ---------------------------------------------------------------------------
# Index nanopublications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NanopubIndex:
    """A nanopublication whose assertion enumerates other nanopublications.

    The member list is ordered in memory; the RDF encoding is a set, so an
    index parsed back from quads enumerates its members in URI order.
    """

    nanopub: Nanopublication
    members: tuple[Iri, ...]
    appends: Iri | None = None

    @property
    def uri(self) -> Iri:
        return self.nanopub.uri


def build_index(
    members: Sequence[Iri],
    meta: PubMeta,
    publish_base: Iri | None = None,
    description: str | None = None,
    max_size: int = MAX_INDEX_SIZE,
) -> list[NanopubIndex]:
    """Chunk members into a chain of trusty index nanopublications.

    Returns the chain oldest-first; the last element is the entry point.
    A description, when given, becomes an extra pubinfo triple on each index.
    """
    if not members:
        raise NanopubError("cannot build an index over an empty member list")
    for member in members:
        if not TRUSTY_CODE_RE.search(member.value):
            raise NanopubError(f"index member is not a trusty URI: {member.value}")

    chunks = [members[i:i + max_size] for i in range(0, len(members), max_size)]
    chain: list[NanopubIndex] = []
    previous: Iri | None = None
    for i, chunk in enumerate(chunks):
        temp = Iri(f"{TEMP_PREFIX}index{i}")
        assertion = [Quad(temp, RDF.type, NPX.NanopubIndex, temp)]
        assertion += [Quad(temp, NPX.includesElement, m, temp) for m in chunk]
        if previous is not None:
            assertion.append(Quad(temp, NPX.appendsIndex, previous, temp))
        extra = None
        if description is not None:
            extra = [Quad(temp, DCTERMS.description, Literal(description), temp)]
        np = make_trusty(assemble(assertion, None, meta, temp, extra), publish_base)
        chain.append(NanopubIndex(np, tuple(chunk), previous))
        previous = np.uri
    return chain


def parse_index(n: Nanopublication) -> NanopubIndex:
    members: list[Iri] = []
    appends: Iri | None = None
    typed = False
    for quad in n.assertion:
        if quad.predicate == NPX.includesElement and isinstance(quad.object, Iri):
            members.append(quad.object)
        elif quad.predicate == NPX.appendsIndex and isinstance(quad.object, Iri):
            appends = quad.object
        elif quad.predicate == RDF.type and quad.object == NPX.NanopubIndex:
            typed = True
    if not members and not typed:
        raise NanopubError(f"not an index nanopublication: {n.uri.value}")
    members.sort(key=lambda m: m.value)
    return NanopubIndex(n, tuple(members), appends)


def is_index(n: Nanopublication) -> bool:
    for quad in n.assertion:
        if quad.predicate == NPX.includesElement:
            return True
        if quad.predicate == RDF.type and quad.object == NPX.NanopubIndex:
            return True
    return False


def index_members(idx: NanopubIndex, resolver: Callable[[Iri], Nanopublication]) -> list[Iri]:
    """Full member list across the chain, oldest batch first."""
    chain = [idx]
    seen = {idx.uri}
    current = idx
    while current.appends is not None:
        link = current.appends
        try:
            resolved = resolver(link)
        except Exception as exc:
            raise IndexChainError(f"cannot resolve index chain link {link.value}: {exc}") from exc
        if resolved is None:
            raise IndexChainError(f"cannot resolve index chain link {link.value}")
        current = parse_index(resolved)
        if current.uri in seen:
            raise IndexChainError(f"index chain loops at {current.uri.value}")
        seen.add(current.uri)
        chain.append(current)
    out: list[Iri] = []
    for link_idx in reversed(chain):
        out.extend(link_idx.members)
    return out
