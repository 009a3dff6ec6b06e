"""Vocabulary constants for the nanopublication and review models.

Only the handful of terms the model actually uses are defined here; we do
not pull in the full upstream ontologies.
"""

from __future__ import annotations

from .rdf import Iri


class Namespace:
    """An IRI prefix from which terms are minted via attribute access."""

    def __init__(self, base: str):
        self._base = base

    @property
    def base(self) -> str:
        return self._base

    def term(self, local: str) -> Iri:
        return Iri(self._base + local)

    def __getattr__(self, local: str) -> Iri:
        if local.startswith("_"):
            raise AttributeError(local)
        return self.term(local)

    def __getitem__(self, local: str) -> Iri:
        return self.term(local)

    def __repr__(self) -> str:
        return f"Namespace({self._base!r})"


RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
DCTERMS = Namespace("http://purl.org/dc/terms/")
PROV = Namespace("http://www.w3.org/ns/prov#")

# Nanopublication anatomy and index membership.
NP = Namespace("http://www.nanopub.org/nschema#")
NPX = Namespace("http://purl.org/nanopub/x/")

# Review model: comment classes, dimensions, and the link vocabulary.
LF = Namespace("https://purl.org/linkflows/model#")

# Document structure (SPAR).
DOCO = Namespace("http://purl.org/spar/doco/")
FABIO = Namespace("http://purl.org/spar/fabio/")
C4O = Namespace("http://purl.org/spar/c4o/")

ORCID_PREFIX = "https://orcid.org/"

# Default prefix map used by the TriG writer.
PREFIXES: dict[str, str] = {
    "np": NP.base,
    "npx": NPX.base,
    "lf": LF.base,
    "dcterms": DCTERMS.base,
    "prov": PROV.base,
    "rdf": RDF.base,
    "xsd": XSD.base,
    "doco": DOCO.base,
    "fabio": FABIO.base,
    "c4o": C4O.base,
}
