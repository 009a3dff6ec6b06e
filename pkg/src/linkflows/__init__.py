"""Fine-grained scholarly reviewing as nanopublications."""

__version__ = "0.1.0"
