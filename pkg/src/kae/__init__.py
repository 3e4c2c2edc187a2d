"""Property-based etype alignment and extension of knowledge graphs."""

from kae.errors import KaeError
from kae.model import EntityNode, EtypeNode, FcaContext, KnowledgeGraph, PropertyDef, build_context

__version__ = "0.1.0"

__all__ = [
    "EntityNode",
    "EtypeNode",
    "FcaContext",
    "KaeError",
    "KnowledgeGraph",
    "PropertyDef",
    "build_context",
]
