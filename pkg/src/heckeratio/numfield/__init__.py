"""Exact number-field towers, embeddings, Galois closures and discriminants."""
from .catalog import CM_DATA, FIELDS, get_field, load_field
from .discriminant import (abs_discriminant, abs_discriminant_tower, delta_F, rel_discriminant,
                           rel_trace, relative_basis)
from .embeddings import DEFAULT_BITS, EmbeddingSet, Place, embeddings
from .galois import GaloisContext, factor_over, galois_action_on_sqrt, galois_closure
from .subfields import Subfield, SubfieldData, maximal_subfields
from .surd import SurdValue, squarefree_decomposition
from .tower import FieldElement, Layer, NumberFieldTower, build_field

__all__ = [
    "CM_DATA", "DEFAULT_BITS", "EmbeddingSet", "FIELDS", "FieldElement", "GaloisContext", "Layer",
    "NumberFieldTower", "Place", "Subfield", "SubfieldData", "SurdValue", "abs_discriminant",
    "abs_discriminant_tower", "build_field", "delta_F", "embeddings", "factor_over",
    "galois_action_on_sqrt", "galois_closure", "get_field", "load_field", "maximal_subfields",
    "rel_discriminant", "rel_trace", "relative_basis", "squarefree_decomposition",
]
