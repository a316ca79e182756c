"""Support tau-tilting pairs, their exchange graphs and g-vector fans for
finite dimensional algebras given by a quiver with relations."""
from __future__ import annotations

from .algebra import (Algebra, AlgebraPresentation, Quiver, Relation, parse_algebra_text,
                      quotient_by_idempotent, quotient_by_relations)
from .errors import TauTiltError
from .exchange import ExchangeGraph, explore, is_connected, path_in_subgraph
from .fan import check_fan, chamber_containment, coverage
from .fields import Field
from .modules import Module, decompose, hom, min_projective_presentation, tau, tau_inverse
from .reduction import tau_reduction, verify_reduction
from .stability import is_theta_semistable
from .tilting import TauPair, mutate
from .zoo import preset

__all__ = [
    "Algebra", "AlgebraPresentation", "ExchangeGraph", "Field", "Module", "Quiver", "Relation",
    "TauPair", "TauTiltError", "chamber_containment", "check_fan", "coverage", "decompose",
    "explore", "hom", "is_connected", "is_theta_semistable", "min_projective_presentation",
    "mutate", "parse_algebra_text", "path_in_subgraph", "preset", "quotient_by_idempotent",
    "quotient_by_relations", "tau", "tau_inverse", "tau_reduction", "verify_reduction",
]
