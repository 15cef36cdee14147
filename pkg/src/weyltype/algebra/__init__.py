"""Canonical-form arithmetic for presented and Weyl-type algebras."""

from .constructions import OreValidationError, ore_extend, tensor_product
from .core import AlgebraError, Element, Presentation
from .pbw import (
    ConfluenceReport, PBWPresentation, TerminationError, check_local_confluence, deglex,
)
from .weyltype import (
    ANALYTIC, CENTRAL, NONE, WeylTypePresentation, project_to_fiber, specialize_y, weyl_type,
)


def multiply(a, b):
    return a.P.multiply(a, b)


def commutator(a, b):
    return a.P.commutator(a, b)


def reduce_word(word, P):
    return P.reduce_word(word)


__all__ = [
    "ANALYTIC", "AlgebraError", "CENTRAL", "ConfluenceReport", "Element", "NONE",
    "OreValidationError", "PBWPresentation", "Presentation", "TerminationError",
    "WeylTypePresentation", "check_local_confluence", "commutator", "deglex", "multiply",
    "ore_extend", "project_to_fiber", "reduce_word", "specialize_y", "tensor_product",
    "weyl_type",
]
