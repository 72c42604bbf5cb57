"""Exact cohomology of split quadrics: singular, Chow, I-, Milnor-Witt and Chow-Witt."""

from .abelian import FinAbGroup, GroupHom, fiber_product, smith_normal_form
from .coefficients import builtin_datum, complexes, finite_field, reals
from .presented_ring import DegreeVector, GradedAlgebraPresentation, Window, module_basis

__version__ = "0.1.0"

__all__ = [
    "DegreeVector",
    "FinAbGroup",
    "GradedAlgebraPresentation",
    "GroupHom",
    "Window",
    "builtin_datum",
    "complexes",
    "fiber_product",
    "finite_field",
    "module_basis",
    "reals",
    "smith_normal_form",
]
