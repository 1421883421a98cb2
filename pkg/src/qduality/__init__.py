"""Quantum duality on presented Hopf algebras over Q[q, q^-1]."""

from .coeff import LaurentScalar
from .ncalg import Algebra, NCElement, ValidationError
from .hopf import HopfPresentation, TensorElement, check_hopf_axioms
from .parser import parse_presentation, format_presentation
from .catalog import load_example

__version__ = "0.1.0"

__all__ = [
    "LaurentScalar",
    "Algebra",
    "NCElement",
    "ValidationError",
    "HopfPresentation",
    "TensorElement",
    "check_hopf_axioms",
    "parse_presentation",
    "format_presentation",
    "load_example",
]
