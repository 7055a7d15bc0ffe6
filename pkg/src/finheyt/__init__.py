"""finheyt: a workbench for finite Heyting-based discriminator algebras."""

from .algebra import (
    ElementProfile,
    FiniteAlgebra,
    ValidationReport,
    VarietyClass,
    canonical_form,
    derive_operations,
    discriminator_eval,
    element_profile,
    validate,
)
from .errors import (
    FinheytError,
    InvalidAlgebraError,
    MalformedAlgebraError,
    TermEvalError,
    TermParseError,
    TheoremViolation,
)

__all__ = [
    "ElementProfile",
    "FiniteAlgebra",
    "ValidationReport",
    "VarietyClass",
    "canonical_form",
    "derive_operations",
    "discriminator_eval",
    "element_profile",
    "validate",
    "FinheytError",
    "InvalidAlgebraError",
    "MalformedAlgebraError",
    "TermEvalError",
    "TermParseError",
    "TheoremViolation",
]
