"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

from bm_resolutions.types import GenSubset


class ResolutionsError(Exception):
    """Root of every error raised on purpose by this package."""


class InputError(ResolutionsError, ValueError):
    """Malformed or inadmissible input (monomials, graphs, orders, symmetry groups)."""


class BudgetExceededError(ResolutionsError):
    """An enumeration cap or search budget was exceeded."""


class HypothesisError(ResolutionsError):
    """A construction's hypothesis fails at a concrete subset."""

    def __init__(self, message: str, *, subset: GenSubset) -> None:
        """Record the offending subset alongside the message."""
        super().__init__(message)
        self.subset = subset


class MatchingInvariantError(ResolutionsError):
    """A constructed matching violates vertex-disjointness, homogeneity or acyclicity."""

    def __init__(self, message: str, *, witness: tuple[GenSubset, ...]) -> None:
        """Record the subsets that witness the violation."""
        super().__init__(message)
        self.witness = witness


__all__ = [
    "ResolutionsError",
    "InputError",
    "BudgetExceededError",
    "HypothesisError",
    "MatchingInvariantError",
]
