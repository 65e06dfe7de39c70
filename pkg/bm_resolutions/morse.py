"""
Critical cells, the Morse differential and resolution checks.

An acyclic matching on the Taylor digraph collapses the Taylor complex onto
its critical cells. The differential between critical cells counts, modulo
two, the gradient paths that alternate between a down step and a reversed
matched edge.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict

from bm_resolutions import gf2
from bm_resolutions.errors import BudgetExceededError, InputError
from bm_resolutions.gf2 import BitMatrix
from bm_resolutions.ideal import MonomialIdeal, divides, members
from bm_resolutions.matchings import Grading, LcmGrading, Matching, Violation, matching_violations
from bm_resolutions.taylor import taylor_table
from bm_resolutions.types import Exponents, GenSubset

logger = logging.getLogger(__name__)

SUPPORTED_FIELD = 2

# ---------------------------------------------------------------------------
# Matching validation
# ---------------------------------------------------------------------------


class MatchingReport(BaseModel):
    """Outcome of checking a matching; empty ``violations`` means valid."""

    model_config = ConfigDict(strict=True, frozen=True)

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        """True when no condition fails."""
        return not self.violations


def validate_matching(ideal: MonomialIdeal, matching: Matching, grading: Grading | None = None) -> MatchingReport:
    """Check disjointness, fiber equality and acyclicity; the lcm grading is the default."""
    grading = grading if grading is not None else LcmGrading(ideal)
    return MatchingReport(violations=tuple(matching_violations(grading, matching)))


# ---------------------------------------------------------------------------
# Critical cells
# ---------------------------------------------------------------------------


class CriticalCell(BaseModel):
    """A subset untouched by the matching, with its lcm."""

    model_config = ConfigDict(strict=True, frozen=True)

    subset: GenSubset
    multidegree: Exponents


def critical_cells(ideal: MonomialIdeal, matching: Matching) -> dict[int, list[CriticalCell]]:
    """Critical subsets by cardinality ``0..n``, each list ascending by bit value."""
    table = taylor_table(ideal)
    touched = matching.matched_subsets()
    cells: dict[int, list[CriticalCell]] = {i: [] for i in range(ideal.n + 1)}
    for s in range(table.subset_count):
        if s in touched:
            continue
        degree = table.degrees[int(table.lcm_ids[s])]
        cells[int(table.sizes[s])].append(CriticalCell(subset=s, multidegree=degree))
    return cells


def critical_counts(ideal: MonomialIdeal, matching: Matching) -> list[int]:
    """Number of critical cells in each cardinality."""
    return [len(cells) for _, cells in sorted(critical_cells(ideal, matching).items())]


# ---------------------------------------------------------------------------
# Morse complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MorseComplex:
    """
    Critical cells per homological degree and the boundary maps between them.

    ``boundaries[i]`` has shape ``len(cells[i-1]) x len(cells[i])``;
    ``boundaries[0]`` is an empty placeholder.
    """

    cells: tuple[tuple[GenSubset, ...], ...]
    degrees: dict[GenSubset, Exponents]
    boundaries: tuple[BitMatrix, ...]

    @property
    def ranks(self) -> list[int]:
        """Number of cells in each degree."""
        return [len(c) for c in self.cells]

    def with_entry_flipped(self, degree: int, row: int, col: int) -> MorseComplex:
        """A copy with one boundary entry toggled."""
        mats = [m.copy() for m in self.boundaries]
        mats[degree][row, col] ^= 1
        return MorseComplex(cells=self.cells, degrees=self.degrees, boundaries=tuple(mats))


def morse_differential(
    ideal: MonomialIdeal,
    matching: Matching,
    *,
    path_budget: int | None = None,
    field: int = SUPPORTED_FIELD,
) -> MorseComplex:
    """
    Assemble the Morse complex of a valid matching.

    Path counts are accumulated by memoised search over the acyclic digraph;
    *path_budget* caps the number of memo entries per degree.
    """
    if field != SUPPORTED_FIELD:
        raise InputError(f"only the field with {SUPPORTED_FIELD} elements is supported")
    cells_by_size = critical_cells(ideal, matching)
    cells = tuple(tuple(c.subset for c in cells_by_size[i]) for i in range(ideal.n + 1))
    degrees = {c.subset: c.multidegree for group in cells_by_size.values() for c in group}

    # up[t] = s for every matched edge s -> t
    up = {e.tau: e.sigma for e in matching.edges}
    down_matched = {e.sigma for e in matching.edges}

    boundaries: list[BitMatrix] = [gf2.zeros(0, len(cells[0]))]
    for i in range(1, ideal.n + 1):
        boundaries.append(_boundary(cells[i - 1], cells[i], up, down_matched, path_budget=path_budget, degree=i))

    return MorseComplex(cells=cells, degrees=degrees, boundaries=tuple(boundaries))


def _boundary(
    lower: tuple[GenSubset, ...],
    upper: tuple[GenSubset, ...],
    up: dict[GenSubset, GenSubset],
    down_matched: set[GenSubset],
    *,
    path_budget: int | None,
    degree: int,
) -> BitMatrix:
    targets = {s: k for k, s in enumerate(lower)}
    memo: dict[GenSubset, int] = {}

    def value(tau: GenSubset) -> int:
        return 1 << targets[tau] if tau in targets else memo[tau]

    def reach(start: GenSubset) -> int:
        # Bit vector over the critical cells of ``lower`` reached from start, mod 2.
        # Post-order walk: every face is resolved before the subset above it.
        stack = [start]
        while stack:
            tau = stack[-1]
            if tau in targets or tau in memo:
                stack.pop()
                continue
            if tau in down_matched or tau not in up:
                memo[tau] = 0
                stack.pop()
                continue
            sigma = up[tau]
            faces = [sigma ^ (1 << g) for g in members(sigma) if sigma ^ (1 << g) != tau]
            pending = [f for f in faces if f not in targets and f not in memo]
            if pending:
                stack.extend(pending)
                continue
            if path_budget is not None and len(memo) >= path_budget:
                raise BudgetExceededError(f"gradient paths exceed the budget in degree {degree}")
            acc = 0
            for face in faces:
                acc ^= value(face)
            memo[tau] = acc
            stack.pop()
        return value(start)

    mat = gf2.zeros(len(lower), len(upper))
    for col, sigma in enumerate(upper):
        acc = 0
        for g in members(sigma):
            acc ^= reach(sigma ^ (1 << g))
        for row in members(acc):
            mat[row, col] = 1
    logger.debug("Degree %d: %d x %d boundary, %d memo entries", degree, mat.shape[0], mat.shape[1], len(memo))
    return mat


def taylor_complex(ideal: MonomialIdeal) -> MorseComplex:
    """The Taylor complex mod 2, the Morse complex of the empty matching."""
    return morse_differential(ideal, Matching())


def verify_resolution(ideal: MonomialIdeal, complex_: MorseComplex) -> bool:
    """
    Check that *complex_* resolves ``S/I`` over the two-element field.

    Consecutive maps must compose to zero, and at every lcm-lattice degree
    ``b`` the strand spanned by cells with lcm dividing ``b`` must have
    homology ``k`` in degree 0 when ``b`` lies outside ``I`` and nothing else.
    """
    mats = complex_.boundaries
    for i in range(2, len(mats)):
        if mats[i - 1].size and mats[i].size and gf2.matmul(mats[i - 1], mats[i]).any():
            logger.debug("Boundary maps %d and %d do not compose to zero", i - 1, i)
            return False

    table = taylor_table(ideal)
    for b in table.degrees:
        keep = [
            np.array([k for k, s in enumerate(group) if divides(complex_.degrees[s], b)], dtype=np.int64)
            for group in complex_.cells
        ]
        dims = [len(k) for k in keep]
        strand = [gf2.zeros(0, dims[0])] + [mats[i][np.ix_(keep[i - 1], keep[i])] for i in range(1, len(mats))]
        homology = gf2.homology_dimensions(dims, strand)
        outside = not any(divides(g.exponents, b) for g in ideal.generators)
        expected = [1 if outside else 0] + [0] * (len(dims) - 1)
        if homology != expected:
            logger.debug("Strand at %s has homology %s", b, homology)
            return False
    return True


def cell_counts_by_degree(complex_: MorseComplex) -> dict[Exponents, int]:
    """Number of critical cells with each lcm, over all homological degrees."""
    counts: dict[Exponents, int] = defaultdict(int)
    for group in complex_.cells:
        for s in group:
            counts[complex_.degrees[s]] += 1
    return dict(counts)


__all__ = [
    "SUPPORTED_FIELD",
    "MatchingReport",
    "validate_matching",
    "CriticalCell",
    "critical_cells",
    "critical_counts",
    "MorseComplex",
    "morse_differential",
    "taylor_complex",
    "verify_resolution",
    "cell_counts_by_degree",
]
