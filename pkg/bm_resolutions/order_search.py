"""
Budgeted enumeration of candidate total orders on generators.

Stages run cheapest first: the given (or natural) order, caller-supplied
heuristic orders, seeded random permutations, then every permutation in
lexicographic order, keeping one representative per orbit of a symmetry group.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterator, Sequence
from time import perf_counter
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from bm_resolutions import graphs
from bm_resolutions.errors import InputError
from bm_resolutions.graphs import Graph
from bm_resolutions.ideal import MonomialIdeal, TotalOrder
from bm_resolutions.literals import Strategy

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDERS = 100_000
DEFAULT_MAX_SECONDS = 600.0
# Random restarts tried before exhaustive enumeration starts.
DEFAULT_RANDOM_RESTARTS = 32

Stage = Literal["given", "heuristic", "random", "exhaustive"]

_STAGE_RANK: dict[Strategy, int] = {"given": 0, "heuristic": 1, "random": 2, "exhaustive": 3}

type Permutation = tuple[int, ...]

# ---------------------------------------------------------------------------
# Budgets
# ---------------------------------------------------------------------------


class SearchBudget(BaseModel):
    """Limits on the number of orders tested and on wall-clock time."""

    model_config = ConfigDict(strict=True, frozen=True)

    max_orders: int = Field(default=DEFAULT_MAX_ORDERS, ge=0)
    max_seconds: float = Field(default=DEFAULT_MAX_SECONDS, ge=0)


class SearchClock:
    """Counts orders against a :class:`SearchBudget`."""

    def __init__(self, budget: SearchBudget) -> None:
        """Start the clock."""
        self.budget = budget
        self.orders_tested = 0
        self._start = perf_counter()

    @property
    def elapsed(self) -> float:
        """Seconds since the clock started."""
        return perf_counter() - self._start

    def charge(self) -> bool:
        """Account for one more order; False once the budget is spent."""
        if self.orders_tested >= self.budget.max_orders or self.elapsed > self.budget.max_seconds:
            return False
        self.orders_tested += 1
        return True


# ---------------------------------------------------------------------------
# Symmetry
# ---------------------------------------------------------------------------


def generator_permutations(ideal: MonomialIdeal, variable_perms: Sequence[Permutation]) -> list[Permutation]:
    """
    Translate variable permutations into permutations of generator indices.

    Raises :class:`InputError` when a permutation does not map the minimal
    generators onto themselves.
    """
    index = {m.exponents: i for i, m in enumerate(ideal.generators)}
    out: set[Permutation] = set()
    for perm in variable_perms:
        if sorted(perm) != list(range(ideal.d)):
            raise InputError(f"{perm} is not a permutation of the {ideal.d} variables")
        image: list[int] = []
        for m in ideal.generators:
            moved = [0] * ideal.d
            for v, e in enumerate(m.exponents):
                moved[perm[v]] = e
            target = index.get(tuple(moved))
            if target is None:
                raise InputError(f"variable permutation {perm} does not preserve the ideal")
            image.append(target)
        out.add(tuple(image))
    return sorted(out)


def check_group(n: int, perms: Sequence[Permutation]) -> None:
    """Reject generator permutations of the wrong size."""
    for p in perms:
        if sorted(p) != list(range(n)):
            raise InputError(f"{p} is not a permutation of the {n} generators")


def edge_ideal_symmetry(g: Graph, ideal: MonomialIdeal) -> tuple[Permutation, ...]:
    """Graph automorphisms acting on the generators of the edge ideal of *g*."""
    return tuple(generator_permutations(ideal, graphs.automorphism_group(g)))


def is_orbit_minimal(ranking: Permutation, group: Sequence[Permutation]) -> bool:
    """Whether *ranking* is lexicographically smallest among its images under *group*."""
    for p in group:
        image = tuple(p[g] for g in ranking)
        if image < ranking:
            return False
    return True


# ---------------------------------------------------------------------------
# Candidate stream
# ---------------------------------------------------------------------------


def candidate_orders(
    n: int,
    *,
    strategy: Strategy,
    given: TotalOrder | None = None,
    heuristics: Sequence[TotalOrder] = (),
    seed: int = 0,
    symmetry: Sequence[Permutation] = (),
    random_restarts: int = DEFAULT_RANDOM_RESTARTS,
) -> Iterator[tuple[Stage, TotalOrder]]:
    """
    Yield ``(stage, order)`` pairs, every stage up to and including *strategy*.

    The random stage is unbounded when it is the last stage and limited to
    *random_restarts* otherwise. Orders are not deduplicated across stages.
    """
    check_group(n, symmetry)
    level = _STAGE_RANK[strategy]

    yield "given", given if given is not None else TotalOrder.natural(n)
    if level >= 1:
        for order in heuristics:
            if order.n != n:
                raise InputError(f"heuristic order has {order.n} generators, expected {n}")
            yield "heuristic", order
    if level >= 2:
        rng = random.Random(seed)
        count = itertools.count() if level == 2 else range(random_restarts)
        for _ in count:
            ranking = list(range(n))
            rng.shuffle(ranking)
            yield "random", TotalOrder(ranking=tuple(ranking))
    if level >= 3:
        skipped = 0
        for ranking in itertools.permutations(range(n)):
            if symmetry and not is_orbit_minimal(ranking, symmetry):
                skipped += 1
                continue
            yield "exhaustive", TotalOrder(ranking=ranking)
        logger.debug("Exhaustive enumeration skipped %d non-canonical orders", skipped)


__all__ = [
    "DEFAULT_MAX_ORDERS",
    "DEFAULT_MAX_SECONDS",
    "DEFAULT_RANDOM_RESTARTS",
    "Stage",
    "Permutation",
    "SearchBudget",
    "SearchClock",
    "generator_permutations",
    "check_group",
    "edge_ideal_symmetry",
    "is_orbit_minimal",
    "candidate_orders",
]
