"""
Subset types and bridge-friendly orders.

Under a total order a subset is type-1 when some true gap lies below all of
its bridges, and potentially-type-2 when its smallest bridge lies below all
of its true gaps. A potentially-type-2 subset is type-2 when every other
potentially-type-2 subset with the same reduction (the subset minus its
smallest bridge) has a larger smallest bridge. An order is bridge-friendly
when every potentially-type-2 subset is type-2, which holds exactly when the
reduction is injective on potentially-type-2 subsets.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

from bm_resolutions.errors import InputError
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, check_subset, members
from bm_resolutions.literals import SearchOutcome, Strategy
from bm_resolutions.matchings import true_gap_mask
from bm_resolutions.order_search import Permutation, SearchBudget, SearchClock, Stage, candidate_orders
from bm_resolutions.taylor import TaylorTable, lowest_ranked, taylor_table
from bm_resolutions.types import GenIndex, GenSubset

logger = logging.getLogger(__name__)

type IntArray = npt.NDArray[np.int64]

# ---------------------------------------------------------------------------
# Single subsets
# ---------------------------------------------------------------------------


class SubsetClassification(BaseModel):
    """Type flags of one subset under one order."""

    model_config = ConfigDict(strict=True, frozen=True)

    subset: GenSubset
    type1: bool
    potentially_type2: bool
    type2: bool


def _max_position(mask: GenSubset, position: tuple[int, ...]) -> int:
    return max((position[g] for g in members(mask)), default=-1)


def _is_pt2(table: TaylorTable, order: TotalOrder, subset: GenSubset) -> bool:
    bridges = table.bridge_mask(subset)
    if not bridges:
        return False
    return _max_position(bridges, order.position) > _max_position(true_gap_mask(table, order, subset), order.position)


def _reduction(table: TaylorTable, order: TotalOrder, subset: GenSubset) -> tuple[GenSubset, GenIndex]:
    sb = lowest_ranked(table.bridge_mask(subset), order.position)
    assert sb is not None
    return subset ^ (1 << sb), sb


def _type2(table: TaylorTable, order: TotalOrder, subset: GenSubset) -> bool:
    reduced, sb = _reduction(table, order, subset)
    for g in range(table.n):
        other = reduced | (1 << g)
        if other == subset or reduced >> g & 1 or not _is_pt2(table, order, other):
            continue
        other_reduced, other_sb = _reduction(table, order, other)
        if other_reduced == reduced and not order.greater(other_sb, sb):
            return False
    return True


def classify_subset(ideal: MonomialIdeal, order: TotalOrder, subset: GenSubset) -> SubsetClassification:
    """Type-1, potentially-type-2 and type-2 flags of *subset*."""
    check_subset(ideal, subset)
    table = taylor_table(ideal)
    bridges = _max_position(table.bridge_mask(subset), order.position)
    gaps = _max_position(true_gap_mask(table, order, subset), order.position)
    pt2 = _is_pt2(table, order, subset)
    return SubsetClassification(
        subset=subset,
        type1=gaps > bridges,
        potentially_type2=pt2,
        type2=pt2 and _type2(table, order, subset),
    )


def is_type2(ideal: MonomialIdeal, order: TotalOrder, subset: GenSubset) -> bool:
    """Whether a potentially-type-2 subset is type-2."""
    check_subset(ideal, subset)
    table = taylor_table(ideal)
    if not _is_pt2(table, order, subset):
        raise InputError(f"subset {members(subset)} is not potentially-type-2")
    return _type2(table, order, subset)


# ---------------------------------------------------------------------------
# Whole orders
# ---------------------------------------------------------------------------


class BridgeFriendlyReport(BaseModel):
    """Verdict for one order, with the smallest subset that is potentially-type-2 but not type-2."""

    model_config = ConfigDict(strict=True, frozen=True)

    friendly: bool
    counterexample: GenSubset | None = None


class OrderEvaluator:
    """
    Bridge-friendliness of many orders of one ideal, vectorised over subsets.

    Per generator ``t`` it stores which subsets have ``t`` as a gap and which
    bridges appear when ``t`` is adjoined; an order then only supplies the
    positions.
    """

    def __init__(self, ideal: MonomialIdeal) -> None:
        """Precompute order-independent tables."""
        table = taylor_table(ideal)
        self.n = ideal.n
        self.table = table
        idx = np.arange(table.subset_count, dtype=np.int64)
        self._idx = idx
        self._bridges = table.bridges
        self._has_bridge = table.bridges != 0
        self._gap_of: list[npt.NDArray[np.bool_]] = []
        self._fresh: list[IntArray] = []
        for t in range(self.n):
            bit = np.int64(1 << t)
            self._gap_of.append((table.gaps & bit) != 0)
            self._fresh.append(table.bridges[idx | bit] & ~table.bridges & ~bit)
        # Ordering for reporting: cardinality, then bit value.
        self._report_key = table.sizes * table.subset_count + idx

    def counterexamples(self, order: TotalOrder) -> IntArray:
        """Every potentially-type-2 subset that is not type-2, in report order."""
        position = order.position
        below = [np.int64(order.below(t)) for t in range(self.n)]

        sb_pos = np.full(self.table.subset_count, -1, dtype=np.int64)
        sb_idx = np.zeros(self.table.subset_count, dtype=np.int64)
        for g in order.ranking:
            hit = (self._bridges & np.int64(1 << g)) != 0
            sb_pos = np.where(hit, position[g], sb_pos)
            sb_idx = np.where(hit, g, sb_idx)

        tg_pos = np.full(self.table.subset_count, -1, dtype=np.int64)
        for t in range(self.n):
            true_gap = self._gap_of[t] & ((self._fresh[t] & below[t]) == 0)
            tg_pos = np.where(true_gap, np.maximum(tg_pos, position[t]), tg_pos)

        pt2 = self._has_bridge & (sb_pos > tg_pos)
        subsets = self._idx[pt2]
        if subsets.size < 2:
            return subsets[:0]
        reduced = subsets ^ (np.int64(1) << sb_idx[pt2])
        reduced_sorted = np.sort(reduced)
        duplicated = reduced_sorted[1:][reduced_sorted[1:] == reduced_sorted[:-1]]
        if duplicated.size == 0:
            return subsets[:0]

        # Within a clash, only the subset with the smallest smallest-bridge is type-2.
        clash = np.isin(reduced, duplicated)
        losers: list[int] = []
        pos = sb_pos[pt2]
        for r in np.unique(reduced[clash]):
            group = np.flatnonzero(reduced == r)
            keep = group[np.argmax(pos[group])]
            losers.extend(int(subsets[k]) for k in group if k != keep)
        failing = np.array(losers, dtype=np.int64)
        return failing[np.argsort(self._report_key[failing], kind="stable")]

    def evaluate(self, order: TotalOrder) -> BridgeFriendlyReport:
        """Verdict for one order."""
        if order.n != self.n:
            raise InputError(f"order has {order.n} generators, expected {self.n}")
        bad = self.counterexamples(order)
        if bad.size:
            return BridgeFriendlyReport(friendly=False, counterexample=int(bad[0]))
        return BridgeFriendlyReport(friendly=True)


def is_bridge_friendly(ideal: MonomialIdeal, order: TotalOrder) -> BridgeFriendlyReport:
    """Whether every potentially-type-2 subset is type-2 under *order*."""
    return OrderEvaluator(ideal).evaluate(order)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


class SearchResult(BaseModel):
    """Outcome of a bridge-friendly order search."""

    model_config = ConfigDict(strict=True, frozen=True)

    outcome: SearchOutcome
    order: TotalOrder | None = None
    stage: Stage | None = None
    counterexample: GenSubset | None = None
    orders_tested: int
    seed: int


def search_bridge_friendly(
    ideal: MonomialIdeal,
    *,
    strategy: Strategy,
    budget: SearchBudget,
    seed: int = 0,
    given: TotalOrder | None = None,
    heuristics: Sequence[TotalOrder] = (),
    symmetry: Sequence[Permutation] = (),
) -> SearchResult:
    """
    Look for a bridge-friendly order.

    ``NotBridgeFriendly`` is only reported after exhaustive enumeration, one
    order per orbit of *symmetry*; a spent budget gives ``Unknown`` with the
    last counterexample seen.
    """
    evaluator = OrderEvaluator(ideal)
    clock = SearchClock(budget)
    last: GenSubset | None = None
    for stage, order in candidate_orders(
        ideal.n, strategy=strategy, given=given, heuristics=heuristics, seed=seed, symmetry=symmetry
    ):
        if not clock.charge():
            logger.info("Bridge-friendly search out of budget after %d orders", clock.orders_tested)
            return SearchResult(outcome="Unknown", counterexample=last, orders_tested=clock.orders_tested, seed=seed)
        report = evaluator.evaluate(order)
        if report.friendly:
            logger.info("Bridge-friendly order found at stage %s after %d orders", stage, clock.orders_tested)
            return SearchResult(
                outcome="Found", order=order, stage=stage, orders_tested=clock.orders_tested, seed=seed
            )
        last = report.counterexample
    outcome: SearchOutcome = "NotBridgeFriendly" if strategy == "exhaustive" else "Unknown"
    logger.info("Search finished with %s after %d orders", outcome, clock.orders_tested)
    return SearchResult(outcome=outcome, counterexample=last, orders_tested=clock.orders_tested, seed=seed)


__all__ = [
    "SubsetClassification",
    "classify_subset",
    "is_type2",
    "BridgeFriendlyReport",
    "OrderEvaluator",
    "is_bridge_friendly",
    "SearchResult",
    "search_bridge_friendly",
]
