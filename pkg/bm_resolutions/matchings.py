"""
Bridges, gaps, and the matchings that induce Morse resolutions.

Implements the Barile-Macchia algorithm (and its generalisation over an
lcm-compatible grading) and the generalised Lyubeznik matching ``v_L / m_L``.
All subsets are bit vectors over generator indices.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict

from bm_resolutions.errors import HypothesisError, MatchingInvariantError
from bm_resolutions.graphs import find_directed_cycle
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, check_subset, divides, members
from bm_resolutions.literals import ViolationKind
from bm_resolutions.taylor import TaylorTable, lowest_ranked, taylor_table
from bm_resolutions.types import Exponents, FiberLabel, GenIndex, GenSubset

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Gradings
# ---------------------------------------------------------------------------


class Grading(ABC):
    """An order-preserving map from subsets to a poset, factoring the lcm map."""

    def __init__(self, ideal: MonomialIdeal) -> None:
        """Bind the grading to *ideal*."""
        self.ideal = ideal
        self.table = taylor_table(ideal)

    @abstractmethod
    def label(self, subset: GenSubset) -> FiberLabel:
        """Fiber identifier of *subset*."""
        raise NotImplementedError  # pragma: no cover

    @abstractmethod
    def leq(self, a: FiberLabel, b: FiberLabel) -> bool:
        """Partial order on fiber identifiers."""
        raise NotImplementedError  # pragma: no cover

    @abstractmethod
    def witness(self, label: FiberLabel) -> Exponents:
        """The lcm every subset with this label has."""
        raise NotImplementedError  # pragma: no cover


class LcmGrading(Grading):
    """The grading by lcm itself: fibers are lcm classes, ordered by divisibility."""

    def label(self, subset: GenSubset) -> FiberLabel:
        """The lcm exponents."""
        return self.table.degrees[int(self.table.lcm_ids[subset])]

    def leq(self, a: FiberLabel, b: FiberLabel) -> bool:
        """Componentwise comparison."""
        return divides(a, b)

    def witness(self, label: FiberLabel) -> Exponents:
        """Identity."""
        return label


class FiberedOrders(BaseModel):
    """One total order per fiber, with a default for fibers not listed."""

    model_config = ConfigDict(strict=True, frozen=True)

    default: TotalOrder
    orders: dict[FiberLabel, TotalOrder] = {}

    @classmethod
    def constant(cls, order: TotalOrder) -> FiberedOrders:
        """The same order on every fiber."""
        return cls(default=order)

    def for_label(self, label: FiberLabel) -> TotalOrder:
        """The order attached to fiber *label*."""
        return self.orders.get(label, self.default)


# ---------------------------------------------------------------------------
# Matchings
# ---------------------------------------------------------------------------


class MatchedEdge(BaseModel):
    """A Taylor-digraph edge ``sigma -> tau`` with ``tau`` a facet of ``sigma``."""

    model_config = ConfigDict(strict=True, frozen=True)

    sigma: GenSubset
    tau: GenSubset

    @property
    def removed(self) -> GenIndex:
        """The generator in ``sigma`` but not in ``tau``."""
        return (self.sigma ^ self.tau).bit_length() - 1


class Matching(BaseModel):
    """A set of matched Taylor-digraph edges."""

    model_config = ConfigDict(strict=True, frozen=True)

    edges: tuple[MatchedEdge, ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[GenSubset, GenSubset]]) -> Matching:
        """Build a matching from ``(sigma, tau)`` pairs, sorted by source."""
        return cls(edges=tuple(MatchedEdge(sigma=s, tau=t) for s, t in sorted(pairs)))

    def __len__(self) -> int:
        """Number of matched edges."""
        return len(self.edges)

    def pairs(self) -> set[tuple[GenSubset, GenSubset]]:
        """Edges as ``(sigma, tau)`` tuples."""
        return {(e.sigma, e.tau) for e in self.edges}

    def matched_subsets(self) -> set[GenSubset]:
        """Every subset touched by an edge."""
        return {s for e in self.edges for s in (e.sigma, e.tau)}


class Violation(BaseModel):
    """One failed matching condition, with the subsets that witness it."""

    model_config = ConfigDict(strict=True, frozen=True)

    kind: ViolationKind
    subsets: tuple[GenSubset, ...]
    detail: str


# ---------------------------------------------------------------------------
# Bridges and gaps
# ---------------------------------------------------------------------------


def bridges(ideal: MonomialIdeal, subset: GenSubset) -> set[GenIndex]:
    """Members whose removal keeps the lcm."""
    check_subset(ideal, subset)
    return set(members(taylor_table(ideal).bridge_mask(subset)))


def gaps(ideal: MonomialIdeal, subset: GenSubset) -> set[GenIndex]:
    """Non-members dividing the lcm."""
    check_subset(ideal, subset)
    return set(members(taylor_table(ideal).gap_mask(subset)))


def sbridge(ideal: MonomialIdeal, order: TotalOrder, subset: GenSubset) -> GenIndex | None:
    """The smallest bridge under *order*, or None for bridgeless subsets."""
    check_subset(ideal, subset)
    return lowest_ranked(taylor_table(ideal).bridge_mask(subset), order.position)


def true_gap_mask(table: TaylorTable, order: TotalOrder, subset: GenSubset) -> GenSubset:
    """Gaps whose adjunction creates no new bridge below themselves."""
    old = table.bridge_mask(subset)
    out = 0
    for m in members(table.gap_mask(subset)):
        fresh = table.bridge_mask(subset | (1 << m)) & ~old
        if not fresh & order.below(m):
            out |= 1 << m
    return out


def true_gaps(ideal: MonomialIdeal, order: TotalOrder, subset: GenSubset) -> set[GenIndex]:
    """True gaps of *subset* under *order*."""
    check_subset(ideal, subset)
    return set(members(true_gap_mask(taylor_table(ideal), order, subset)))


# ---------------------------------------------------------------------------
# Barile-Macchia algorithm
# ---------------------------------------------------------------------------


def _barile_macchia(
    table: TaylorTable,
    subsets: Iterable[GenSubset],
    position: tuple[int, ...],
) -> list[tuple[GenSubset, GenSubset]]:
    """
    Run the algorithm on one pool of subsets.

    Subsets of cardinality at least three are picked by decreasing cardinality,
    ties by ascending bit value. Each picked subset is matched to itself minus
    its smallest bridge; both leave the pool. Afterwards, among edges sharing a
    target only the one removing the smallest bridge survives.
    """
    omega = {s for s in subsets if table.sizes[s] >= 3}
    queue = sorted(omega, key=lambda s: (-int(table.sizes[s]), s))
    raw: list[tuple[GenSubset, GenSubset, GenIndex]] = []
    for s in queue:
        if s not in omega:
            continue
        omega.discard(s)
        sb = lowest_ranked(table.bridge_mask(s), position)
        if sb is None:
            continue
        t = s ^ (1 << sb)
        omega.discard(t)
        raw.append((s, t, sb))

    # Distinct sources sharing a target remove distinct generators, so no ties.
    survivors: dict[GenSubset, tuple[GenSubset, GenIndex]] = {}
    for s, t, sb in raw:
        held = survivors.get(t)
        if held is None or position[sb] > position[held[1]]:
            survivors[t] = (s, sb)
    return [(s, t) for t, (s, _) in survivors.items()]


def bm_matching(ideal: MonomialIdeal, order: TotalOrder) -> Matching:
    """The Barile-Macchia matching of *ideal* under *order*."""
    table = taylor_table(ideal)
    pairs = _barile_macchia(table, range(table.subset_count), order.position)
    logger.debug("BM matching with %d edges for %d generators", len(pairs), ideal.n)
    return Matching.of(pairs)


def bm_critical_count(ideal: MonomialIdeal, order: TotalOrder, multidegree: Exponents) -> int:
    """Number of BM-critical subsets with lcm *multidegree* (the algorithm run on that lcm fiber only)."""
    table = taylor_table(ideal)
    class_id = table.class_of(multidegree)
    if class_id is None:
        return 0
    fiber = table.class_members(class_id)
    return len(fiber) - 2 * len(_barile_macchia(table, fiber, order.position))


def _labels(grading: Grading) -> list[FiberLabel]:
    return [grading.label(s) for s in range(grading.table.subset_count)]


def gbm_matching(grading: Grading, orders: FiberedOrders) -> Matching:
    """
    The generalised Barile-Macchia matching.

    The algorithm runs on every fiber of *grading* with that fiber's order;
    the smallest bridge of a subset is taken under the order of its own fiber.
    Raises :class:`HypothesisError` when removing a smallest bridge leaves the fiber.
    """
    table = grading.table
    labels = _labels(grading)
    fibers: dict[FiberLabel, list[GenSubset]] = defaultdict(list)
    for s, label in enumerate(labels):
        fibers[label].append(s)

    pairs: list[tuple[GenSubset, GenSubset]] = []
    for label in sorted(fibers):
        position = orders.for_label(label).position
        for s in fibers[label]:
            sb = lowest_ranked(table.bridge_mask(s), position)
            if sb is not None and labels[s ^ (1 << sb)] != label:
                raise HypothesisError(
                    f"removing the smallest bridge {sb} of {members(s)} changes its fiber",
                    subset=s,
                )
        pairs.extend(_barile_macchia(table, fibers[label], position))
    logger.debug("gBM matching with %d edges over %d fibers", len(pairs), len(fibers))
    return Matching.of(pairs)


# ---------------------------------------------------------------------------
# Generalised Lyubeznik matching
# ---------------------------------------------------------------------------


def _vl_ml(table: TaylorTable, order: TotalOrder, subset: GenSubset) -> tuple[int, GenIndex] | None:
    desc = order.descending(subset)
    prefixes = [0]
    for g in desc:
        prefixes.append(prefixes[-1] | (1 << g))
    for k in range(len(desc), 0, -1):
        div = table.divisors(prefixes[k])
        if div & order.below(desc[k - 1]):
            m_l = order.smallest(div)
            assert m_l is not None
            return k, m_l
    return None


def vL_mL(ideal: MonomialIdeal, order: TotalOrder, subset: GenSubset) -> tuple[int, GenIndex] | None:
    """
    Return ``(v_L, m_L)`` of a non-empty subset, or None when ``v_L`` is minus infinity.

    With the members sorted ``m_1 > ... > m_q``, ``v_L`` is the largest ``k``
    for which some generator below ``m_k`` divides ``lcm(m_1, ..., m_k)``, and
    ``m_L`` is the smallest generator dividing that lcm.
    """
    check_subset(ideal, subset)
    return _vl_ml(taylor_table(ideal), order, subset)


def lyubeznik_matching(grading: Grading, orders: FiberedOrders) -> Matching:
    """
    The generalised Lyubeznik matching ``(s + m_L(s)) -> (s - m_L(s))``.

    Both representatives of a pair must produce the same edge; the result is
    checked against every matching condition and a violation is raised with
    its witness.
    """
    table = grading.table
    labels = _labels(grading)
    edges: set[tuple[GenSubset, GenSubset]] = set()
    for s in range(1, table.subset_count):
        found = _vl_ml(table, orders.for_label(labels[s]), s)
        if found is None:
            continue
        bit = 1 << found[1]
        up, down = s | bit, s & ~bit
        if labels[up] != labels[down]:
            raise HypothesisError(f"m_L of {members(s)} moves it across fibers", subset=s)
        edges.add((up, down))

    matching = Matching.of(edges)
    problems = matching_violations(grading, matching)
    if problems:
        first = problems[0]
        raise MatchingInvariantError(f"Lyubeznik matching fails {first.kind}: {first.detail}", witness=first.subsets)
    return matching


class MlSbridgeMismatch(BaseModel):
    """A subset where ``m_L`` lies in the subset but is not its smallest bridge."""

    model_config = ConfigDict(strict=True, frozen=True)

    subset: GenSubset
    m_l: GenIndex
    sbridge: GenIndex | None


def compare_mL_sbridge(grading: Grading, orders: FiberedOrders) -> list[MlSbridgeMismatch]:
    """Every subset where ``m_L`` exists, lies inside, and differs from the smallest bridge."""
    table = grading.table
    report: list[MlSbridgeMismatch] = []
    for s in range(1, table.subset_count):
        order = orders.for_label(grading.label(s))
        found = _vl_ml(table, order, s)
        if found is None or not s >> found[1] & 1:
            continue
        sb = lowest_ranked(table.bridge_mask(s), order.position)
        if sb != found[1]:
            report.append(MlSbridgeMismatch(subset=s, m_l=found[1], sbridge=sb))
    return report


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_grading(grading: Grading) -> list[Violation]:
    """Check order preservation on Taylor edges and lcm-compatibility of the witness map."""
    table = grading.table
    labels = _labels(grading)
    problems: list[Violation] = []
    for s in range(table.subset_count):
        if grading.witness(labels[s]) != table.degrees[int(table.lcm_ids[s])]:
            problems.append(
                Violation(kind="homogeneous", subsets=(s,), detail="witness disagrees with the lcm"),
            )
        for g in members(s):
            t = s ^ (1 << g)
            if not grading.leq(labels[t], labels[s]):
                problems.append(
                    Violation(kind="homogeneous", subsets=(s, t), detail="grading is not order-preserving"),
                )
    return problems


def matching_violations(grading: Grading, matching: Matching) -> list[Violation]:
    """
    Check the three matching conditions plus the Taylor-edge shape.

    Acyclicity is checked inside each lcm class: unmatched edges strictly lower
    the lcm across classes and matched edges keep it, so no cycle can leave a class.
    """
    table = grading.table
    problems: list[Violation] = []

    seen: dict[GenSubset, MatchedEdge] = {}
    for edge in matching.edges:
        s, t = edge.sigma, edge.tau
        if s >= table.subset_count or t & ~s or table.sizes[s] != table.sizes[t] + 1:
            problems.append(Violation(kind="shape", subsets=(s, t), detail="not a Taylor-digraph edge"))
            continue
        for v in (s, t):
            if v in seen:
                other = seen[v]
                problems.append(
                    Violation(
                        kind="disjoint",
                        subsets=(v, other.sigma, other.tau),
                        detail=f"subset {members(v)} appears in two edges",
                    )
                )
            seen[v] = edge
        if grading.label(s) != grading.label(t) or table.lcm_ids[s] != table.lcm_ids[t]:
            problems.append(Violation(kind="homogeneous", subsets=(s, t), detail="edge joins different fibers"))
    if problems:
        return problems

    matched = matching.pairs()
    classes = {int(table.lcm_ids[e.sigma]) for e in matching.edges}
    for class_id in sorted(classes):
        arcs: list[tuple[GenSubset, GenSubset]] = []
        for s in table.class_members(class_id):
            for b in members(table.bridge_mask(s)):
                t = s ^ (1 << b)
                arcs.append((t, s) if (s, t) in matched else (s, t))
        cycle = find_directed_cycle(arcs)
        if cycle:
            problems.append(
                Violation(kind="acyclic", subsets=tuple(cycle), detail="reversing the matching creates a cycle"),
            )
    return problems


__all__ = [
    "Grading",
    "LcmGrading",
    "FiberedOrders",
    "MatchedEdge",
    "Matching",
    "Violation",
    "MlSbridgeMismatch",
    "bridges",
    "gaps",
    "sbridge",
    "true_gap_mask",
    "true_gaps",
    "bm_matching",
    "bm_critical_count",
    "gbm_matching",
    "vL_mL",
    "lyubeznik_matching",
    "compare_mL_sbridge",
    "validate_grading",
    "matching_violations",
]
