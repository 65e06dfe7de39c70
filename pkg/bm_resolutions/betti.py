"""
Multigraded Betti numbers over the two-element field and minimality checks.

Betti numbers are computed two independent ways: from the Taylor complex,
where ``beta_{i,m}`` is the homology of the chain complex on the subsets with
lcm exactly ``m``, and from upper Koszul simplicial complexes. Both index
Betti numbers of ``S/I``.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from bm_resolutions import gf2, graphs
from bm_resolutions.classify import is_cochordal
from bm_resolutions.graphs import Graph
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, members
from bm_resolutions.literals import CertificateResult, Strategy
from bm_resolutions.matchings import FiberedOrders, Matching, bm_critical_count, bm_matching
from bm_resolutions.order_search import SearchBudget, SearchClock, candidate_orders, edge_ideal_symmetry
from bm_resolutions.taylor import TaylorTable, taylor_table
from bm_resolutions.types import Exponents

logger = logging.getLogger(__name__)

BettiMethod = Literal["taylor", "koszul"]

# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


class BettiEntry(BaseModel):
    """One non-zero graded Betti number ``beta_{degree, multidegree}(S/I)``."""

    model_config = ConfigDict(strict=True, frozen=True)

    degree: int = Field(ge=0)
    multidegree: Exponents
    rank: int = Field(gt=0)


class BettiTable(BaseModel):
    """Non-zero multigraded Betti numbers of ``S/I``, sorted by (degree, multidegree)."""

    model_config = ConfigDict(strict=True, frozen=True)

    entries: tuple[BettiEntry, ...]

    @classmethod
    def of(cls, ranks: dict[tuple[int, Exponents], int]) -> BettiTable:
        """Build from a ``(degree, multidegree) -> rank`` map, dropping zeros."""
        return cls(
            entries=tuple(
                BettiEntry(degree=i, multidegree=m, rank=r) for (i, m), r in sorted(ranks.items()) if r
            )
        )

    def get(self, degree: int, multidegree: Exponents) -> int:
        """``beta_{degree, multidegree}``, zero when absent."""
        for e in self.entries:
            if e.degree == degree and e.multidegree == multidegree:
                return e.rank
        return 0

    def as_dict(self) -> dict[tuple[int, Exponents], int]:
        """The table as a plain map."""
        return {(e.degree, e.multidegree): e.rank for e in self.entries}

    def totals(self) -> list[int]:
        """Total Betti number in each homological degree."""
        if not self.entries:
            return []
        top = max(e.degree for e in self.entries)
        out = [0] * (top + 1)
        for e in self.entries:
            out[e.degree] += e.rank
        return out

    def at(self, multidegree: Exponents) -> int:
        """Sum over homological degrees at one multidegree."""
        return sum(e.rank for e in self.entries if e.multidegree == multidegree)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def _class_homology(table: TaylorTable, class_id: int) -> list[int]:
    # Chain complex on one lcm class; faces that change the lcm vanish mod the maximal ideal.
    by_size: dict[int, list[int]] = {}
    for s in table.class_members(class_id):
        by_size.setdefault(int(table.sizes[s]), []).append(s)
    if not by_size:
        return []
    top = max(by_size)
    groups = [by_size.get(i, []) for i in range(top + 1)]
    index = [{s: k for k, s in enumerate(g)} for g in groups]
    boundaries = [gf2.zeros(0, len(groups[0]))]
    for i in range(1, top + 1):
        mat = gf2.zeros(len(groups[i - 1]), len(groups[i]))
        for col, s in enumerate(groups[i]):
            for b in members(table.bridge_mask(s)):
                mat[index[i - 1][s ^ (1 << b)], col] = 1
        boundaries.append(mat)
    return gf2.homology_dimensions([len(g) for g in groups], boundaries)


def taylor_betti(ideal: MonomialIdeal) -> BettiTable:
    """Betti numbers from the Taylor complex, one lcm class at a time."""
    table = taylor_table(ideal)
    ranks: dict[tuple[int, Exponents], int] = {}
    for class_id, m in enumerate(table.degrees):
        for i, r in enumerate(_class_homology(table, class_id)):
            if r:
                ranks[(i, m)] = r
    return BettiTable.of(ranks)


def _upper_koszul_faces(ideal: MonomialIdeal, m: Exponents) -> list[tuple[int, ...]]:
    support = [v for v, e in enumerate(m) if e]
    faces: list[tuple[int, ...]] = []
    for k in range(len(support) + 1):
        for face in itertools.combinations(support, k):
            quotient = list(m)
            for v in face:
                quotient[v] -= 1
            if any(all(g <= q for g, q in zip(gen.exponents, quotient, strict=True)) for gen in ideal.generators):
                faces.append(face)
    return faces


def _reduced_homology(faces: list[tuple[int, ...]]) -> list[int]:
    # Augmented chain complex; entry j of the result is reduced homology in dimension j - 1.
    if not faces:
        return []
    top = max(len(f) for f in faces)
    groups = [[f for f in faces if len(f) == k] for k in range(top + 1)]
    index = [{f: i for i, f in enumerate(g)} for g in groups]
    boundaries = [gf2.zeros(0, len(groups[0]))]
    for k in range(1, top + 1):
        mat = gf2.zeros(len(groups[k - 1]), len(groups[k]))
        for col, f in enumerate(groups[k]):
            for drop in range(k):
                mat[index[k - 1][f[:drop] + f[drop + 1 :]], col] = 1
        boundaries.append(mat)
    return gf2.homology_dimensions([len(g) for g in groups], boundaries)


def koszul_betti(ideal: MonomialIdeal) -> BettiTable:
    """
    Betti numbers from upper Koszul simplicial complexes.

    ``beta_{i,m}(S/I)`` is the reduced homology of ``K^m`` in dimension
    ``i - 2`` for ``i >= 1``; ``beta_{0,1} = 1``.
    """
    table = taylor_table(ideal)
    zero = (0,) * ideal.d
    ranks: dict[tuple[int, Exponents], int] = {(0, zero): 1}
    for m in table.degrees:
        if m == zero:
            continue
        for j, r in enumerate(_reduced_homology(_upper_koszul_faces(ideal, m))):
            if r:
                ranks[(j + 1, m)] = r
    return BettiTable.of(ranks)


@lru_cache(maxsize=128)
def betti_numbers(ideal: MonomialIdeal, *, method: BettiMethod = "taylor") -> BettiTable:
    """Multigraded Betti numbers of ``S/I`` over the two-element field."""
    match method:
        case "taylor":
            return taylor_betti(ideal)
        case "koszul":
            return koszul_betti(ideal)


def betti_at(ideal: MonomialIdeal, multidegree: Exponents) -> int:
    """Sum of ``beta_{i,m}(S/I)`` over ``i`` at one multidegree."""
    table = taylor_table(ideal)
    class_id = table.class_of(multidegree)
    if class_id is None:
        return 0
    return sum(_class_homology(table, class_id))


# ---------------------------------------------------------------------------
# Minimality
# ---------------------------------------------------------------------------


class Surplus(BaseModel):
    """A multidegree where the matching leaves more cells than the Betti numbers."""

    model_config = ConfigDict(strict=True, frozen=True)

    multidegree: Exponents
    critical: int
    betti: int


class MinimalityReport(BaseModel):
    """Per-multidegree comparison of critical cells against Betti numbers."""

    model_config = ConfigDict(strict=True, frozen=True)

    minimal: bool
    surplus: tuple[Surplus, ...] = ()


def is_minimal(ideal: MonomialIdeal, matching: Matching) -> MinimalityReport:
    """Whether each lcm class keeps exactly as many critical cells as its total Betti number."""
    table = taylor_table(ideal)
    betti = betti_numbers(ideal)
    touched = matching.matched_subsets()
    critical = Counter(int(table.lcm_ids[s]) for s in range(table.subset_count) if s not in touched)
    surplus = [
        Surplus(multidegree=m, critical=critical[class_id], betti=betti.at(m))
        for class_id, m in enumerate(table.degrees)
        if critical[class_id] != betti.at(m)
    ]
    return MinimalityReport(minimal=not surplus, surplus=tuple(surplus))


class MinimalSearchResult(BaseModel):
    """Outcome of searching for an order whose Barile-Macchia matching is minimal."""

    model_config = ConfigDict(strict=True, frozen=True)

    found: TotalOrder | None
    exhausted: bool
    orders_tested: int


def search_minimal_bm(
    ideal: MonomialIdeal,
    *,
    strategy: Strategy = "exhaustive",
    budget: SearchBudget,
    seed: int,
    heuristics: tuple[TotalOrder, ...] = (),
    symmetry: tuple[tuple[int, ...], ...] = (),
) -> MinimalSearchResult:
    """
    Try candidate orders until one gives a minimal Barile-Macchia matching.

    *symmetry* lists generator permutations preserving the ideal; exhaustive
    enumeration then visits one order per orbit.
    """
    clock = SearchClock(budget)
    for _stage, order in candidate_orders(
        ideal.n, strategy=strategy, heuristics=heuristics, seed=seed, symmetry=symmetry
    ):
        if not clock.charge():
            logger.info("Minimal BM search out of budget after %d orders", clock.orders_tested)
            return MinimalSearchResult(found=None, exhausted=False, orders_tested=clock.orders_tested)
        if is_minimal(ideal, bm_matching(ideal, order)).minimal:
            logger.debug("Minimal BM order %s after %d orders", order.ranking, clock.orders_tested)
            return MinimalSearchResult(found=order, exhausted=False, orders_tested=clock.orders_tested)
    return MinimalSearchResult(found=None, exhausted=strategy == "exhaustive", orders_tested=clock.orders_tested)


# ---------------------------------------------------------------------------
# Certifying minimal generalised Barile-Macchia resolutions of edge ideals
# ---------------------------------------------------------------------------


class DegreeCertificate(BaseModel):
    """The order found for one squarefree multidegree ``m``."""

    model_config = ConfigDict(strict=True, frozen=True)

    multidegree: Exponents
    betti: int
    order: tuple[str, ...]
    critical_count: int


class Certificate(BaseModel):
    """
    Result of the certifier.

    ``True`` means the per-degree orders assemble into a minimal generalised
    Barile-Macchia resolution under the lcm grading. ``False`` means the
    budget ran out; it says nothing about existence.
    """

    model_config = ConfigDict(strict=True, frozen=True)

    result: CertificateResult
    cochordal: bool
    per_degree: tuple[DegreeCertificate, ...] = ()
    orders_tested: int = 0

    def fibered_orders(self, ideal: MonomialIdeal) -> FiberedOrders:
        """Per-fiber orders on *ideal*: the certified generators first, the rest by index."""
        orders: dict[Exponents, TotalOrder] = {}
        for entry in self.per_degree:
            head = [ideal.index_of(text) for text in entry.order]
            tail = [g for g in range(ideal.n) if g not in head]
            orders[entry.multidegree] = TotalOrder(ranking=tuple(head + tail))
        return FiberedOrders(default=TotalOrder.natural(ideal.n), orders=orders)


def certify_minimal_gbm(g: Graph, *, budget: SearchBudget, seed: int = 0) -> Certificate:
    """
    Search for a minimal generalised Barile-Macchia resolution of ``S/I(G)``.

    Co-chordal graphs are accepted outright. Otherwise every squarefree
    multidegree ``m`` realised by the lcm lattice is handled on the induced
    subgraph on its support: orders on that subgraph's edges are tried until
    the Barile-Macchia count of critical subsets with lcm ``m`` equals the
    total Betti number at ``m``. Degrees are processed in ascending order.
    """
    if is_cochordal(g):
        logger.info("Co-chordal graph; certified without search")
        return Certificate(result="True", cochordal=True)

    ideal = graphs.edge_ideal(g)
    table = taylor_table(ideal)
    vertex_list = graphs.vertices(g)
    clock = SearchClock(budget)
    found: list[DegreeCertificate] = []
    for m in sorted(table.degrees):
        if not any(m):
            continue
        target = betti_at(ideal, m)
        sub = graphs.induced_subgraph(g, [v for v, e in zip(vertex_list, m, strict=True) if e])
        sub_ideal = graphs.edge_ideal(sub)
        full = (1,) * sub_ideal.d
        hit: tuple[TotalOrder, int] | None = None
        for _stage, order in candidate_orders(
            sub_ideal.n,
            strategy="exhaustive",
            heuristics=graphs.structured_edge_orders(sub),
            seed=seed,
            symmetry=edge_ideal_symmetry(sub, sub_ideal),
        ):
            if not clock.charge():
                break
            count = bm_critical_count(sub_ideal, order, full)
            if count == target:
                hit = (order, count)
                break
        if hit is None:
            logger.info("No certifying order at %s within budget", m)
            return Certificate(result="False", cochordal=False, per_degree=tuple(found), orders_tested=clock.orders_tested)
        order, count = hit
        found.append(
            DegreeCertificate(
                multidegree=m,
                betti=target,
                order=tuple(sub_ideal.label(i) for i in order.ranking),
                critical_count=count,
            )
        )
    logger.info("Certified %d multidegrees with %d orders", len(found), clock.orders_tested)
    return Certificate(result="True", cochordal=False, per_degree=tuple(found), orders_tested=clock.orders_tested)


__all__ = [
    "BettiMethod",
    "BettiEntry",
    "BettiTable",
    "taylor_betti",
    "koszul_betti",
    "betti_numbers",
    "betti_at",
    "Surplus",
    "MinimalityReport",
    "is_minimal",
    "MinimalSearchResult",
    "search_minimal_bm",
    "DegreeCertificate",
    "Certificate",
    "certify_minimal_gbm",
]
