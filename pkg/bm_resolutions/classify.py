"""
Predicates for generic ideals, ideals with linear quotients and co-chordal graphs.

Also builds the gradings and per-fiber orders under which the generalised
Barile-Macchia matching of such ideals is minimal.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator

from pydantic import BaseModel, ConfigDict

from bm_resolutions import graphs
from bm_resolutions.errors import BudgetExceededError, InputError
from bm_resolutions.graphs import Graph
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, divides, lcm_exponents, members
from bm_resolutions.matchings import FiberedOrders, Grading, LcmGrading
from bm_resolutions.taylor import taylor_table
from bm_resolutions.types import Exponents, FiberLabel, GenIndex, GenSubset

logger = logging.getLogger(__name__)

DEFAULT_LQ_NODE_BUDGET = 1_000_000

# ---------------------------------------------------------------------------
# Generic ideals
# ---------------------------------------------------------------------------


class GenericReport(BaseModel):
    """Verdict of the genericity test, with a violating pair of generators."""

    model_config = ConfigDict(strict=True, frozen=True)

    generic: bool
    witness: tuple[GenIndex, GenIndex] | None = None


def _separates(ideal: MonomialIdeal, top: Exponents, third: Exponents) -> bool:
    floor = [ideal.ord(j) for j in range(ideal.d)]
    return all((t > c) == (t > f) for t, c, f in zip(top, third, floor, strict=True))


def is_generic(ideal: MonomialIdeal) -> GenericReport:
    """
    Check genericity pair by pair.

    Two generators sharing a variable power above the ideal's minimum need a
    third generator dividing their lcm that drops below the pair's maximum in
    exactly the variables where that maximum exceeds the minimum.
    """
    gens = [m.exponents for m in ideal.generators]
    floor = [ideal.ord(j) for j in range(ideal.d)]
    for a in range(ideal.n):
        for b in range(a + 1, ideal.n):
            if not any(gens[a][i] == gens[b][i] > floor[i] for i in range(ideal.d)):
                continue
            top = lcm_exponents(gens[a], gens[b])
            if not any(
                c not in (a, b) and divides(gens[c], top) and _separates(ideal, top, gens[c]) for c in range(ideal.n)
            ):
                return GenericReport(generic=False, witness=(a, b))
    return GenericReport(generic=True)


def generic_fiber_orders(ideal: MonomialIdeal) -> tuple[Grading, FiberedOrders]:
    """
    The lcm grading with, per multidegree ``p``, the union of the inclusion-minimal subsets of lcm ``p`` on top.

    Both blocks keep ascending generator index.
    """
    table = taylor_table(ideal)
    orders: dict[FiberLabel, TotalOrder] = {}
    minimal_union: dict[int, int] = {}
    for s in range(1, table.subset_count):
        if table.bridge_mask(s) == 0:
            class_id = int(table.lcm_ids[s])
            minimal_union[class_id] = minimal_union.get(class_id, 0) | s
    for class_id, union in minimal_union.items():
        head = members(union)
        tail = [g for g in range(ideal.n) if not union >> g & 1]
        orders[table.degrees[class_id]] = TotalOrder(ranking=tuple(head + tail))
    return LcmGrading(ideal), FiberedOrders(default=TotalOrder.natural(ideal.n), orders=orders)


# ---------------------------------------------------------------------------
# Linear quotients
# ---------------------------------------------------------------------------


def _step_variable(base: Exponents, other: Exponents) -> int | None:
    """The variable ``j`` with ``lcm(base, other) = base * x_j``, if there is one."""
    step: int | None = None
    for j, (b, o) in enumerate(zip(base, other, strict=True)):
        if o <= b:
            continue
        if o != b + 1 or step is not None:
            return None
        step = j
    return step


def _admits(gens: list[Exponents], top: int, below: list[int]) -> bool:
    # Every generator below ``top`` needs a linear witness below ``top`` dividing their lcm.
    m = gens[top]
    for other in below:
        target = lcm_exponents(m, gens[other])
        if not any(
            _step_variable(m, gens[w]) is not None and divides(lcm_exponents(m, gens[w]), target) for w in below
        ):
            return False
    return True


def is_linear_quotients_order(ideal: MonomialIdeal, order: TotalOrder) -> bool:
    """Whether *order* (largest first) satisfies the linear-quotients condition."""
    gens = [m.exponents for m in ideal.generators]
    ascending = list(reversed(order.ranking))
    return all(_admits(gens, g, ascending[:k]) for k, g in enumerate(ascending))


def linear_quotients_order(ideal: MonomialIdeal, *, node_budget: int = DEFAULT_LQ_NODE_BUDGET) -> TotalOrder | None:
    """
    Find a linear-quotients order by backtracking, or None when none exists.

    The sequence grows from the smallest generator up; whether a generator can
    go next depends only on the set already placed, so failed sets are
    remembered. Lower-degree generators are tried first.
    """
    gens = [m.exponents for m in ideal.generators]
    candidates = sorted(range(ideal.n), key=lambda g: (sum(gens[g]), g))
    dead: set[int] = set()
    nodes = 0

    def extend(placed: list[int], mask: int) -> list[int] | None:
        nonlocal nodes
        if len(placed) == ideal.n:
            return placed
        if mask in dead:
            return None
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError("linear-quotients search exceeded its node budget")
        for g in candidates:
            if mask >> g & 1 or not _admits(gens, g, placed):
                continue
            found = extend([*placed, g], mask | 1 << g)
            if found is not None:
                return found
        dead.add(mask)
        return None

    sequence = extend([], 0)
    if sequence is None:
        logger.debug("No linear-quotients order after %d nodes", nodes)
        return None
    return TotalOrder(ranking=tuple(reversed(sequence)))


class LqStructure(BaseModel):
    """
    Data attached to a linear-quotients order.

    ``witnesses[m]`` maps each variable ``j`` in ``J_m`` to the chosen
    generator ``n_j^m``; ``fibers`` lists the realised pairs ``(lcm, max)``.
    """

    model_config = ConfigDict(strict=True, frozen=True)

    ideal: MonomialIdeal
    order: TotalOrder
    witnesses: tuple[dict[int, GenIndex], ...]
    fibers: tuple[tuple[Exponents, GenIndex], ...]

    def witness_set(self, m: GenIndex) -> set[GenIndex]:
        """``N_m``."""
        return set(self.witnesses[m].values())


def lq_structure(ideal: MonomialIdeal, order: TotalOrder) -> LqStructure:
    """
    Collect ``J_m``, the witnesses ``n_j^m`` and the realised fibers.

    The witness for ``j`` is the smallest qualifying generator under the order.
    """
    if order.n != ideal.n or not is_linear_quotients_order(ideal, order):
        raise InputError("order does not have linear quotients")
    gens = [m.exponents for m in ideal.generators]
    witnesses: list[dict[int, GenIndex]] = []
    for m in range(ideal.n):
        chosen: dict[int, GenIndex] = {}
        for n in order.ranking[order.position[m] + 1 :]:
            j = _step_variable(gens[m], gens[n])
            if j is not None:
                chosen[j] = n  # later in the ranking means smaller, so the last one wins
        witnesses.append(dict(sorted(chosen.items())))

    table = taylor_table(ideal)
    fibers: set[tuple[Exponents, GenIndex]] = set()
    for s in range(1, table.subset_count):
        top = order.largest(s)
        assert top is not None
        fibers.add((table.degrees[int(table.lcm_ids[s])], top))
    return LqStructure(ideal=ideal, order=order, witnesses=tuple(witnesses), fibers=tuple(sorted(fibers)))


class LinearQuotientsGrading(Grading):
    """
    Grade a subset by its lcm and its largest member under the linear-quotients order.

    Labels are the lcm exponents followed by the index of the largest member,
    ``-1`` for the empty subset.
    """

    def __init__(self, structure: LqStructure) -> None:
        """Bind the grading to a linear-quotients structure."""
        super().__init__(structure.ideal)
        self.order = structure.order

    def label(self, subset: GenSubset) -> FiberLabel:
        """``(lcm, max)``."""
        top = self.order.largest(subset)
        return (*self.table.degrees[int(self.table.lcm_ids[subset])], -1 if top is None else top)

    def leq(self, a: FiberLabel, b: FiberLabel) -> bool:
        """Strictly smaller lcm, or equal lcm and a smaller top generator."""
        if a == b:
            return True
        alpha, beta = a[:-1], b[:-1]
        if alpha != beta:
            return divides(alpha, beta)
        return a[-1] == -1 or (b[-1] != -1 and self.order.greater(b[-1], a[-1]))

    def witness(self, label: FiberLabel) -> Exponents:
        """The lcm part of the label."""
        return label[:-1]


def lq_fiber_orders(structure: LqStructure) -> tuple[Grading, FiberedOrders]:
    """
    Per-fiber orders for the grading by ``(lcm, max)``.

    In fiber ``(alpha, m)``: generators outside ``N_m`` come first in the
    linear-quotients order, then ``N_m`` by descending variable index ``j``.
    """
    grading = LinearQuotientsGrading(structure)
    by_top: dict[GenIndex, TotalOrder] = {}
    for m in range(structure.ideal.n):
        witnesses = structure.witnesses[m]
        n_m = set(witnesses.values())
        head = [g for g in structure.order.ranking if g not in n_m]
        tail = [witnesses[j] for j in sorted(witnesses, reverse=True)]
        by_top[m] = TotalOrder(ranking=tuple(head + tail))
    orders: dict[FiberLabel, TotalOrder] = {(*alpha, m): by_top[m] for alpha, m in structure.fibers}
    return grading, FiberedOrders(default=structure.order, orders=orders)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def is_cochordal(g: Graph) -> bool:
    """Whether the complement of *g* is chordal."""
    return graphs.is_chordal(graphs.complement(g))


def cochordal_graphs(kind: graphs.CorpusKind, *, max_vertices: int) -> Iterator[Graph]:
    """Co-chordal members of a graph corpus."""
    return (g for g in graphs.graph_corpus(kind, max_vertices=max_vertices) if is_cochordal(g))


__all__ = [
    "DEFAULT_LQ_NODE_BUDGET",
    "GenericReport",
    "is_generic",
    "generic_fiber_orders",
    "is_linear_quotients_order",
    "linear_quotients_order",
    "LqStructure",
    "lq_structure",
    "LinearQuotientsGrading",
    "lq_fiber_orders",
    "is_cochordal",
    "cochordal_graphs",
]
