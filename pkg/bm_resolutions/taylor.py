"""
Per-ideal lookup tables over every subset of the minimal generators.

Every operation on the Taylor digraph reduces to three facts about a subset
``s``: the lcm class it lives in, which of its members are bridges, and which
non-members divide its lcm. They are computed once per ideal, vectorised over
all ``2**n`` subsets, and shared by the matching, Morse and Betti code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from bm_resolutions.ideal import DEFAULT_SUBSET_CAP, MonomialIdeal, check_enumeration_cap, lcm_exponents
from bm_resolutions.types import Exponents, GenIndex, GenSubset

type IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True, eq=False)
class TaylorTable:
    """Lookup tables indexed by subset bit vectors."""

    n: int
    # lcm class id of every subset; ids index ``degrees``.
    lcm_ids: IntArray
    # Exponent vector of each lcm class, id order = first appearance by subset value.
    degrees: tuple[Exponents, ...]
    # Bit vector of the bridges of every subset.
    bridges: IntArray
    # Bit vector of the gaps of every subset.
    gaps: IntArray
    sizes: IntArray

    @property
    def subset_count(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    def class_of(self, exponents: Exponents) -> int | None:
        """lcm class id of a multidegree, or None if no subset realises it."""
        try:
            return self.degrees.index(exponents)
        except ValueError:
            return None

    def class_members(self, class_id: int) -> list[GenSubset]:
        """All subsets in one lcm class, ascending."""
        return [int(s) for s in np.flatnonzero(self.lcm_ids == class_id)]

    def divisors(self, subset: GenSubset) -> GenSubset:
        """Generators dividing ``lcm(subset)``: the members plus the gaps."""
        return subset | int(self.gaps[subset])

    def bridge_mask(self, subset: GenSubset) -> GenSubset:
        """Bridges of *subset* as a bit vector."""
        return int(self.bridges[subset])

    def gap_mask(self, subset: GenSubset) -> GenSubset:
        """Gaps of *subset* as a bit vector."""
        return int(self.gaps[subset])


def build_table(ideal: MonomialIdeal, *, cap: int = DEFAULT_SUBSET_CAP) -> TaylorTable:
    """Compute the tables for *ideal* without caching."""
    check_enumeration_cap(ideal, cap)
    n = ideal.n
    count = 1 << n
    gens = [m.exponents for m in ideal.generators]

    lcms: list[Exponents] = [(0,) * ideal.d] * count
    for s in range(1, count):
        low = s & -s
        lcms[s] = lcm_exponents(lcms[s ^ low], gens[low.bit_length() - 1])

    ids: dict[Exponents, int] = {}
    raw_ids = np.empty(count, dtype=np.int64)
    for s, e in enumerate(lcms):
        raw_ids[s] = ids.setdefault(e, len(ids))

    idx = np.arange(count, dtype=np.int64)
    bridges = np.zeros(count, dtype=np.int64)
    gaps = np.zeros(count, dtype=np.int64)
    sizes = np.zeros(count, dtype=np.int64)
    for i in range(n):
        bit = np.int64(1 << i)
        inside = (idx & bit) != 0
        sizes += inside
        flipped_same = raw_ids[idx ^ bit] == raw_ids
        bridges |= np.where(inside & flipped_same, bit, 0)
        gaps |= np.where(~inside & flipped_same, bit, 0)

    return TaylorTable(
        n=n,
        lcm_ids=raw_ids,
        degrees=tuple(ids),
        bridges=bridges,
        gaps=gaps,
        sizes=sizes,
    )


@lru_cache(maxsize=256)
def taylor_table(ideal: MonomialIdeal) -> TaylorTable:
    """Cached :func:`build_table` with the default enumeration cap."""
    return build_table(ideal)


def lowest_ranked(mask: GenSubset, position: tuple[int, ...]) -> GenIndex | None:
    """The member of *mask* smallest under the order, i.e. with the largest position."""
    best: GenIndex | None = None
    best_pos = -1
    i = 0
    while mask:
        if mask & 1 and position[i] > best_pos:
            best, best_pos = i, position[i]
        mask >>= 1
        i += 1
    return best


__all__ = ["TaylorTable", "build_table", "taylor_table", "lowest_ranked"]
