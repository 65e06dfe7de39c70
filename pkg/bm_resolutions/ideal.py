"""Monomials, minimal generating sets, lcm computations and the lcm lattice."""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from functools import cached_property
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, model_validator

from bm_resolutions.errors import BudgetExceededError, InputError
from bm_resolutions.types import Exponents, GenIndex, GenSubset

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

MAX_EXPONENT = 2**16 - 1
DEFAULT_SUBSET_CAP = 25

Exponent = Annotated[int, Field(ge=0, le=MAX_EXPONENT)]

_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?:\^(\d+))?$")

# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


class Monomial(BaseModel):
    """Exponent vector over a fixed, ordered variable set."""

    model_config = ConfigDict(strict=True, frozen=True)

    exponents: tuple[Exponent, ...]

    @classmethod
    def of(cls, exponents: Iterable[int]) -> Monomial:
        """Build a monomial from any iterable of exponents."""
        return cls(exponents=tuple(exponents))

    @classmethod
    def one(cls, d: int) -> Monomial:
        """Return the monomial 1 in *d* variables."""
        return cls(exponents=(0,) * d)

    @property
    def d(self) -> int:
        """Number of variables."""
        return len(self.exponents)

    @property
    def degree(self) -> int:
        """Total degree."""
        return sum(self.exponents)

    @property
    def is_one(self) -> bool:
        """True for the monomial 1."""
        return not any(self.exponents)

    @property
    def support(self) -> tuple[int, ...]:
        """Indices of the variables that divide this monomial."""
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def ord(self, i: int) -> int:
        """Highest power of the *i*-th variable dividing this monomial."""
        return self.exponents[i]

    def divides(self, other: Monomial) -> bool:
        """Return whether this monomial divides *other*."""
        return divides(self.exponents, other.exponents)

    def lcm(self, other: Monomial) -> Monomial:
        """Componentwise maximum."""
        return Monomial(exponents=lcm_exponents(self.exponents, other.exponents))

    def format(self, variables: Sequence[str]) -> str:
        """Render as ``x1^2*x3``; the monomial 1 renders as ``1``."""
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(variables, self.exponents, strict=True) if e]
        return "*".join(factors) if factors else "1"


type Multidegree = Monomial


def divides(a: Exponents, b: Exponents) -> bool:
    """Return whether exponent vector *a* is componentwise below *b*."""
    return all(x <= y for x, y in zip(a, b, strict=True))


def lcm_exponents(a: Exponents, b: Exponents) -> Exponents:
    """Componentwise maximum of two exponent vectors."""
    return tuple(max(x, y) for x, y in zip(a, b, strict=True))


# ---------------------------------------------------------------------------
# Monomial ideals
# ---------------------------------------------------------------------------


class MonomialIdeal(BaseModel):
    """A monomial ideal given by its minimal generators, each with a stable index."""

    model_config = ConfigDict(strict=True, frozen=True)

    variables: tuple[str, ...]
    generators: tuple[Monomial, ...]

    @model_validator(mode="after")
    def _check_minimal(self) -> MonomialIdeal:
        if not self.generators:
            raise InputError("empty generating set")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("duplicate variable names")
        d = len(self.variables)
        for m in self.generators:
            if m.d != d:
                raise InputError(f"generator has {m.d} exponents, expected {d}")
            if m.is_one:
                raise InputError("the monomial 1 cannot be a generator")
        for i, a in enumerate(self.generators):
            for j, b in enumerate(self.generators):
                if i != j and a.divides(b):
                    raise InputError(f"generator {i} divides generator {j}; not a minimal generating set")
        return self

    @property
    def n(self) -> int:
        """Number of minimal generators."""
        return len(self.generators)

    @property
    def d(self) -> int:
        """Number of variables."""
        return len(self.variables)

    @property
    def full(self) -> GenSubset:
        """The subset of all generators."""
        return (1 << self.n) - 1

    @property
    def is_squarefree(self) -> bool:
        """True when every generator is squarefree."""
        return all(e <= 1 for m in self.generators for e in m.exponents)

    def ord(self, i: int) -> int:
        """Smallest power of the *i*-th variable among the generators."""
        return min(m.exponents[i] for m in self.generators)

    def label(self, index: GenIndex) -> str:
        """Text form of generator *index*."""
        return self.generators[index].format(self.variables)

    def labels(self, subset: GenSubset) -> list[str]:
        """Text forms of the members of *subset*, by ascending index."""
        return [self.label(i) for i in members(subset)]

    def index_of(self, text: str) -> GenIndex:
        """Return the index of the generator written as *text*."""
        target = parse_monomial(text, self.variables)
        for i, m in enumerate(self.generators):
            if m == target:
                return i
        raise InputError(f"{text!r} is not a minimal generator")

    def contains(self, m: Monomial) -> bool:
        """Ideal membership of a monomial."""
        return any(g.divides(m) for g in self.generators)


def normalize_mingens(raw: Sequence[Monomial], *, variables: Sequence[str] | None = None) -> MonomialIdeal:
    """
    Return the ideal minimally generated by *raw*.

    Drops duplicates and every monomial divisible by another one, keeping the
    first-occurrence order of the survivors so generator indices are stable.
    """
    if not raw:
        raise InputError("empty generating set")
    d = raw[0].d
    if any(m.d != d for m in raw):
        raise InputError("monomials over different variable counts")
    names = tuple(variables) if variables is not None else tuple(f"x{i + 1}" for i in range(d))
    if len(names) != d:
        raise InputError(f"{len(names)} variable names for {d} exponents")

    unique: list[Monomial] = []
    for m in raw:
        if m not in unique:
            unique.append(m)
    kept = [m for m in unique if not any(o != m and o.divides(m) for o in unique)]
    if not kept:
        raise InputError("empty generating set")
    return MonomialIdeal(variables=names, generators=tuple(kept))


# ---------------------------------------------------------------------------
# Subsets of generators
# ---------------------------------------------------------------------------


def members(subset: GenSubset) -> list[GenIndex]:
    """Generator indices in *subset*, ascending."""
    out: list[GenIndex] = []
    i = 0
    while subset:
        if subset & 1:
            out.append(i)
        subset >>= 1
        i += 1
    return out


def subset_of(indices: Iterable[GenIndex]) -> GenSubset:
    """Bit vector with the given indices set."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def check_subset(ideal: MonomialIdeal, subset: GenSubset) -> None:
    """Raise unless *subset* only names generators of *ideal*."""
    if subset < 0 or subset >> ideal.n:
        raise InputError(f"subset {subset:#b} is not a subset of the {ideal.n} generators")


def check_enumeration_cap(ideal: MonomialIdeal, cap: int = DEFAULT_SUBSET_CAP) -> None:
    """Refuse to enumerate all subsets of more than *cap* generators."""
    if ideal.n > cap:
        raise BudgetExceededError("generator count exceeds enumeration budget")


# ---------------------------------------------------------------------------
# Total orders
# ---------------------------------------------------------------------------


class TotalOrder(BaseModel):
    """A total order on generator indices; position 0 holds the largest generator."""

    model_config = ConfigDict(strict=True, frozen=True)

    ranking: tuple[int, ...]

    @model_validator(mode="after")
    def _check_permutation(self) -> TotalOrder:
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise InputError(f"{self.ranking} is not a permutation of 0..{len(self.ranking) - 1}")
        return self

    @classmethod
    def natural(cls, n: int) -> TotalOrder:
        """Index order: generator 0 is the largest."""
        return cls(ranking=tuple(range(n)))

    @classmethod
    def of(cls, ranking: Iterable[int]) -> TotalOrder:
        """Build an order from generator indices listed largest first."""
        return cls(ranking=tuple(ranking))

    @cached_property
    def position(self) -> tuple[int, ...]:
        """Inverse permutation: ``position[g]`` is the rank of generator g."""
        pos = [0] * len(self.ranking)
        for rank, g in enumerate(self.ranking):
            pos[g] = rank
        return tuple(pos)

    @property
    def n(self) -> int:
        """Number of ordered generators."""
        return len(self.ranking)

    def greater(self, a: GenIndex, b: GenIndex) -> bool:
        """Return whether a dominates b."""
        return self.position[a] < self.position[b]

    def below(self, g: GenIndex) -> GenSubset:
        """Bit vector of the generators dominated by g."""
        return subset_of(self.ranking[self.position[g] + 1 :])

    def smallest(self, subset: GenSubset) -> GenIndex | None:
        """The smallest member of subset, or None when it is empty."""
        best: GenIndex | None = None
        for g in members(subset):
            if best is None or self.position[g] > self.position[best]:
                best = g
        return best

    def largest(self, subset: GenSubset) -> GenIndex | None:
        """The largest member of subset, or None when it is empty."""
        best: GenIndex | None = None
        for g in members(subset):
            if best is None or self.position[g] < self.position[best]:
                best = g
        return best

    def descending(self, subset: GenSubset) -> list[GenIndex]:
        """Members of subset from largest to smallest."""
        return sorted(members(subset), key=lambda g: self.position[g])


def parse_order(ideal: MonomialIdeal, text: str) -> TotalOrder:
    """Parse a comma-separated list of generators, largest first."""
    ranking = [ideal.index_of(token) for token in text.split(",") if token.strip()]
    if len(ranking) != ideal.n:
        raise InputError(f"order lists {len(ranking)} generators, the ideal has {ideal.n}")
    return TotalOrder(ranking=tuple(ranking))


# ---------------------------------------------------------------------------
# lcm map and lattice
# ---------------------------------------------------------------------------


def lcm_of(ideal: MonomialIdeal, subset: GenSubset) -> Multidegree:
    """lcm of the generators in *subset*; the empty subset gives the monomial 1."""
    check_subset(ideal, subset)
    exps: Exponents = (0,) * ideal.d
    for i in members(subset):
        exps = lcm_exponents(exps, ideal.generators[i].exponents)
    return Monomial(exponents=exps)


def lcm_lattice(ideal: MonomialIdeal, *, cap: int = DEFAULT_SUBSET_CAP) -> set[Multidegree]:
    """All lcms of subsets of the minimal generators, the monomial 1 included."""
    check_enumeration_cap(ideal, cap)
    from bm_resolutions.taylor import taylor_table

    return {Monomial(exponents=e) for e in taylor_table(ideal).degrees}


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------


def _parse_factors(text: str) -> list[tuple[str, int]]:
    body = text.strip()
    if not body:
        raise InputError("empty monomial")
    if body == "1":
        return []
    factors: list[tuple[str, int]] = []
    for token in body.split("*"):
        match = _FACTOR_RE.match(token.strip())
        if match is None:
            raise InputError(f"malformed factor {token!r} in {text!r}")
        power = int(match.group(2)) if match.group(2) is not None else 1
        factors.append((match.group(1), power))
    return factors


def parse_monomial(text: str, variables: Sequence[str]) -> Monomial:
    """Parse ``x1^2*x3`` over a known variable list."""
    index = {name: i for i, name in enumerate(variables)}
    exps = [0] * len(variables)
    for name, power in _parse_factors(text):
        if name not in index:
            raise InputError(f"unknown variable {name!r}")
        exps[index[name]] += power
    return Monomial(exponents=tuple(exps))


def parse_ideal_text(text: str) -> MonomialIdeal:
    """
    Parse an ideal file: one monomial per line.

    Blank lines and ``#`` comments are skipped. The variable set is the union
    of names, ordered by first appearance.
    """
    rows: list[list[tuple[str, int]]] = []
    names: list[str] = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        factors = _parse_factors(body)
        rows.append(factors)
        for name, _ in factors:
            if name not in names:
                names.append(name)
    if not rows:
        raise InputError("empty generating set")
    index = {name: i for i, name in enumerate(names)}
    raw: list[Monomial] = []
    for factors in rows:
        exps = [0] * len(names)
        for name, power in factors:
            exps[index[name]] += power
        if any(e > MAX_EXPONENT for e in exps):
            raise InputError(f"exponent exceeds {MAX_EXPONENT}")
        raw.append(Monomial(exponents=tuple(exps)))
    return normalize_mingens(raw, variables=names)


__all__ = [
    "MAX_EXPONENT",
    "DEFAULT_SUBSET_CAP",
    "Monomial",
    "Multidegree",
    "MonomialIdeal",
    "normalize_mingens",
    "members",
    "subset_of",
    "check_subset",
    "check_enumeration_cap",
    "TotalOrder",
    "parse_order",
    "lcm_of",
    "lcm_lattice",
    "divides",
    "lcm_exponents",
    "parse_monomial",
    "parse_ideal_text",
]
