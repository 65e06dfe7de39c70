"""
Pydantic data-transfer objects for run configuration and JSON output.

Every record carries the tool version, a hash of its input, the seed and the
budget spent, so identical runs produce identical documents.
"""

from __future__ import annotations

import hashlib

from pydantic import BaseModel, ConfigDict, Field

from bm_resolutions.betti import BettiTable, Certificate, MinimalityReport
from bm_resolutions.bridge_friendly import SearchResult
from bm_resolutions.ideal import Monomial, MonomialIdeal, TotalOrder, members
from bm_resolutions.literals import CertificateResult, CorpusCommand, OutputFormat, SearchOutcome, Strategy
from bm_resolutions.matchings import Matching
from bm_resolutions.morse import MorseComplex
from bm_resolutions.order_search import SearchBudget
from bm_resolutions.types import Exponents, GenSubset

TOOL_VERSION = "0.1.0"

# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


class RunConfig(BaseModel):
    """Everything that determines a CLI run's output."""

    model_config = ConfigDict(strict=True, frozen=True)

    command: str
    inputs: tuple[str, ...]
    strategy: Strategy = "exhaustive"
    budget: SearchBudget = SearchBudget()
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    format: OutputFormat = "json"
    output: str | None = None


def input_digest(data: bytes) -> str:
    """SHA-256 hex digest of an input file's bytes."""
    return hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


class Record(BaseModel):
    """Fields shared by every output document."""

    model_config = ConfigDict(frozen=True)

    tool_version: str = TOOL_VERSION
    input_sha256: str
    seed: int
    orders_tested: int = 0
    max_orders: int
    max_seconds: float

    @classmethod
    def header(cls, config: RunConfig, digest: str, orders_tested: int = 0) -> dict[str, object]:
        """Keyword arguments for the shared fields."""
        return {
            "input_sha256": digest,
            "seed": config.seed,
            "orders_tested": orders_tested,
            "max_orders": config.budget.max_orders,
            "max_seconds": config.budget.max_seconds,
        }


class BettiEntryRecord(BaseModel):
    """One Betti number with its multidegree in both exponent and monomial form."""

    degree: int
    multidegree: Exponents
    monomial: str
    rank: int


class BettiRecord(Record):
    """Output of the ``betti`` command."""

    entries: list[BettiEntryRecord]
    totals: list[int]
    oracles_agree: bool | None = None


def betti_entries(ideal: MonomialIdeal, table: BettiTable) -> list[BettiEntryRecord]:
    """Render table entries with monomial labels."""
    return [
        BettiEntryRecord(
            degree=e.degree,
            multidegree=e.multidegree,
            monomial=Monomial(exponents=e.multidegree).format(ideal.variables),
            rank=e.rank,
        )
        for e in table.entries
    ]


class EdgeRecord(BaseModel):
    """A matched edge as generator strings."""

    sigma: list[str]
    tau: list[str]


def matching_records(ideal: MonomialIdeal, matching: Matching) -> list[EdgeRecord]:
    """Render matched edges."""
    return [EdgeRecord(sigma=ideal.labels(e.sigma), tau=ideal.labels(e.tau)) for e in matching.edges]


class MorseComplexRecord(BaseModel):
    """Critical cells as sorted index arrays plus sparse ``[row, col, 1]`` triplets per degree."""

    cells: list[list[list[int]]]
    boundaries: list[list[tuple[int, int, int]]]

    @classmethod
    def of(cls, complex_: MorseComplex) -> MorseComplexRecord:
        """Serialise a Morse complex."""
        return cls(
            cells=[[members(s) for s in group] for group in complex_.cells],
            boundaries=[
                [(int(r), int(c), 1) for r, c in zip(*mat.nonzero(), strict=True)] for mat in complex_.boundaries[1:]
            ],
        )


class SurplusRecord(BaseModel):
    """A multidegree where the resolution is not minimal."""

    monomial: str
    critical: int
    betti: int


def surplus_records(ideal: MonomialIdeal, report: MinimalityReport) -> list[SurplusRecord]:
    """Render a minimality report."""
    return [
        SurplusRecord(
            monomial=Monomial(exponents=s.multidegree).format(ideal.variables), critical=s.critical, betti=s.betti
        )
        for s in report.surplus
    ]


class BmRecord(Record):
    """Output of the ``bm`` command."""

    order: list[str]
    order_source: str
    matching: list[EdgeRecord]
    critical_counts: list[int]
    minimal: bool
    surplus: list[SurplusRecord]
    morse_complex: MorseComplexRecord | None = None


def order_labels(ideal: MonomialIdeal, order: TotalOrder) -> list[str]:
    """Generators largest first."""
    return [ideal.label(g) for g in order.ranking]


class SearchRecord(Record):
    """Output of the ``bridge-friendly`` command."""

    result: SearchOutcome
    order: list[str] | None = None
    stage: str | None = None
    counterexample_subset: list[str] | None = None
    minimal: bool | None = None

    @classmethod
    def of(cls, ideal: MonomialIdeal, result: SearchResult, header: dict[str, object], minimal: bool | None) -> SearchRecord:
        """Render a search result."""
        return cls.model_validate(
            {
                **header,
                "result": result.outcome,
                "order": order_labels(ideal, result.order) if result.order is not None else None,
                "stage": result.stage,
                "counterexample_subset": _subset_labels(ideal, result.counterexample),
                "minimal": minimal,
            }
        )


def _subset_labels(ideal: MonomialIdeal, subset: GenSubset | None) -> list[str] | None:
    return None if subset is None else ideal.labels(subset)


class DegreeRecord(BaseModel):
    """One certified multidegree."""

    m: str
    a: int
    order: list[str]
    critical_count: int


class CertificateRecord(Record):
    """Output of the ``certify-gbm`` command."""

    graph: str
    result: CertificateResult
    cochordal: bool
    per_degree: list[DegreeRecord]

    @classmethod
    def of(
        cls, ideal: MonomialIdeal, graph6: str, certificate: Certificate, header: dict[str, object]
    ) -> CertificateRecord:
        """Render a certificate."""
        return cls.model_validate(
            {
                **header,
                "graph": graph6,
                "result": certificate.result,
                "cochordal": certificate.cochordal,
                "per_degree": [
                    DegreeRecord(
                        m=Monomial(exponents=d.multidegree).format(ideal.variables),
                        a=d.betti,
                        order=list(d.order),
                        critical_count=d.critical_count,
                    )
                    for d in certificate.per_degree
                ],
            }
        )


class HypertreeRecord(Record):
    """Output of the ``hypertree`` command."""

    rooted: bool
    host_edges: list[tuple[str, str]] | None = None
    root: str | None = None
    order: list[str] | None = None
    bridge_friendly: bool | None = None
    minimal: bool | None = None
    message: str | None = None


class CorpusLine(BaseModel):
    """One unit of work for a corpus run."""

    model_config = ConfigDict(strict=True, frozen=True)

    command: CorpusCommand
    graph6: str
    config: RunConfig


__all__ = [
    "TOOL_VERSION",
    "RunConfig",
    "input_digest",
    "Record",
    "BettiEntryRecord",
    "BettiRecord",
    "betti_entries",
    "EdgeRecord",
    "matching_records",
    "MorseComplexRecord",
    "SurplusRecord",
    "surplus_records",
    "BmRecord",
    "order_labels",
    "SearchRecord",
    "DegreeRecord",
    "CertificateRecord",
    "HypertreeRecord",
    "CorpusLine",
]
