"""
Record builders shared by the CLI and corpus fan-out over worker processes.

Corpus items run concurrently in a process pool driven by ``asyncio``; the
records come back in input order whatever order the workers finish in.
"""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor

from bm_resolutions import graphs
from bm_resolutions.betti import certify_minimal_gbm, is_minimal
from bm_resolutions.bridge_friendly import search_bridge_friendly
from bm_resolutions.graphs import Graph
from bm_resolutions.hypertrees import DEFAULT_HOST_TREE_VERTEX_CAP, Hypergraph, find_rooted_host_tree, hypertree_order
from bm_resolutions.ideal import MonomialIdeal, TotalOrder
from bm_resolutions.matchings import bm_matching
from bm_resolutions.models import CertificateRecord, CorpusLine, Record, RunConfig, SearchRecord, input_digest
from bm_resolutions.order_search import Permutation, edge_ideal_symmetry

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Single-input records
# ---------------------------------------------------------------------------


def hypergraph_heuristics(h: Hypergraph) -> tuple[TotalOrder, ...]:
    """The rooted-hypertree order when a rooted host tree exists within the vertex cap."""
    if len(h.vertices) > DEFAULT_HOST_TREE_VERTEX_CAP:
        return ()
    host = find_rooted_host_tree(h)
    return () if host is None else (hypertree_order(h, host),)


def bridge_friendly_record(
    ideal: MonomialIdeal,
    config: RunConfig,
    digest: str,
    *,
    given: TotalOrder | None = None,
    heuristics: tuple[TotalOrder, ...] = (),
    symmetry: tuple[Permutation, ...] = (),
) -> SearchRecord:
    """Search for a bridge-friendly order and check minimality of what is found."""
    result = search_bridge_friendly(
        ideal,
        strategy=config.strategy,
        budget=config.budget,
        seed=config.seed,
        given=given,
        heuristics=heuristics,
        symmetry=symmetry,
    )
    minimal = None if result.order is None else is_minimal(ideal, bm_matching(ideal, result.order)).minimal
    return SearchRecord.of(ideal, result, Record.header(config, digest, result.orders_tested), minimal)


def certificate_record(g: Graph, config: RunConfig, digest: str) -> CertificateRecord:
    """Run the certifier on one graph."""
    certificate = certify_minimal_gbm(g, budget=config.budget, seed=config.seed)
    ideal = graphs.edge_ideal(g)
    header = Record.header(config, digest, certificate.orders_tested)
    return CertificateRecord.of(ideal, graphs.encode_graph6(g), certificate, header)


# ---------------------------------------------------------------------------
# Corpus fan-out
# ---------------------------------------------------------------------------


def corpus_worker(item: CorpusLine) -> str:
    """Compute one JSON Lines record; runs inside a worker process."""
    g = graphs.parse_graph6(item.graph6)
    digest = input_digest(item.graph6.encode("ascii"))
    match item.command:
        case "bridge-friendly":
            ideal = graphs.edge_ideal(g)
            record = bridge_friendly_record(
                ideal,
                item.config,
                digest,
                heuristics=graphs.structured_edge_orders(g),
                symmetry=edge_ideal_symmetry(g, ideal),
            )
            return record.model_dump_json()
        case "certify-gbm":
            return certificate_record(g, item.config, digest).model_dump_json()


async def gather_in_order[T, R](items: Sequence[T], worker: Callable[[T], R], *, jobs: int) -> list[R]:
    """Apply *worker* to every item with up to *jobs* processes; results follow input order."""
    if jobs <= 1:
        return [worker(item) for item in items]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [loop.run_in_executor(pool, worker, item) for item in items]
        return list(await asyncio.gather(*tasks))


def run_corpus(items: Sequence[CorpusLine], *, jobs: int) -> list[str]:
    """Blocking entry point for the ``corpus`` command."""
    logger.info("Running %d corpus items on %d worker(s)", len(items), jobs)
    return asyncio.run(gather_in_order(items, corpus_worker, jobs=jobs))


__all__ = [
    "hypergraph_heuristics",
    "bridge_friendly_record",
    "certificate_record",
    "corpus_worker",
    "gather_in_order",
    "run_corpus",
]
