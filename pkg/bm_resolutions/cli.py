"""
Console entry-point for bm-resolutions.

Run ``bm-resolutions betti ideal.txt`` for a Betti table, or
``bm-resolutions bridge-friendly --kind graph net.txt`` to search for a
bridge-friendly order. Results are JSON on stdout (or ``--output``); logs go
to stderr.

Exit codes: 0 success, 1 valid but negative result, 2 input error,
3 budget exhausted.
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any, get_args

import click
from pydantic import BaseModel, ValidationError

from bm_resolutions import graphs
from bm_resolutions.betti import betti_numbers, is_minimal
from bm_resolutions.bridge_friendly import is_bridge_friendly
from bm_resolutions.errors import BudgetExceededError, ResolutionsError
from bm_resolutions.hypertrees import (
    HostTree,
    Hypergraph,
    find_rooted_host_tree,
    hyperedge_ideal,
    hypertree_order,
    is_rooted_at,
    parse_hypergraph_json,
    verify_host,
)
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, parse_ideal_text, parse_order
from bm_resolutions.literals import CorpusCommand, InputKind, OutputFormat, Strategy
from bm_resolutions.matchings import bm_matching
from bm_resolutions.models import (
    BettiRecord,
    BmRecord,
    CorpusLine,
    HypertreeRecord,
    MorseComplexRecord,
    Record,
    RunConfig,
    betti_entries,
    input_digest,
    matching_records,
    order_labels,
    surplus_records,
)
from bm_resolutions.morse import critical_counts, morse_differential
from bm_resolutions.order_search import (
    DEFAULT_MAX_ORDERS,
    DEFAULT_MAX_SECONDS,
    Permutation,
    SearchBudget,
    edge_ideal_symmetry,
)
from bm_resolutions.runner import bridge_friendly_record, certificate_record, hypergraph_heuristics, run_corpus

# ---------------------------------------------------------------------------
# Logging setup --------------------------------------------------------------
# ---------------------------------------------------------------------------

logging.basicConfig(
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    level=logging.INFO,
)
logger = logging.getLogger("cli")

EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

# ---------------------------------------------------------------------------
# Input loading --------------------------------------------------------------
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LoadedInput:
    """An ideal plus what its source can offer to order searches."""

    ideal: MonomialIdeal
    digest: str
    heuristics: tuple[TotalOrder, ...] = ()
    symmetry: tuple[Permutation, ...] = ()


def _read(path: Path) -> tuple[str, str]:
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise click.BadParameter(f"{path} is not UTF-8 text") from exc
    return text, input_digest(data)


def _single_graph(text: str) -> graphs.Graph:
    parsed = graphs.parse_graph_lines(text)
    if len(parsed) != 1:
        raise click.UsageError(f"file holds {len(parsed)} graphs; use the corpus command")
    return parsed[0]


def load_input(path: Path, kind: InputKind) -> LoadedInput:
    """Parse *path* as a monomial ideal, a graph or a hypergraph."""
    text, digest = _read(path)
    match kind:
        case "ideal":
            return LoadedInput(ideal=parse_ideal_text(text), digest=digest)
        case "graph":
            g = _single_graph(text)
            ideal = graphs.edge_ideal(g)
            return LoadedInput(
                ideal=ideal,
                digest=digest,
                heuristics=graphs.structured_edge_orders(g),
                symmetry=edge_ideal_symmetry(g, ideal),
            )
        case "hypergraph":
            h = parse_hypergraph_json(text)
            return LoadedInput(ideal=hyperedge_ideal(h), digest=digest, heuristics=hypergraph_heuristics(h))


# ---------------------------------------------------------------------------
# Output & exit codes --------------------------------------------------------
# ---------------------------------------------------------------------------


def emit(record: BaseModel, *, fmt: OutputFormat, output: Path | None) -> None:
    """Write one record as an indented document (json) or one line (jsonl)."""
    body = record.model_dump_json(indent=2) if fmt == "json" else record.model_dump_json()
    if output is None:
        click.echo(body)
    else:
        output.write_text(body + "\n", encoding="utf-8")


def exit_codes[**P, R](fn: Callable[P, R]) -> Callable[P, R]:
    """Translate library errors into exit codes 2 and 3."""

    @functools.wraps(fn)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return fn(*args, **kwargs)
        except BudgetExceededError as exc:
            click.echo(f"budget exceeded: {exc}", err=True)
            raise SystemExit(EXIT_BUDGET) from exc
        except (ResolutionsError, ValidationError) as exc:
            click.echo(f"input error: {exc}", err=True)
            raise SystemExit(EXIT_INPUT) from exc

    return wrapper


def _input_path() -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    return click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))


def output_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    """``--format`` and ``--output``."""
    fn = click.option(
        "--output", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write here instead of stdout."
    )(fn)
    return click.option("--format", "fmt", type=click.Choice(get_args(OutputFormat)), default="json")(fn)


def search_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Strategy, budget and seed."""
    fn = click.option("--seed", type=int, default=0, help="RNG seed for the random stage.")(fn)
    fn = click.option(
        "--budget-seconds", type=click.FloatRange(min=0), default=DEFAULT_MAX_SECONDS, help="Wall-clock limit."
    )(fn)
    fn = click.option(
        "--budget-orders", type=click.IntRange(min=0), default=DEFAULT_MAX_ORDERS, help="Maximum orders tested."
    )(fn)
    return click.option(
        "--strategy",
        type=click.Choice(get_args(Strategy)),
        default="exhaustive",
        help="Last search stage to run.",
    )(fn)


def _kind_option(fn: Callable[..., Any]) -> Callable[..., Any]:
    return click.option("--kind", type=click.Choice(get_args(InputKind)), default="ideal", help="Input file format.")(
        fn
    )


def _config(command: str, path: Path, **kwargs: Any) -> RunConfig:
    budget = SearchBudget(
        max_orders=kwargs.pop("budget_orders", DEFAULT_MAX_ORDERS),
        max_seconds=float(kwargs.pop("budget_seconds", DEFAULT_MAX_SECONDS)),
    )
    return RunConfig(command=command, inputs=(str(path),), budget=budget, **kwargs)


# ---------------------------------------------------------------------------
# Click commands -------------------------------------------------------------
# ---------------------------------------------------------------------------


@click.group()
@click.option("--verbose", is_flag=True, help="Log at DEBUG level.")
def cli(verbose: bool) -> None:  # noqa: D401
    """Barile-Macchia resolutions of monomial ideals."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


@cli.command("betti", help="Multigraded Betti numbers of S/I.")
@_input_path()
@_kind_option
@click.option("--cross-check", is_flag=True, help="Also compute through upper Koszul complexes and compare.")
@output_options
@exit_codes
def betti(path: Path, kind: InputKind, cross_check: bool, fmt: OutputFormat, output: Path | None) -> None:
    """Print the Betti table; exit 1 when the two computations disagree."""
    loaded = load_input(path, kind)
    table = betti_numbers(loaded.ideal)
    agree = None
    if cross_check:
        agree = betti_numbers(loaded.ideal, method="koszul") == table
    config = _config("betti", path, format=fmt)
    record = BettiRecord.model_validate(
        {
            **Record.header(config, loaded.digest),
            "entries": betti_entries(loaded.ideal, table),
            "totals": table.totals(),
            "oracles_agree": agree,
        }
    )
    emit(record, fmt=fmt, output=output)
    if agree is False:
        logger.error("Taylor and Koszul Betti numbers disagree")
        raise SystemExit(EXIT_NEGATIVE)


@cli.command("bm", help="Barile-Macchia matching, critical counts and minimality for one order.")
@_input_path()
@_kind_option
@click.option("--order", "order_text", default=None, help="Comma-separated generators, largest first.")
@click.option("--with-complex", is_flag=True, help="Include the Morse differential.")
@output_options
@exit_codes
def bm(
    path: Path, kind: InputKind, order_text: str | None, with_complex: bool, fmt: OutputFormat, output: Path | None
) -> None:
    """Print the matching; exit 1 when the resolution is not minimal."""
    loaded = load_input(path, kind)
    ideal = loaded.ideal
    order = TotalOrder.natural(ideal.n) if order_text is None else parse_order(ideal, order_text)
    matching = bm_matching(ideal, order)
    report = is_minimal(ideal, matching)
    complex_record = MorseComplexRecord.of(morse_differential(ideal, matching)) if with_complex else None
    config = _config("bm", path, format=fmt)
    record = BmRecord.model_validate(
        {
            **Record.header(config, loaded.digest),
            "order": order_labels(ideal, order),
            "order_source": "input" if order_text is None else "given",
            "matching": matching_records(ideal, matching),
            "critical_counts": critical_counts(ideal, matching),
            "minimal": report.minimal,
            "surplus": surplus_records(ideal, report),
            "morse_complex": complex_record,
        }
    )
    emit(record, fmt=fmt, output=output)
    if not report.minimal:
        raise SystemExit(EXIT_NEGATIVE)


@cli.command("bridge-friendly", help="Search for a bridge-friendly total order.")
@_input_path()
@_kind_option
@click.option("--order", "order_text", default=None, help="Order for the 'given' stage, largest first.")
@search_options
@output_options
@exit_codes
def bridge_friendly(
    path: Path,
    kind: InputKind,
    order_text: str | None,
    strategy: Strategy,
    budget_orders: int,
    budget_seconds: float,
    seed: int,
    fmt: OutputFormat,
    output: Path | None,
) -> None:
    """Exit 1 when no order is bridge-friendly, 3 when the budget ran out first."""
    loaded = load_input(path, kind)
    given = None if order_text is None else parse_order(loaded.ideal, order_text)
    config = _config(
        "bridge-friendly",
        path,
        strategy=strategy,
        budget_orders=budget_orders,
        budget_seconds=budget_seconds,
        seed=seed,
        format=fmt,
    )
    record = bridge_friendly_record(
        loaded.ideal,
        config,
        loaded.digest,
        given=given,
        heuristics=loaded.heuristics,
        symmetry=loaded.symmetry,
    )
    emit(record, fmt=fmt, output=output)
    match record.result:
        case "Found":
            return
        case "NotBridgeFriendly":
            raise SystemExit(EXIT_NEGATIVE)
        case "Unknown":
            raise SystemExit(EXIT_BUDGET)


@cli.command("certify-gbm", help="Certify a minimal generalised Barile-Macchia resolution of an edge ideal.")
@_input_path()
@click.option("--budget-orders", type=click.IntRange(min=0), default=DEFAULT_MAX_ORDERS)
@click.option("--budget-seconds", type=click.FloatRange(min=0), default=DEFAULT_MAX_SECONDS)
@click.option("--seed", type=int, default=0)
@output_options
@exit_codes
def certify_gbm(
    path: Path, budget_orders: int, budget_seconds: float, seed: int, fmt: OutputFormat, output: Path | None
) -> None:
    """Exit 3 when the budget ran out before every multidegree was certified."""
    text, digest = _read(path)
    g = _single_graph(text)
    config = _config(
        "certify-gbm", path, budget_orders=budget_orders, budget_seconds=budget_seconds, seed=seed, format=fmt
    )
    record = certificate_record(g, config, digest)
    emit(record, fmt=fmt, output=output)
    if record.result == "False":
        raise SystemExit(EXIT_BUDGET)


def _hypertree_record(
    h: Hypergraph, host: HostTree | None, header: dict[str, object], message: str | None = None
) -> HypertreeRecord:
    if host is None or host.root is None:
        return HypertreeRecord.model_validate({**header, "rooted": False, "message": message})
    ideal = hyperedge_ideal(h)
    order = hypertree_order(h, host)
    friendly = is_bridge_friendly(ideal, order).friendly
    minimal = is_minimal(ideal, bm_matching(ideal, order)).minimal
    return HypertreeRecord.model_validate(
        {
            **header,
            "rooted": True,
            "host_edges": sorted(tuple(sorted((str(u), str(v)))) for u, v in graphs.edges(host.graph)),
            "root": host.root,
            "order": order_labels(ideal, order),
            "bridge_friendly": friendly,
            "minimal": minimal,
        }
    )


def _rooted_host(h: Hypergraph, host: HostTree, root: str | None) -> HostTree | None:
    if not verify_host(h, host):
        return None
    roots = [root] if root is not None else sorted(h.vertices)
    for r in roots:
        if is_rooted_at(h, host, r):
            return host.rooted(r)
    return None


@cli.command("hypertree", help="Order a rooted hypertree's edge ideal and check bridge-friendliness.")
@_input_path()
@click.option("--host", "host_edges", type=(str, str), multiple=True, help="Host tree edge; repeat for each edge.")
@click.option("--root", default=None, help="Root of the host tree; every vertex is tried when omitted.")
@click.option("--search-host", is_flag=True, help="Search all labelled trees for a rooted host.")
@click.option(
    "--budget-orders", type=click.IntRange(min=0), default=None, help="Maximum host trees tried by --search-host."
)
@click.option(
    "--budget-seconds", type=click.FloatRange(min=0), default=None, help="Wall-clock limit for --search-host."
)
@output_options
@exit_codes
def hypertree(
    path: Path,
    host_edges: tuple[tuple[str, str], ...],
    root: str | None,
    search_host: bool,
    budget_orders: int | None,
    budget_seconds: float | None,
    fmt: OutputFormat,
    output: Path | None,
) -> None:
    """Exit 1 when no rooted host is available or the order is not bridge-friendly, 3 when the host search runs out."""
    if bool(host_edges) == search_host:
        raise click.UsageError("give either --host edges or --search-host")
    text, digest = _read(path)
    h = parse_hypergraph_json(text)
    header = Record.header(_config("hypertree", path, format=fmt), digest)
    if search_host:
        budget: SearchBudget | None = None
        if budget_orders is not None or budget_seconds is not None:
            budget = SearchBudget(
                max_orders=budget_orders if budget_orders is not None else DEFAULT_MAX_ORDERS,
                max_seconds=budget_seconds if budget_seconds is not None else DEFAULT_MAX_SECONDS,
            )
        record = _hypertree_record(h, find_rooted_host_tree(h, budget=budget), header, "no rooted host tree")
    else:
        given = HostTree.of(host_edges, vertices=h.vertices)
        record = _hypertree_record(h, _rooted_host(h, given, root), header, "host tree is not a rooted host")
    emit(record, fmt=fmt, output=output)
    if not record.bridge_friendly:
        raise SystemExit(EXIT_NEGATIVE)


@cli.command("corpus", help="Run bridge-friendly or certify-gbm over a graph6 file, one JSON line per graph.")
@_input_path()
@click.option("--command", "command", type=click.Choice(get_args(CorpusCommand)), required=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Worker processes.")
@search_options
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@exit_codes
def corpus(
    path: Path,
    command: CorpusCommand,
    jobs: int,
    strategy: Strategy,
    budget_orders: int,
    budget_seconds: float,
    seed: int,
    output: Path | None,
) -> None:
    """Records come out in input order."""
    text, _ = _read(path)
    stripped = (line.strip().removeprefix(">>graph6<<") for line in text.splitlines())
    lines = [line for line in stripped if line]
    config = _config(
        command,
        path,
        strategy=strategy,
        budget_orders=budget_orders,
        budget_seconds=budget_seconds,
        seed=seed,
        jobs=jobs,
        format="jsonl",
    )
    # Malformed lines fail here, before any worker starts.
    for line in lines:
        graphs.parse_graph6(line)
    results = run_corpus([CorpusLine(command=command, graph6=line, config=config) for line in lines], jobs=jobs)
    body = "\n".join(results) + "\n" if results else ""
    if output is None:
        click.echo(body, nl=False)
    else:
        output.write_text(body, encoding="utf-8")


if __name__ == "__main__":
    cli()
