"""Critical cells, the Morse differential and the resolution check."""

from __future__ import annotations

import random

import pytest

from bm_resolutions.errors import InputError
from bm_resolutions.ideal import MonomialIdeal, TotalOrder, parse_ideal_text
from bm_resolutions.matchings import FiberedOrders, LcmGrading, Matching, bm_matching, gbm_matching, lyubeznik_matching
from bm_resolutions.morse import (
    cell_counts_by_degree,
    critical_cells,
    critical_counts,
    morse_differential,
    taylor_complex,
    validate_matching,
    verify_resolution,
)
from tests.corpus import edge_ideals, graph_id, random_ideals

TRIANGLE = "x*y\ny*z\nx*z"
PATH4 = "a*b\nb*c\nc*d"

# ---------------------------------------------------------------------------
# Small cases
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("text", [TRIANGLE, PATH4])
def test_critical_counts_of_small_edge_ideals(text: str) -> None:
    ideal = parse_ideal_text(text)
    matching = bm_matching(ideal, TotalOrder.natural(3))
    assert critical_counts(ideal, matching) == [1, 3, 2, 0]


def test_triangle_critical_cells() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    cells = critical_cells(ideal, bm_matching(ideal, TotalOrder.natural(3)))
    assert [c.subset for c in cells[2]] == [0b101, 0b110]
    assert {c.multidegree for c in cells[2]} == {(1, 1, 1)}
    assert cells[3] == []


def test_triangle_morse_complex() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    complex_ = morse_differential(ideal, bm_matching(ideal, TotalOrder.natural(3)))
    assert complex_.ranks == [1, 3, 2, 0]
    assert complex_.boundaries[1].tolist() == [[1, 1, 1]]
    # Each surviving pair maps to its two endpoints.
    assert complex_.boundaries[2].sum(axis=0).tolist() == [2, 2]
    assert cell_counts_by_degree(complex_) == {
        (0, 0, 0): 1,
        (1, 1, 0): 1,
        (0, 1, 1): 1,
        (1, 0, 1): 1,
        (1, 1, 1): 2,
    }
    assert verify_resolution(ideal, complex_)


def test_flipping_a_boundary_entry_breaks_the_resolution() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    complex_ = morse_differential(ideal, bm_matching(ideal, TotalOrder.natural(3)))
    assert not verify_resolution(ideal, complex_.with_entry_flipped(2, 0, 0))
    assert verify_resolution(ideal, complex_)


def test_taylor_complex_resolves() -> None:
    ideal = parse_ideal_text(PATH4)
    complex_ = taylor_complex(ideal)
    assert complex_.ranks == [1, 3, 3, 1]
    assert verify_resolution(ideal, complex_)


def test_only_the_two_element_field_is_supported() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    with pytest.raises(InputError):
        morse_differential(ideal, Matching(), field=3)


def test_validate_matching_reports_violations() -> None:
    ideal = parse_ideal_text(TRIANGLE)
    assert validate_matching(ideal, bm_matching(ideal, TotalOrder.natural(3))).ok
    bad = validate_matching(ideal, Matching.of([(0b011, 0b001)]))
    assert not bad.ok
    assert bad.violations[0].kind == "homogeneous"


# ---------------------------------------------------------------------------
# Random ideals
# ---------------------------------------------------------------------------


def _seeded_orders(ideal: MonomialIdeal, count: int) -> list[TotalOrder]:
    rng = random.Random(ideal.n * 31 + ideal.d)
    out: list[TotalOrder] = []
    for _ in range(count):
        ranking = list(range(ideal.n))
        rng.shuffle(ranking)
        out.append(TotalOrder.of(ranking))
    return out


def _check(ideal: MonomialIdeal, matching: Matching) -> None:
    assert validate_matching(ideal, matching).ok
    assert verify_resolution(ideal, morse_differential(ideal, matching))


def _validity_corpus() -> list[object]:
    cases: list[object] = [pytest.param(ideal, id=f"random-{k}") for k, ideal in enumerate(random_ideals(500))]
    cases += [pytest.param(ideal, id=f"edge-{graph_id(g)}") for g, ideal in edge_ideals(6)]
    return cases


@pytest.mark.parametrize("ideal", _validity_corpus())
def test_bm_resolutions_under_seeded_orders(ideal: MonomialIdeal) -> None:
    for order in _seeded_orders(ideal, 3):
        _check(ideal, bm_matching(ideal, order))


@pytest.mark.parametrize("ideal", _validity_corpus())
def test_lyubeznik_and_gbm_resolutions(ideal: MonomialIdeal) -> None:
    grading = LcmGrading(ideal)
    orders = FiberedOrders.constant(_seeded_orders(ideal, 1)[0])
    _check(ideal, lyubeznik_matching(grading, orders))
    _check(ideal, gbm_matching(grading, orders))
