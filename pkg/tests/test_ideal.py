"""Monomials, minimal generating sets, total orders and the text grammar."""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from bm_resolutions.errors import BudgetExceededError, InputError
from bm_resolutions.ideal import (
    Monomial,
    MonomialIdeal,
    TotalOrder,
    check_enumeration_cap,
    lcm_lattice,
    lcm_of,
    members,
    normalize_mingens,
    parse_ideal_text,
    parse_monomial,
    parse_order,
    subset_of,
)

# ---------------------------------------------------------------------------
# Parsing & normalisation
# ---------------------------------------------------------------------------


def test_parse_ideal_text_orders_variables_by_first_appearance() -> None:
    ideal = parse_ideal_text("x*y\n# a comment\n\ny*z\nx*z  # trailing\n")
    assert ideal.variables == ("x", "y", "z")
    assert [ideal.label(i) for i in range(ideal.n)] == ["x*y", "y*z", "x*z"]


def test_normalize_drops_duplicates_and_multiples() -> None:
    x, y = Monomial.of((1, 0)), Monomial.of((0, 1))
    ideal = normalize_mingens([Monomial.of((1, 1)), x, Monomial.of((2, 0)), x, y])
    assert ideal.generators == (x, y)
    assert ideal.variables == ("x1", "x2")


def test_powers_and_repeated_factors_add_up() -> None:
    ideal = parse_ideal_text("a^2*b*a\nb^3")
    assert [m.exponents for m in ideal.generators] == [(3, 1), (0, 3)]
    assert ideal.label(0) == "a^3*b"


@pytest.mark.parametrize("text", ["", "# only a comment\n", "x+y", "x^", "2*x", "x*"])
def test_malformed_ideal_text_is_an_input_error(text: str) -> None:
    with pytest.raises(InputError):
        parse_ideal_text(text)


def test_exponent_overflow_is_rejected() -> None:
    with pytest.raises(InputError):
        parse_ideal_text("x^70000")
    with pytest.raises(ValidationError):
        Monomial(exponents=(70000,))


def test_unit_ideal_generator_is_rejected() -> None:
    with pytest.raises(ValueError):
        MonomialIdeal(variables=("x",), generators=(Monomial.of((0,)),))


def test_non_minimal_generating_set_is_rejected_by_the_model() -> None:
    with pytest.raises(ValueError):
        MonomialIdeal(variables=("x", "y"), generators=(Monomial.of((1, 0)), Monomial.of((1, 1))))


def test_empty_generating_set() -> None:
    with pytest.raises(InputError):
        normalize_mingens([])


def test_parse_monomial_rejects_unknown_variable() -> None:
    with pytest.raises(InputError):
        parse_monomial("w", ("x", "y"))


# ---------------------------------------------------------------------------
# Monomial arithmetic
# ---------------------------------------------------------------------------


def test_monomial_basics() -> None:
    m = Monomial.of((2, 0, 1))
    assert m.degree == 3
    assert m.support == (0, 2)
    assert m.divides(Monomial.of((2, 1, 1)))
    assert not m.divides(Monomial.of((1, 1, 1)))
    assert m.lcm(Monomial.of((0, 3, 0))).exponents == (2, 3, 1)
    assert m.format(("x", "y", "z")) == "x^2*z"
    assert Monomial.one(2).format(("x", "y")) == "1"


def test_ideal_membership_and_ord() -> None:
    ideal = parse_ideal_text("x^2*y\nx*y^3")
    assert ideal.contains(Monomial.of((2, 5)))
    assert not ideal.contains(Monomial.of((1, 2)))
    assert ideal.ord(0) == 1
    assert ideal.ord(1) == 1
    assert ideal.is_squarefree is False


def test_lcm_of_subsets() -> None:
    ideal = parse_ideal_text("x*y\ny*z\nx*z")
    assert lcm_of(ideal, 0).is_one
    assert lcm_of(ideal, subset_of([0, 1])).exponents == (1, 1, 1)
    with pytest.raises(InputError):
        lcm_of(ideal, 1 << 3)


def test_lcm_lattice_of_two_variables() -> None:
    ideal = parse_ideal_text("x\ny")
    assert {m.exponents for m in lcm_lattice(ideal)} == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_lcm_lattice_identifies_equal_lcms() -> None:
    # Every pair of the triangle already has lcm xyz.
    ideal = parse_ideal_text("x*y\ny*z\nx*z")
    assert len(lcm_lattice(ideal)) == 1 + 3 + 1


def test_enumeration_cap() -> None:
    names = [f"v{i}" for i in range(26)]
    ideal = parse_ideal_text("\n".join(names))
    with pytest.raises(BudgetExceededError, match="enumeration budget"):
        check_enumeration_cap(ideal)
    with pytest.raises(BudgetExceededError):
        lcm_lattice(ideal)
    check_enumeration_cap(ideal, cap=26)


# ---------------------------------------------------------------------------
# Subsets & orders
# ---------------------------------------------------------------------------


def test_members_round_trip() -> None:
    assert members(0) == []
    assert members(0b1011) == [0, 1, 3]
    assert subset_of([3, 0, 1]) == 0b1011


def test_total_order_queries() -> None:
    order = TotalOrder.of((2, 0, 3, 1))
    assert order.position == (1, 3, 0, 2)
    assert order.greater(2, 0)
    assert not order.greater(1, 3)
    assert order.below(0) == subset_of([3, 1])
    assert order.largest(0b1011) == 0
    assert order.smallest(0b1011) == 1
    assert order.smallest(0) is None
    assert order.descending(0b1111) == [2, 0, 3, 1]


def test_total_order_must_be_a_permutation() -> None:
    with pytest.raises(ValueError):
        TotalOrder.of((0, 0, 1))
    with pytest.raises(ValueError):
        TotalOrder.of((1, 2))


def test_parse_order() -> None:
    ideal = parse_ideal_text("x*y\ny*z\nx*z")
    assert parse_order(ideal, "y*z, x*z, x*y").ranking == (1, 2, 0)
    with pytest.raises(InputError):
        parse_order(ideal, "x*y,y*z")
    with pytest.raises(InputError):
        parse_order(ideal, "x*y,y*z,x^2")
