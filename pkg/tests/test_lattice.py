from __future__ import annotations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from andersonstats import MultiIndex, canonicalize, delta, shift

from conftest import multi_indices, points


def test_delta_single_site():
    assert delta(1, (0,)).to_map() == {(0,): 1}
    assert delta(2, (3, -1), 2).to_map() == {(3, -1): 2}
    assert delta(1, (0,), 5).to_map() == {(0,): 5}


def test_delta_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        delta(2, (1,))
    with pytest.raises(ValueError):
        delta(1, (0,), 0)


def test_shift_translates_support():
    assert shift(delta(1, (0,)), (2,)).to_map() == {(2,): 1}
    two = MultiIndex.from_map(1, {(0,): 2, (1,): 1})
    assert shift(two, (-1,)).to_map() == {(-1,): 2, (0,): 1}


def test_shift_round_trip_example():
    index = MultiIndex.from_map(2, {(0, 0): 1, (1, 1): 2})
    assert shift(shift(index, (4, -3)), (-4, 3)) == index


def test_shift_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        shift(delta(2, (0, 0)), (1,))


def test_canonicalize_moves_lex_min_to_origin():
    rep, move = canonicalize(MultiIndex.from_map(2, {(2, 0): 1, (3, 1): 2}))
    assert rep.to_map() == {(0, 0): 1, (1, 1): 2}
    assert move == (-2, 0)


def test_canonicalize_fixed_point():
    rep, move = canonicalize(delta(1, (0,), 3))
    assert rep == delta(1, (0,), 3)
    assert move == (0,)


def test_canonicalize_adjacent_pair():
    rep, move = canonicalize(MultiIndex.from_map(1, {(5,): 1, (6,): 1}))
    assert rep.to_map() == {(0,): 1, (1,): 1}
    assert move == (-5,)


def test_canonicalize_rejects_zero():
    with pytest.raises(ValueError):
        canonicalize(MultiIndex.zero(3))


def test_addition_merges_exponents():
    left = MultiIndex.from_map(1, {(0,): 2})
    right = MultiIndex.from_map(1, {(0,): 1, (1,): 1})
    assert (left + right).to_map() == {(0,): 3, (1,): 1}


def test_entries_are_validated():
    with pytest.raises(ValueError):
        MultiIndex(1, (((0,), 0),))
    with pytest.raises(ValueError):
        MultiIndex(1, (((1,), 1), ((0,), 1)))  # unsorted
    with pytest.raises(ValueError):
        MultiIndex(2, (((0,), 1),))  # wrong point dimension


def test_grammar_round_trip():
    index = MultiIndex.parse("0,0:1;1,1:2")
    assert index.d == 2 and index.to_map() == {(0, 0): 1, (1, 1): 2}
    assert MultiIndex.parse(index.format()) == index
    assert MultiIndex.parse("", d=3) == MultiIndex.zero(3)
    assert MultiIndex.zero(3).format() == ""
    assert MultiIndex.parse("-5:2;0:1").format() == "-5:2;0:1"


def test_grammar_rejects_malformed_input():
    with pytest.raises(ValueError):
        MultiIndex.parse("0,0")
    with pytest.raises(ValueError):
        MultiIndex.parse("0:0")
    with pytest.raises(ValueError):
        MultiIndex.parse("0:1;0:2")
    with pytest.raises(ValueError):
        MultiIndex.parse("", d=None)


@given(multi_indices(), st.data())
def test_shift_round_trip(index, data):
    move = data.draw(points(index.d))
    inverse = tuple(-c for c in move)
    assert shift(shift(index, move), inverse) == index


@given(multi_indices(), st.data())
def test_canonical_representative_is_shift_invariant(index, data):
    move = data.draw(points(index.d))
    assert canonicalize(shift(index, move))[0] == canonicalize(index)[0]


@given(multi_indices())
def test_canonicalize_contract(index):
    rep, move = canonicalize(index)
    assert rep == shift(index, move)
    origin = (0,) * index.d
    assert min(rep.support()) == origin
    assert rep.exponent(origin) >= 1
    assert canonicalize(rep) == (rep, origin)


@given(multi_indices(), st.data())
def test_total_exponent_invariants(index, data):
    move = data.draw(points(index.d))
    total = index.total_exponent()
    assert shift(index, move).total_exponent() == total
    assert canonicalize(index)[0].total_exponent() == total


@given(multi_indices())
def test_grammar_round_trips_everything(index):
    assert MultiIndex.parse(index.format(), d=index.d) == index
