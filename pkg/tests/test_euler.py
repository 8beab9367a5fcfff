import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capbif.euler import ONE, ZERO, EulerElement

elements = st.builds(
    EulerElement.from_sequence,
    st.lists(st.integers(min_value=-50, max_value=50), max_size=8),
)
# invertible: a_0 must be a unit
unit_elements = st.builds(
    lambda head, tail: EulerElement.from_sequence([head] + tail),
    st.sampled_from([1, -1]),
    st.lists(st.integers(min_value=-50, max_value=50), max_size=7),
)


def test_multiplication_example():
    a = EulerElement.from_sequence([2, 1, 0])
    b = EulerElement.from_sequence([3, 0, 2])
    assert a * b == EulerElement.from_sequence([6, 3, 4])


def test_cube_example():
    a = EulerElement.from_sequence([1, -1])
    assert a**3 == EulerElement.from_sequence([1, -3])


def test_identity_and_zero():
    a = EulerElement.from_sequence([5, -2, 7])
    assert a * ONE == a
    assert a * ZERO == ZERO
    assert a + ZERO == a
    assert not ZERO
    assert ZERO.is_zero()
    assert a - a == ZERO


def test_zero_coefficients_dropped():
    assert EulerElement({3: 0, 1: 2}) == EulerElement({1: 2})
    assert EulerElement.from_sequence([0, 0]) == ZERO
    assert EulerElement.from_sequence([0, 0]).max_index == -1


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        EulerElement({-1: 3})


@given(elements, elements, elements)
@settings(max_examples=300)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements, st.integers(min_value=0, max_value=10))
@settings(max_examples=200)
def test_power_matches_repeated_product(a, p):
    prod = ONE
    for _ in range(p):
        prod = prod * a
    assert a**p == prod


@given(elements, st.integers(min_value=1, max_value=12))
@settings(max_examples=200)
def test_power_closed_form(a, p):
    # the product rule kills all cross terms beyond coordinate 0:
    # (a^p)_0 = a_0^p and (a^p)_i = p a_0^(p-1) a_i for i >= 1
    got = a**p
    a0 = a[0]
    assert got[0] == a0**p
    for i in a.support:
        if i >= 1:
            assert got[i] == p * a0 ** (p - 1) * a[i]


@given(unit_elements, st.integers(min_value=-6, max_value=-1))
@settings(max_examples=200)
def test_negative_powers_invert(a, p):
    assert (a**p) * (a ** (-p)) == ONE


def test_negative_power_needs_unit_head():
    with pytest.raises(ValueError):
        EulerElement.from_sequence([2, 1]) ** -1
    with pytest.raises(ValueError):
        ZERO**-1


@given(elements)
@settings(max_examples=200)
def test_json_round_trip(a):
    obj = json.loads(json.dumps(a.to_json_obj()))
    assert EulerElement.from_json_obj(obj) == a


def test_classification():
    assert ZERO.classify() == "theta"
    assert EulerElement({0: -2}).classify() == "minus_cone"
    assert EulerElement({0: 3, 2: 1}).classify() == "plus_cone"
    assert EulerElement({1: -1, 3: 2}).classify() == "mixed"


def test_getitem_and_support():
    a = EulerElement({0: 2, 4: -1})
    assert a[0] == 2 and a[4] == -1 and a[2] == 0
    assert a.support == (0, 4)
    assert a.max_index == 4
