import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bilintransfer import FiniteSequence
from conftest import sequences


def test_delta_and_indexing():
    d = FiniteSequence.delta(3, 2.0)
    assert d[3] == 2.0
    assert d[0] == 0
    assert list(d.support()) == [3]


def test_canonical_trims_zeros_and_equality():
    a = FiniteSequence(-2, [0, 0, 1, 2, 0])
    b = FiniteSequence(0, [1, 2])
    assert a == b
    assert hash(a) == hash(b)
    assert a.canonical().offset == 0


def test_values_are_read_only():
    a = FiniteSequence(0, [1, 2])
    with pytest.raises(ValueError):
        a.values[0] = 5


def test_from_indexed_sums_duplicates():
    s = FiniteSequence.from_indexed([2, 2, 5], [1.0, 2.0, 1j])
    assert s[2] == 3.0 and s[5] == 1j and s[3] == 0


@given(sequences(), sequences())
def test_addition_is_pointwise(a, b):
    c = a + b
    idx = np.arange(-30, 31)
    assert np.array_equal(c.at(idx), a.at(idx) + b.at(idx))


@given(sequences(), st.integers(-20, 20))
def test_shift_and_reflect(a, j):
    idx = np.arange(-40, 41)
    assert np.array_equal(a.shift(j).at(idx), a.at(idx - j))
    assert np.array_equal(a.reflect().at(idx), a.at(-idx))


@given(sequences())
def test_json_round_trip(a):
    back = FiniteSequence.from_json(json.loads(json.dumps(a.to_json())))
    assert back == a


def test_zeros_is_zero():
    assert FiniteSequence.zeros().is_zero()
    assert FiniteSequence(4, [0, 0]).is_zero()
