import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klimited.cover import full_space_vector
from klimited.gf2 import BitMatrix, rank
from klimited.harness import InstanceSpec, generate
from klimited.schemes import scheme1_adapted, scheme1_full, scheme1_row_count, sections
from klimited.verify import verify_cover, verify_full_space

from .conftest import as_strings, distinct_full_rank


def test_t8_k3_layout_and_last_block():
    s = scheme1_full(8, 3)
    assert s.size == 17
    assert sections(8, 3) == [(0, 3), (3, 3), (6, 2)]
    rows = as_strings(s.a_k)
    assert [r[6:] for r in rows[14:]] == ["01", "10", "11"]
    assert all(r[:6] == "000000" for r in rows[14:])
    # first block walks the nonzero 3-bit patterns in increasing order
    assert [r[:3] for r in rows[:7]] == [format(x, "03b") for x in range(1, 8)]


def test_t8_k3_stored_witness_matches_worked_example():
    s = scheme1_full(8, 3)
    v = int("01001110", 2) - 1
    assert sorted(i + 1 for i in s.witnesses[v]) == [2, 10, 16]


def test_k1_is_the_whole_space():
    s = scheme1_full(4, 1)
    assert s.size == 15
    assert sorted(s.a_k.packed) == list(range(1, 16))
    assert all(len(s.witnesses[i]) == 1 for i in range(15))
    assert verify_full_space(s, 4).ok


def test_scheme1_full_precondition():
    with pytest.raises(ValueError):
        scheme1_full(6, 3)
    with pytest.raises(ValueError):
        scheme1_full(1, 1)


@pytest.mark.parametrize("t", range(2, 11))
def test_scheme1_full_covers_and_respects_bound(t):
    for k in range(1, math.ceil(t / 2)):
        s = scheme1_full(t, k)
        assert s.size == scheme1_row_count(t, k)
        assert s.size <= k * 2 ** math.ceil(t / k)
        assert verify_full_space(s, t).ok


def test_stored_witnesses_reconstruct_targets():
    s = scheme1_full(7, 2)
    for i in range(2**7 - 1):
        assert s.reconstruct(i) == full_space_vector(i, 7)


def test_adapted_on_full_space_matches_full_construction():
    for t, k in [(6, 2), (8, 3), (5, 1)]:
        g = BitMatrix(t, tuple(full_space_vector(i, t) for i in range(2**t - 1)))
        assert scheme1_adapted(g, k).size == scheme1_full(t, k).size


def test_adapted_on_unit_basis():
    g = BitMatrix.from_rows(["100000", "010000", "001000", "000100", "000010", "000001"])
    s = scheme1_adapted(g, 2)
    assert s.size == 6
    assert all(len(s.witnesses[i]) == 1 for i in range(6))
    assert verify_cover(s, g).ok


@pytest.mark.parametrize("seed", range(20))
def test_adapted_size_bounds_t6_k2(seed):
    for n in (7, 20, 40, 63):
        g = generate(InstanceSpec(6, n, seed))
        s = scheme1_adapted(g, 2)
        assert rank(g) <= s.size <= 16
        assert verify_cover(s, g).ok


@settings(max_examples=60, deadline=None)
@given(distinct_full_rank(max_dim=6), st.integers(1, 6))
def test_adapted_always_verifies(g, k):
    k = min(k, g.dim)
    assert verify_cover(scheme1_adapted(g, k), g).ok


def test_adapted_rejects_bad_targets():
    with pytest.raises(ValueError):
        scheme1_adapted(BitMatrix.from_rows(["10", "10"]), 1)
    with pytest.raises(ValueError):
        scheme1_adapted(BitMatrix.from_rows(["10", "00"]), 1)
