from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from klimited.gf2 import BitMatrix


def naive_rank(rows: list[str]) -> int:
    """Bit-by-bit row reduction on lists of 0/1, independent of the packed kernels."""
    m = [[int(c) for c in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                m[r] = [a ^ b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def naive_min_witness(rows: list[int], v: int, k: int) -> tuple[int, ...] | None:
    """Plain enumeration of subsets by size, then lexicographic order."""
    for size in range(0, k + 1):
        for combo in combinations(range(len(rows)), size):
            acc = 0
            for i in combo:
                acc ^= rows[i]
            if acc == v:
                return combo
    return None


def random_matrix(rng: random.Random, n: int, dim: int) -> BitMatrix:
    return BitMatrix(dim, tuple(rng.randrange(1 << dim) for _ in range(n)))


def as_strings(m: BitMatrix) -> list[str]:
    return [str(r) for r in m]


# The n = 9, T = 6 instance of the bipartite-graph example: g1..g6 are unit
# vectors and the dependents are the nested sums g1+g2+g3+g4, g1+g2, g1+g2+g3.
NESTED_ROWS = [
    "100000",
    "010000",
    "001000",
    "000100",
    "000010",
    "000001",
    "111100",
    "110000",
    "111000",
]


@pytest.fixture
def nested_g() -> BitMatrix:
    return BitMatrix.from_rows(NESTED_ROWS)


@st.composite
def bit_matrices(draw, max_rows: int = 12, max_dim: int = 10, min_rows: int = 0):
    dim = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.integers(0, (1 << dim) - 1), min_size=min_rows, max_size=max_rows))
    return BitMatrix(dim, tuple(rows))


@st.composite
def distinct_full_rank(draw, max_dim: int = 6, max_extra: int = 8):
    """Distinct nonzero rows spanning F_2^dim."""
    from klimited.gf2 import rank_of

    dim = draw(st.integers(2, max_dim))
    extra = draw(st.lists(st.integers(1, (1 << dim) - 1), max_size=max_extra, unique=True))
    units = [1 << i for i in range(dim)]
    rows = list(dict.fromkeys(draw(st.permutations(units + [v for v in extra if v not in units]))))
    assert rank_of(rows) == dim
    return BitMatrix(dim, tuple(rows))
