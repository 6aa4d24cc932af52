"""Prefix-sum chains: cover nested or circuit-shaped targets with two additions."""

from __future__ import annotations

from typing import Sequence

from ..cover import CoverScheme
from ..gf2 import BitMatrix
from ..verify import Decomposer


def _as_chains(order: Sequence[int] | Sequence[Sequence[int]]) -> list[list[int]]:
    if order and all(isinstance(i, int) for i in order):
        return [list(order)]
    return [list(chain) for chain in order]


def chain_cover(g: BitMatrix, order: Sequence[int] | Sequence[Sequence[int]]) -> CoverScheme:
    """Rows a_1 = g[i_1], a_j = a_{j-1} + g[i_j] along each chain in ``order``.

    ``order`` is one chain of row indices or a list of chains.  A chained row
    is witnessed by {a_1} or {a_{j-1}, a_j}; every other row of ``g`` must be
    the sum of at most two chain rows (a full prefix sum for the element
    left out of a circuit), otherwise ``ValueError``.
    """
    chains = _as_chains(order)
    seen: set[int] = set()
    for chain in chains:
        for i in chain:
            if not 0 <= i < len(g):
                raise ValueError(f"row index {i} out of range")
            if i in seen:
                raise ValueError(f"row index {i} appears twice in the chains")
            seen.add(i)

    rows: list[int] = []
    index: dict[int, int] = {}

    def add(v: int) -> int:
        if v == 0:
            raise ValueError("a prefix sum vanished; chained rows must be independent")
        if v not in index:
            index[v] = len(rows)
            rows.append(v)
        return index[v]

    witnesses: dict[int, frozenset[int]] = {}
    for chain in chains:
        acc = 0
        prev = None
        for i in chain:
            acc ^= g.packed[i]
            cur = add(acc)
            witnesses[i] = frozenset([cur]) if prev is None else frozenset([prev, cur])
            prev = cur

    dec = Decomposer(rows, 2)
    for i, v in enumerate(g.packed):
        if i in witnesses:
            continue
        found = dec.find(v)
        if not found:
            raise ValueError(f"row {i} is not the sum of at most two chain rows")
        witnesses[i] = frozenset(found)
    return CoverScheme(2, BitMatrix(g.dim, tuple(rows)), witnesses)
