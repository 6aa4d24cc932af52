"""Block-diagonal construction for full-space covering, and its partial-space adaptation."""

from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Iterator

from ..cover import CoverScheme, full_space_vector
from ..gf2 import BitMatrix, rank_of


def sections(t: int, k: int) -> list[tuple[int, int]]:
    """(start, length) of each coordinate section, 0-based.

    Sections have length ceil(t/k) except the last, which takes what is left.
    When (k-1) ceil(t/k) >= t fewer than k sections are needed.
    """
    part = math.ceil(t / k)
    return [(start, min(part, t - start)) for start in range(0, t, part)]


def section_pattern(v: int, start: int, length: int) -> int:
    """The section of ``v`` read as an integer, first coordinate most significant."""
    x = 0
    for j in range(start, start + length):
        x = (x << 1) | ((v >> j) & 1)
    return x


def embed_pattern(x: int, start: int, length: int) -> int:
    v = 0
    for j in range(length):
        if (x >> (length - 1 - j)) & 1:
            v |= 1 << (start + j)
    return v


def scheme1_row_count(t: int, k: int) -> int:
    return sum(2**length - 1 for _, length in sections(t, k))


class _FullSpaceWitnesses(Mapping):
    """Witnesses for every nonzero vector, computed on lookup."""

    def __init__(self, t: int, layout: list[tuple[int, int]], offsets: list[int]):
        self.t = t
        self.layout = layout
        self.offsets = offsets
        self._len = (1 << t) - 1

    def __getitem__(self, index: int) -> frozenset[int]:
        if not 0 <= index < self._len:
            raise KeyError(index)
        v = full_space_vector(index, self.t)
        rows = []
        for (start, length), offset in zip(self.layout, self.offsets):
            x = section_pattern(v, start, length)
            if x:
                rows.append(offset + x - 1)
        return frozenset(rows)

    def __len__(self) -> int:
        return self._len

    def __iter__(self) -> Iterator[int]:
        return iter(range(self._len))


def scheme1_full(t: int, k: int) -> CoverScheme:
    """Cover all of F_2^t: block i lists every nonzero pattern of section i in increasing order."""
    if t < 2 or not 1 <= k < math.ceil(t / 2):
        raise ValueError(f"scheme1 needs t >= 2 and 1 <= k < ceil(t/2); got t={t}, k={k}")
    layout = sections(t, k)
    rows = []
    offsets = []
    for start, length in layout:
        offsets.append(len(rows))
        rows.extend(embed_pattern(x, start, length) for x in range(1, 2**length))
    return CoverScheme(k, BitMatrix(t, tuple(rows)), _FullSpaceWitnesses(t, layout, offsets))


def _check_targets(g: BitMatrix) -> None:
    if 0 in g.packed:
        raise ValueError("target matrix has a zero row")
    if len(set(g.packed)) != len(g.packed):
        raise ValueError("target matrix has duplicate rows")


def is_independent(g: BitMatrix) -> bool:
    return rank_of(g.packed) == len(g.packed)


def verbatim(g: BitMatrix, k: int) -> CoverScheme:
    """``a_k = g`` with singleton witnesses."""
    return CoverScheme(k, g, {i: frozenset([i]) for i in range(len(g))})


def scheme1_adapted(g: BitMatrix, k: int) -> CoverScheme:
    """Keep only the section patterns that actually occur in ``g``.

    Columns are ranked by decreasing weight (ties by index) before being cut
    into sections; each output row is a row of ``g`` restricted to one
    section, so rows are reported in the original column order.
    """
    _check_targets(g)
    t = g.dim
    if not 1 <= k <= t:
        raise ValueError(f"k={k} outside 1 <= k <= t={t}")
    if len(g) <= t and is_independent(g):
        return verbatim(g, k)
    weights = g.column_weights()
    ranked = sorted(range(t), key=lambda c: (-weights[c], c))
    masks = []
    for start, length in sections(t, k):
        mask = 0
        for c in ranked[start : start + length]:
            mask |= 1 << c
        masks.append(mask)
    rows: list[int] = []
    index: dict[int, int] = {}
    for mask in masks:
        for v in g.packed:
            part = v & mask
            if part and part not in index:
                index[part] = len(rows)
                rows.append(part)
    witnesses = {
        i: frozenset(index[v & mask] for mask in masks if v & mask)
        for i, v in enumerate(g.packed)
    }
    return CoverScheme(k, BitMatrix(t, tuple(rows)), witnesses)
