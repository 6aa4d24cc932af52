"""Successive circuit removing."""

from __future__ import annotations

from ..cover import CoverScheme
from ..gf2 import BitMatrix, find_small_circuit
from .chain import chain_cover
from .scheme1 import _check_targets


def scr_round(rows: list[int], dim: int, trials: int = 1, seed: int = 0) -> tuple[list[int], list[frozenset[int]]]:
    """One pass: every removed circuit of r+1 rows becomes its r prefix sums.

    Returns the emitted rows and, per input row, the (at most two) emitted
    rows summing to it.
    """
    remaining = list(range(len(rows)))
    out: list[int] = []
    index: dict[int, int] = {}
    cover: list[frozenset[int] | None] = [None] * len(rows)

    def add(v: int) -> int:
        if v not in index:
            index[v] = len(out)
            out.append(v)
        return index[v]

    round_no = 0
    while True:
        sub = BitMatrix(dim, tuple(rows[i] for i in remaining))
        circuit = find_small_circuit(sub, trials, seed + round_no)
        round_no += 1
        if circuit is None:
            break
        members = [remaining[i] for i in circuit]
        local = BitMatrix(dim, tuple(rows[i] for i in members))
        chained = chain_cover(local, list(range(len(members) - 1)))
        remap = [add(v) for v in chained.a_k.packed]
        for j, i in enumerate(members):
            cover[i] = frozenset(remap[w] for w in chained.witnesses[j])
        taken = set(members)
        remaining = [i for i in remaining if i not in taken]
    for i in remaining:
        cover[i] = frozenset([add(rows[i])])
    return out, cover  # type: ignore[return-value]


def scr(g: BitMatrix, q: int = 1, trials: int = 1, seed: int = 0) -> CoverScheme:
    """Apply SCR ``q`` times; every row of ``g`` is then a sum of at most 2^q rows.

    Witnesses are expanded through the rounds with XOR cancellation, so a
    row that appears twice in an expansion drops out.
    """
    if q < 1:
        raise ValueError("q must be a positive integer (k = 2^q)")
    _check_targets(g)
    rows = list(g.packed)
    witnesses = [frozenset([i]) for i in range(len(rows))]
    for r in range(q):
        rows, cover = scr_round(rows, g.dim, trials, seed + 7919 * r)
        expanded = []
        for w in witnesses:
            acc: set[int] = set()
            for i in w:
                acc ^= cover[i]
            expanded.append(frozenset(acc))
        witnesses = expanded
    return CoverScheme(2**q, BitMatrix(g.dim, tuple(rows)), dict(enumerate(witnesses)))
