"""Cover verification, independent of how a scheme was built."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .cover import CoverScheme, full_space_vector
from .gf2 import BitMatrix, BitVec, format_bits

MAX_FULL_SPACE_T = 20


class Decomposer:
    """Minimum-size XOR decompositions over a fixed row set.

    Sums of every subset of up to ``ceil(k/2)`` rows are tabulated once; a
    query of size ``s`` walks the ``s - ceil(s/2)`` side and looks the
    complement up in the table.
    """

    def __init__(self, rows: Sequence[int], k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.rows = tuple(rows)
        self.k = k
        self._by_value: dict[int, dict[int, list[tuple[int, ...]]]] = {}
        self._items: dict[int, list[tuple[int, tuple[int, ...]]]] = {}

    def _table(self, size: int) -> dict[int, list[tuple[int, ...]]]:
        table = self._by_value.get(size)
        if table is None:
            table = {}
            items = []
            rows = self.rows
            for combo in combinations(range(len(rows)), size):
                acc = 0
                for i in combo:
                    acc ^= rows[i]
                items.append((acc, combo))
                table.setdefault(acc, []).append(combo)
            self._by_value[size] = table
            self._items[size] = items
        return table

    def find(self, v: int, k: int | None = None) -> tuple[int, ...] | None:
        """Smallest, then lexicographically first, index tuple summing to ``v``."""
        k = self.k if k is None else min(k, self.k)
        if v == 0:
            return ()
        for size in range(1, k + 1):
            if size > len(self.rows):
                break
            big = (size + 1) // 2
            small = size - big
            table = self._table(big)
            if small == 0:
                hits = table.get(v)
                if hits:
                    return hits[0]
                continue
            self._table(small)
            best = None
            for acc, combo in self._items[small]:
                for other in table.get(v ^ acc, ()):
                    if set(other).isdisjoint(combo):
                        cand = tuple(sorted(other + combo))
                        if best is None or cand < best:
                            best = cand
            if best is not None:
                return best
        return None


def decompose(a: BitMatrix, v: BitVec, k: int) -> frozenset[int] | None:
    """A minimum-cardinality set of at most ``k`` rows of ``a`` summing to ``v``."""
    if v.length != a.dim:
        raise ValueError(f"vector of length {v.length} against a matrix of dimension {a.dim}")
    found = Decomposer(a.packed, k).find(v.bits)
    return None if found is None else frozenset(found)


def min_sum_sizes(rows: Sequence[int], t: int, k: int) -> np.ndarray:
    """For every vector of F_2^t, the fewest rows summing to it, capped at k+1.

    Breadth-first search on the XOR Cayley graph generated by ``rows``.
    """
    n = 1 << t
    dist = np.full(n, k + 1, dtype=np.int16)
    dist[0] = 0
    gens = np.unique(np.asarray(rows, dtype=np.int64))
    frontier = np.zeros(1, dtype=np.int64)
    for step in range(1, k + 1):
        if frontier.size == 0 or gens.size == 0:
            break
        cand = np.unique((frontier[:, None] ^ gens[None, :]).ravel())
        fresh = cand[dist[cand] > step]
        dist[fresh] = step
        frontier = fresh
    return dist


@dataclass
class VerifyReport:
    ok: bool = True
    failures: list[tuple[int, str]] = field(default_factory=list)
    max_witness_size: int = 0
    checked: int = 0

    def fail(self, target: int, reason: str) -> None:
        self.ok = False
        self.failures.append((target, reason))

    def summary(self) -> str:
        passed = self.checked - len({t for t, _ in self.failures})
        status = "ok" if self.ok else "FAILED"
        return f"{passed}/{self.checked} {status} max_witness_size={self.max_witness_size}"

    def failures_csv(self) -> str:
        lines = ["target,reason"]
        lines.extend(f"{t + 1},{reason}" for t, reason in self.failures)
        return "\n".join(lines) + "\n"


def _check_stored(report: VerifyReport, scheme: CoverScheme, target: int, vector: int) -> None:
    witness = scheme.witnesses.get(target)
    if witness is None:
        report.fail(target, "no stored witness")
        return
    report.max_witness_size = max(report.max_witness_size, len(witness))
    if not 1 <= len(witness) <= scheme.k:
        report.fail(target, f"witness size {len(witness)} outside [1, {scheme.k}]")
        return
    if any(not 0 <= i < scheme.size for i in witness):
        report.fail(target, "witness row index out of range")
        return
    if scheme.reconstruct(target) != vector:
        report.fail(target, "witness rows do not sum to the target")


def verify_cover(scheme: CoverScheme, g: BitMatrix) -> VerifyReport:
    """Check stored witnesses and re-derive one by decomposition for every row of ``g``."""
    if g.dim != scheme.dim:
        raise ValueError("scheme and target matrix dimensions differ")
    report = VerifyReport()
    dec = Decomposer(scheme.a_k.packed, scheme.k)
    for target, vector in enumerate(g.packed):
        report.checked += 1
        if vector == 0:
            report.fail(target, "zero target")
            continue
        _check_stored(report, scheme, target, vector)
        if dec.find(vector) is None:
            report.fail(target, f"no decomposition with at most {scheme.k} rows")
    return report


def verify_full_space(
    scheme: CoverScheme,
    t: int,
    sample: int | None = None,
    seed: int = 0,
) -> VerifyReport:
    """Verify against all 2^t - 1 nonzero vectors without materializing them.

    With ``sample`` set, check that many uniformly drawn targets instead.
    The independent check uses exact minimum decomposition sizes from a
    breadth-first search over the whole space.
    """
    if scheme.dim != t:
        raise ValueError("scheme dimension differs from t")
    if not 1 <= t <= MAX_FULL_SPACE_T:
        raise ValueError(f"full-space verification supports 1 <= t <= {MAX_FULL_SPACE_T}")
    if scheme.k == 1:
        present = set(scheme.a_k.packed)
        reachable = lambda v: v in present  # noqa: E731
    else:
        dist = min_sum_sizes(scheme.a_k.packed, t, scheme.k)
        reachable = lambda v: dist[v] <= scheme.k  # noqa: E731
    total = (1 << t) - 1
    if sample is None:
        targets = range(total)
    else:
        rng = random.Random(seed)
        targets = (rng.randrange(total) for _ in range(sample))
    report = VerifyReport()
    for target in targets:
        vector = full_space_vector(target, t)
        report.checked += 1
        _check_stored(report, scheme, target, vector)
        if not reachable(vector):
            report.fail(target, f"{format_bits(vector, t)} needs more than {scheme.k} rows")
    return report
