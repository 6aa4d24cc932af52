"""Exhaustive optimum over all subsets of the nonzero vectors of F_2^t."""

from __future__ import annotations

from itertools import combinations

from ..bounds import t_star
from ..cover import Budget, CoverScheme, SearchLimitExceeded, SearchLimits
from ..gf2 import BitMatrix, rank_of
from ..verify import Decomposer
from .scheme1 import _check_targets, is_independent, verbatim

DEFAULT_MAX_T = 5


def _reachable(rows: tuple[int, ...], k: int) -> set[int]:
    sums = {0}
    layer = {0}
    for _ in range(k):
        layer = {s ^ r for s in layer for r in rows} - sums
        sums |= layer
    return sums


def brute_force_optimal(
    g: BitMatrix,
    k: int,
    limits: SearchLimits | None = None,
    max_t: int = DEFAULT_MAX_T,
) -> CoverScheme:
    """Enumerate subsets by increasing size; the first one that covers ``g`` is optimal.

    Subsets of rank below rank(g) are skipped.  Costs O(2^(2^t)) in the worst
    case, hence the ``max_t`` cap.
    """
    limits = limits or SearchLimits()
    _check_targets(g)
    t = g.dim
    if t > max_t:
        raise ValueError(f"brute force is capped at t <= {max_t}; got t={t}")
    if k < 1:
        raise ValueError("k must be positive")
    if len(g) <= t and is_independent(g):
        return verbatim(g, k)
    universe = tuple(range(1, 1 << t))
    targets = set(g.packed)
    need = rank_of(g.packed)
    start = max(need, t_star(len(targets), k)) if targets else 0
    budget = Budget(limits)
    for size in range(start, len(universe) + 1):
        for subset in combinations(universe, size):
            if not budget.tick():
                raise SearchLimitExceeded(
                    f"brute force stopped at size {size} after {budget.examined} subsets",
                    examined=budget.examined,
                )
            if rank_of(subset) < need:
                continue
            if targets <= _reachable(subset, k):
                dec = Decomposer(subset, k)
                witnesses = {i: frozenset(dec.find(v)) for i, v in enumerate(g.packed)}
                return CoverScheme(k, BitMatrix(t, subset), witnesses)
    raise AssertionError("the full space always covers its targets")
