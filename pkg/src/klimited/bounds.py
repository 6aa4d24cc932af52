"""Closed-form bounds and reference values for the number of rows T_k."""

from __future__ import annotations

import math
from dataclasses import dataclass

E = math.e


def _check_small_k(t: int, k: int) -> None:
    if not 1 <= k < math.ceil(t / 2):
        raise ValueError(f"k={k} outside 1 <= k < ceil(t/2) = {math.ceil(t / 2)}")


def t_star(n: int, k: int) -> int:
    """Least T_k with sum_{i=1..k} C(T_k, i) >= n (exact integers)."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    tk = 1
    while sum(math.comb(tk, i) for i in range(1, k + 1)) < n:
        tk += 1
    return tk


def t_lb_analytic(t: int, k: int) -> float:
    """2^((t-1)/k) k^((k-1)/k) / e, valid for full-space covering with k < ceil(t/2).

    k = 1 is accepted for every t >= 2 (the bound is then 2^(t-1)/e, far
    below the exact value 2^t - 1).
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if k != 1:
        _check_small_k(t, k)
    return 2 ** ((t - 1) / k) * k ** ((k - 1) / k) / E


def theorem1_ub(t: int, k: int) -> int:
    _check_small_k(t, k)
    return k * 2 ** math.ceil(t / k)


def large_k_value(t: int, n: int) -> int:
    """Known optimum min(t+1, n) for ceil(t/2) <= k < t; reference only."""
    return min(t + 1, n)


def uncoded_ub(n: int) -> int:
    return n


def scr_best(n: int) -> int:
    return 2 * (n // 3)


def scr_worst(n: int, t: int) -> int:
    return t * (n // (t + 1) + 1)


def scr_bounds(n: int, t: int, q: int) -> tuple[int, int]:
    """q-fold compositions of the SCR best- and worst-case row counts."""
    if n < 1 or t < 1 or q < 1:
        raise ValueError("n, t and q must be positive")
    best = worst = n
    for _ in range(q):
        best = scr_best(best)
        worst = scr_worst(worst, t)
    return best, worst


def log2_exact(k: int) -> int | None:
    """q with k == 2**q, or None."""
    if k >= 1 and k & (k - 1) == 0:
        return k.bit_length() - 1
    return None


@dataclass(frozen=True)
class BoundReport:
    n: int
    t: int
    k: int
    t_star: int
    uncoded_ub: int
    large_k_value: int
    t_lb_analytic: float | None = None
    theorem1_ub: int | None = None
    q: int | None = None
    scr_best: int | None = None
    scr_worst: int | None = None

    def rows(self) -> list[tuple[str, object]]:
        return [
            ("n", self.n),
            ("t", self.t),
            ("k", self.k),
            ("t_star", self.t_star),
            ("t_lb_analytic", self.t_lb_analytic),
            ("theorem1_ub", self.theorem1_ub),
            ("large_k_value", self.large_k_value),
            ("uncoded", self.uncoded_ub),
            ("q", self.q),
            ("scr_best", self.scr_best),
            ("scr_worst", self.scr_worst),
        ]


def bound_report(n: int, t: int, k: int, q: int | None = None) -> BoundReport:
    """All bounds for one instance.  Fields outside their validity range are None.

    ``q`` defaults to log2(k) when k is a power of two.
    """
    if n < 1 or t < 1 or not 1 <= k <= t:
        raise ValueError("need n >= 1, t >= 1 and 1 <= k <= t")
    small_k = t >= 2 and k < math.ceil(t / 2)
    full_space = n == 2**t - 1
    if q is None:
        q = log2_exact(k)
    best = worst = None
    if q is not None:
        best, worst = scr_bounds(n, t, q)
    return BoundReport(
        n=n,
        t=t,
        k=k,
        t_star=t_star(n, k),
        uncoded_ub=uncoded_ub(n),
        large_k_value=large_k_value(t, n),
        t_lb_analytic=t_lb_analytic(t, k) if small_k and full_space else None,
        theorem1_ub=theorem1_ub(t, k) if small_k else None,
        q=q,
        scr_best=best,
        scr_worst=worst,
    )
