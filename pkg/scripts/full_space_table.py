"""Full-space covering: block construction size against the counting bounds.

Prints, for each (t, k) with k < ceil(t/2), the analytic lower bound, the
exact counting bound t_star(2^t - 1, k), the block construction's row count
and the k 2^ceil(t/k) upper bound.  Optionally verifies each construction.
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

from klimited.bounds import t_lb_analytic, t_star, theorem1_ub
from klimited.schemes import scheme1_full
from klimited.verify import verify_full_space


@dataclass
class TableConfig:
    t_min: int = 2
    t_max: int = 16
    verify_up_to: int = 12


def rows(cfg: TableConfig):
    for t in range(cfg.t_min, cfg.t_max + 1):
        for k in range(1, math.ceil(t / 2)):
            s = scheme1_full(t, k)
            ok = verify_full_space(s, t).ok if t <= cfg.verify_up_to else None
            yield t, k, t_lb_analytic(t, k), t_star(2**t - 1, k), s.size, theorem1_ub(t, k), ok


def main() -> None:
    p = argparse.ArgumentParser(description="full-space bound table")
    p.add_argument("--t-min", type=int, default=2)
    p.add_argument("--t-max", type=int, default=16)
    p.add_argument("--verify-up-to", type=int, default=12)
    cfg = TableConfig(**vars(p.parse_args()))
    print(f"{'t':>3} {'k':>3} {'t_lb':>10} {'t_star':>7} {'blocks':>7} {'upper':>7} verified")
    for t, k, lb, ts, size, ub, ok in rows(cfg):
        mark = "-" if ok is None else ("yes" if ok else "NO")
        print(f"{t:>3} {k:>3} {lb:>10.3f} {ts:>7} {size:>7} {ub:>7} {mark}")


if __name__ == "__main__":
    main()
