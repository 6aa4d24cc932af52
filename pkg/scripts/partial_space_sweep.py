"""Run the T=6, k=2 partial-space sweep and print per-n means for every scheme.

    python3 scripts/partial_space_sweep.py --trials 100 --out results/
"""

from __future__ import annotations

import argparse
import statistics
from collections import defaultdict
from dataclasses import dataclass, field, fields
from pathlib import Path

from klimited.cover import SearchLimits
from klimited.harness import BenchRecord, records_to_csv, run_sweep, sweep_filename

SCHEMES = ("LB", "BS", "SCR", "SCR_best", "SCR_worst", "Scheme1", "UB")


@dataclass
class SweepConfig:
    t: int = 6
    k: int = 2
    n_values: list[int] = field(default_factory=lambda: list(range(7, 64, 7)))
    trials: int = 100
    seed: int = 0
    scr_trials: int = 10
    bs_seconds: float = 1.0
    jobs: int = 1
    out: str = "."


def summarize(records: list[BenchRecord]) -> str:
    by_n: dict[int, dict[str, list[int]]] = defaultdict(lambda: defaultdict(list))
    exhausted: dict[int, int] = defaultdict(int)
    for r in records:
        if r.t_k is not None:
            by_n[r.n][r.scheme].append(r.t_k)
        if r.scheme == "BS" and r.status != "ok":
            exhausted[r.n] += 1
    header = f"{'n':>4} " + " ".join(f"{s:>9}" for s in SCHEMES) + "  bs_limit"
    lines = [header]
    for n in sorted(by_n):
        cells = []
        for s in SCHEMES:
            vals = by_n[n].get(s)
            cells.append(f"{statistics.mean(vals):9.2f}" if vals else f"{'-':>9}")
        lines.append(f"{n:>4} " + " ".join(cells) + f"  {exhausted[n]:>8}")
    return "\n".join(lines)


def run(cfg: SweepConfig) -> Path:
    records = run_sweep(
        cfg.t,
        cfg.k,
        cfg.n_values,
        cfg.trials,
        seed0=cfg.seed,
        scr_trials=cfg.scr_trials,
        limits=SearchLimits(wall_clock_seconds=cfg.bs_seconds),
        jobs=cfg.jobs,
    )
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / sweep_filename(cfg.t, cfg.k)
    path.write_text(records_to_csv(records))
    print(summarize(records))
    print(f"\nraw records: {path}")
    return path


def parse_args() -> SweepConfig:
    cfg = SweepConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(cfg):
        default = getattr(cfg, f.name)
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, list):
            p.add_argument(flag, type=int, nargs="+", default=default)
        else:
            p.add_argument(flag, type=type(default), default=default)
    return SweepConfig(**vars(p.parse_args()))


if __name__ == "__main__":
    run(parse_args())
