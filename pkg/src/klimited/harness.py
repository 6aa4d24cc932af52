"""Instance generation and benchmark sweeps."""

from __future__ import annotations

import csv
import io
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .bounds import log2_exact, scr_bounds, t_star
from .cover import SearchLimitExceeded, SearchLimits
from .gf2 import BitMatrix, rank_of
from .schemes import branch, scheme1_adapted, scr, search

log = logging.getLogger(__name__)

REJECTION_ATTEMPTS = 1000
CSV_FIELDS = ("scheme", "n", "t", "k", "seed", "t_k", "elapsed_ms", "status")


class Family(str, Enum):
    UNIFORM = "uniform_full_rank"
    PLANTED = "planted_circuits"
    NESTED = "nested"


@dataclass(frozen=True)
class InstanceSpec:
    t: int
    n: int
    seed: int
    family: Family = Family.UNIFORM
    circuit_size: int = 3


def _random_basis(t: int, rng: random.Random) -> list[int]:
    while True:
        rows = [rng.randrange(1, 1 << t) for _ in range(t)]
        if rank_of(rows) == t:
            return rows


def _uniform(spec: InstanceSpec, rng: random.Random) -> tuple[list[int], bool]:
    space = range(1, 1 << spec.t)
    for _ in range(REJECTION_ATTEMPTS):
        rows = rng.sample(space, spec.n)
        if rank_of(rows) == spec.t:
            return rows, False
    log.warning("rank rejection failed %d times for %s; forcing a basis", REJECTION_ATTEMPTS, spec)
    units = [1 << i for i in range(spec.t)]
    rest = rng.sample([v for v in space if v not in set(units)], spec.n - spec.t)
    rows = units + rest
    rng.shuffle(rows)
    return rows, True


def _planted(spec: InstanceSpec, rng: random.Random) -> list[int]:
    c = spec.circuit_size
    if c < 2:
        raise ValueError("circuit size must be at least 2")
    count = spec.n // c
    used = count * (c - 1)
    fillers = spec.n - count * c
    if used > spec.t or used + fillers < spec.t:
        raise ValueError(f"cannot plant {count} circuits of size {c} with rank {spec.t} in {spec.n} rows")
    rows = []
    for b in range(count):
        block = [1 << (b * (c - 1) + j) for j in range(c - 1)]
        acc = 0
        for v in block:
            acc ^= v
        rows.extend(block + [acc])
    free = [1 << j for j in range(used, spec.t)]
    rows.extend(free)
    taken = set(rows)
    while len(rows) < spec.n:
        v = rng.randrange(1, 1 << spec.t)
        if v not in taken:
            taken.add(v)
            rows.append(v)
    perm = list(range(spec.t))
    rng.shuffle(perm)
    rows = [sum(1 << perm[j] for j in range(spec.t) if (v >> j) & 1) for v in rows]
    rng.shuffle(rows)
    return rows


def _nested(spec: InstanceSpec, rng: random.Random) -> list[int]:
    if spec.n > 2 * spec.t - 1:
        raise ValueError(f"nested instances need n <= 2t - 1; got n={spec.n}, t={spec.t}")
    basis = _random_basis(spec.t, rng)
    lengths = rng.sample(range(2, spec.t + 1), spec.n - spec.t)
    prefix = []
    acc = 0
    for v in basis:
        acc ^= v
        prefix.append(acc)
    dependents = [prefix[ell - 1] for ell in lengths]
    order = list(range(spec.t))
    rng.shuffle(order)
    return [basis[i] for i in order] + dependents


def generate(spec: InstanceSpec) -> BitMatrix:
    """n distinct nonzero rows of rank t, deterministic in ``spec.seed``."""
    if spec.t < 1 or not spec.t <= spec.n <= 2**spec.t - 1:
        raise ValueError(f"need 1 <= t <= n <= 2^t - 1; got t={spec.t}, n={spec.n}")
    rng = random.Random(spec.seed)
    family = Family(spec.family)
    if family is Family.UNIFORM:
        rows, _ = _uniform(spec, rng)
    elif family is Family.PLANTED:
        rows = _planted(spec, rng)
    else:
        rows = _nested(spec, rng)
    return BitMatrix(spec.t, tuple(rows))


@dataclass(frozen=True)
class BenchRecord:
    scheme: str
    n: int
    t: int
    k: int
    seed: int
    t_k: int | None
    elapsed_ms: float
    status: str = "ok"

    def csv_row(self) -> list[str]:
        return [
            self.scheme,
            str(self.n),
            str(self.t),
            str(self.k),
            str(self.seed),
            "" if self.t_k is None else str(self.t_k),
            f"{self.elapsed_ms:.3f}",
            self.status,
        ]


def trial_seed(seed0: int, n: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed0, n, trial]).generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class _Job:
    t: int
    k: int
    n: int
    seed: int
    family: Family
    circuit_size: int
    scr_trials: int
    limits: SearchLimits
    timing: bool


def _timed(timing: bool):
    start = time.perf_counter()
    return lambda: (time.perf_counter() - start) * 1000 if timing else 0.0


def _run_job(job: _Job) -> list[BenchRecord]:
    t, k, n, seed = job.t, job.k, job.n, job.seed
    g = generate(InstanceSpec(t, n, seed, job.family, job.circuit_size))
    rec = lambda scheme, t_k, ms, status="ok": BenchRecord(scheme, n, t, k, seed, t_k, ms, status)  # noqa: E731
    out = [rec("LB", t_star(n, k), 0.0), rec("UB", n, 0.0)]

    clock = _timed(job.timing)
    out.append(rec("Scheme1", scheme1_adapted(g, k).size, clock()))

    q = log2_exact(k)
    if q is None or q < 1:
        log.warning("SCR needs k = 2^q with q >= 1; k=%d recorded as limit_exhausted", k)
        out += [rec(name, None, 0.0, "limit_exhausted") for name in ("SCR", "SCR_best", "SCR_worst")]
    else:
        clock = _timed(job.timing)
        out.append(rec("SCR", scr(g, q, job.scr_trials, seed).size, clock()))
        best, worst = scr_bounds(n, t, q)
        out += [rec("SCR_best", best, 0.0), rec("SCR_worst", worst, 0.0)]

    clock = _timed(job.timing)
    try:
        _, pool = branch(g, k)
        out.append(rec("BS", search(pool, g, k, job.limits).size, clock()))
    except SearchLimitExceeded as exc:
        size = exc.best.size if exc.best is not None else None
        out.append(rec("BS", size, clock(), "limit_exhausted"))
    return out


def run_sweep(
    t: int,
    k: int,
    n_values: Iterable[int],
    trials: int,
    seed0: int = 0,
    family: Family | str = Family.UNIFORM,
    circuit_size: int = 3,
    scr_trials: int = 10,
    limits: SearchLimits | None = None,
    timing: bool = True,
    jobs: int = 1,
) -> list[BenchRecord]:
    """Raw per-trial records for every scheme, in (n, trial) order.

    With ``timing=False`` every elapsed_ms is 0 and the output is
    byte-for-byte reproducible.
    """
    limits = limits or SearchLimits()
    family = Family(family)
    work = [
        _Job(t, k, n, trial_seed(seed0, n, trial), family, circuit_size, scr_trials, limits, timing)
        for n in n_values
        for trial in range(trials)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            batches = list(pool.map(_run_job, work))
    else:
        batches = [_run_job(job) for job in work]
    return [record for batch in batches for record in batch]


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for record in records:
        writer.writerow(record.csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        BenchRecord(
            scheme=row["scheme"],
            n=int(row["n"]),
            t=int(row["t"]),
            k=int(row["k"]),
            seed=int(row["seed"]),
            t_k=int(row["t_k"]) if row["t_k"] else None,
            elapsed_ms=float(row["elapsed_ms"]),
            status=row["status"],
        )
        for row in reader
    ]


def sweep_filename(t: int, k: int) -> str:
    return f"sweep_T{t}_k{k}.csv"
