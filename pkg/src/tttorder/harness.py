"""Monte Carlo harness: rejection-rate experiments over reference scenarios.

Each (sample size, repetition) cell draws fresh data from the scenario's
distributions, runs the configured test once for every requested functional
order, and tallies rejections. RNG substreams are keyed by (seed, n,
repetition), so results are bit-identical regardless of worker count and
removing one cell never perturbs another's stream.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from .ordertests import _nbue_reports, _two_sample_reports
from .refdist import RefDistribution
from .samples import Sample
from .transforms import scaled_ttt

__all__ = [
    "ExperimentSpec",
    "RejectionRow",
    "RejectionTable",
    "run_experiment",
    "emit_transform_plot",
    "WORKER_ENV_VAR",
]

WORKER_ENV_VAR = "TTTORDER_MAX_WORKERS"


@dataclass(frozen=True)
class ExperimentSpec:
    """One simulation scenario: distributions, test, sizes and budgets."""

    test: str  # "ttt", "ew" or "nbue"
    dist_x: RefDistribution
    dist_y: RefDistribution | None = None
    r_values: tuple = (1.0, math.inf)
    sizes: tuple = (50, 100, 200, 500)
    reps: int = 200
    n_boot: int = 300
    alpha: float = 0.1
    kind: str = "step"
    seed: int = 0

    def __post_init__(self):
        if self.test not in ("ttt", "ew", "nbue"):
            raise ValueError(f"unknown test {self.test!r}")
        if self.test == "nbue":
            if self.dist_y is not None:
                raise ValueError("the NBUE scenario is one-sample; drop dist_y")
        elif self.dist_y is None:
            raise ValueError(f"the {self.test} scenario needs dist_y")
        if self.reps < 1 or any(n < 2 for n in self.sizes):
            raise ValueError("need reps >= 1 and all sizes >= 2")

    def scenario_label(self) -> str:
        if self.dist_y is None:
            return self.dist_x.label()
        return f"{self.dist_x.label()}|{self.dist_y.label()}"


@dataclass(frozen=True)
class RejectionRow:
    scenario: str
    test: str
    r: float
    n: int
    m: int | None
    rejection_rate: float
    mc_std_err: float
    reps: int


@dataclass(frozen=True)
class RejectionTable:
    rows: tuple

    def rate(self, *, r: float, n: int) -> float:
        for row in self.rows:
            if row.r == r and row.n == n:
                return row.rejection_rate
        raise KeyError(f"no row with r={r}, n={n}")

    def std_err(self, *, r: float, n: int) -> float:
        for row in self.rows:
            if row.r == r and row.n == n:
                return row.mc_std_err
        raise KeyError(f"no row with r={r}, n={n}")

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["scenario", "test", "r", "n", "m", "rejection_rate", "mc_std_err", "reps"]
        )
        for row in self.rows:
            writer.writerow(
                [
                    row.scenario,
                    row.test,
                    "inf" if math.isinf(row.r) else f"{row.r:g}",
                    row.n,
                    "" if row.m is None else row.m,
                    f"{row.rejection_rate:.10g}",
                    f"{row.mc_std_err:.10g}",
                    row.reps,
                ]
            )
        return buf.getvalue()

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_string())


def _seed_from(ss: np.random.SeedSequence) -> int:
    return int.from_bytes(ss.generate_state(2).tobytes(), "little")


def _run_repetition(spec: ExperimentSpec, n: int, rep: int) -> list[bool]:
    ss = np.random.SeedSequence(entropy=spec.seed, spawn_key=(n, rep))
    ss_x, ss_y, ss_boot = ss.spawn(3)
    rng_x = np.random.Generator(np.random.Philox(ss_x))
    boot_seed = _seed_from(ss_boot)
    x = spec.dist_x.sample(n, rng_x)
    if spec.test == "nbue":
        reports = _nbue_reports(
            x, r_values=spec.r_values, alpha=spec.alpha, kind=spec.kind,
            n_boot=spec.n_boot, seed=boot_seed,
        )
    else:
        rng_y = np.random.Generator(np.random.Philox(ss_y))
        y = spec.dist_y.sample(n, rng_y)
        reports = _two_sample_reports(
            x, y, statistic=spec.test, r_values=spec.r_values, alpha=spec.alpha,
            kind=spec.kind, n_boot=spec.n_boot, seed=boot_seed, scheme="independent",
        )
    return [report.reject for report in reports]


def _effective_jobs(n_jobs: int | None) -> int:
    if n_jobs is None:
        n_jobs = 1
    if n_jobs < 0:
        n_jobs = os.cpu_count() or 1
    cap = os.environ.get(WORKER_ENV_VAR)
    if cap:
        n_jobs = min(n_jobs, max(1, int(cap)))
    return max(1, n_jobs)


def run_experiment(spec: ExperimentSpec, n_jobs: int | None = None) -> RejectionTable:
    """Run the Monte Carlo study and return the rejection table.

    ``n_jobs`` follows the joblib convention (-1 for all cores), capped by the
    TTTORDER_MAX_WORKERS environment variable. Output is independent of the
    worker count.
    """
    tasks = [(n, rep) for n in spec.sizes for rep in range(spec.reps)]
    results = Parallel(n_jobs=_effective_jobs(n_jobs))(
        delayed(_run_repetition)(spec, n, rep) for n, rep in tasks
    )
    rejects = {n: np.zeros(len(spec.r_values), dtype=int) for n in spec.sizes}
    for (n, _), flags in zip(tasks, results):
        rejects[n] += np.asarray(flags, dtype=int)

    scenario = spec.scenario_label()
    rows = []
    for n in spec.sizes:
        for j, r in enumerate(spec.r_values):
            rate = rejects[n][j] / spec.reps
            rows.append(
                RejectionRow(
                    scenario=scenario,
                    test=spec.test,
                    r=float(r),
                    n=n,
                    m=None if spec.test == "nbue" else n,
                    rejection_rate=float(rate),
                    mc_std_err=float(math.sqrt(rate * (1.0 - rate) / spec.reps)),
                    reps=spec.reps,
                )
            )
    return RejectionTable(rows=tuple(rows))


def emit_transform_plot(target: RefDistribution | Sample, out, points: int = 512) -> None:
    """Write plot-ready CSV of the scaled TTT transform with an identity column.

    For a distribution the curve is sampled on an evenly spaced grid; for a
    sample the grid additionally includes the empirical knots so the knot
    values appear verbatim in the file.
    """
    grid = np.linspace(0.0, 1.0, points)
    if isinstance(target, Sample):
        curve = scaled_ttt(target, kind="linear")
        grid = np.union1d(grid, curve.ps)
        values = curve(grid)
    else:
        values = np.array([target.scaled_ttt(p) for p in grid])
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p", "value", "identity"])
        for p, v in zip(grid, values):
            writer.writerow([f"{p:.10g}", f"{v:.10g}", f"{p:.10g}"])
