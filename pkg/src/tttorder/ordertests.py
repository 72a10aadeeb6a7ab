"""Bootstrap tests for the TTT order, the excess-wealth order and NBUE fit.

The two-sample tests measure the positive part of the difference between the
empirical transforms of the two samples on the union of their knot grids; the
one-sample NBUE test measures how far the scaled TTT curve falls below the
identity. Critical values come from multinomial-weight bootstrap replicates
of the recentred difference. The scaling factor sqrt(nm/(n+m)) (sqrt(n) for
the one-sample test) multiplies both sides of the replicate comparison and
cancels, so p-values are computed from unscaled statistics; the scaled
statistic is reported for information.

Test objects follow the scikit-learn estimator protocol: parameters are set
in ``__init__`` and ``fit`` populates trailing-underscore attributes.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .exceptions import SchemeMismatchError, ZeroMeanError
from .functionals import _check_r, phi_below_identity, phi_segments
from .resampling import bootstrap_pvalue, draw_weights, replicate_rng
from .samples import PairedSample, Sample, ingest
from .transforms import CurveKind, PiecewiseCurve, knot_grid, ttt_knot_values

__all__ = [
    "TestReport",
    "test_ttt_order",
    "test_ew_order",
    "test_nbue",
    "TTTOrderTest",
    "ExcessWealthOrderTest",
    "NBUETest",
]


@dataclass(frozen=True)
class TestReport:
    """Outcome of one test run, serializable to a stable JSON object."""

    test: str
    r: float
    alpha: float
    n: int
    m: int | None
    statistic: float
    scaled_statistic: float
    p_value: float
    reject: bool
    n_boot: int
    seed: int
    scheme: str | None
    kind: str
    replicate_min: float
    replicate_median: float
    replicate_max: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["r"] = "inf" if math.isinf(self.r) else self.r
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")
    return alpha


def _as_sample(x) -> Sample:
    return x if isinstance(x, Sample) else ingest(x)


def _grid_values(n: int, grid: np.ndarray, kind: CurveKind):
    """A function mapping TTT knot values (length n+1) to values on ``grid``."""
    ps = knot_grid(n)
    if kind is CurveKind.STEP:
        ix = np.searchsorted(ps, grid, side="right") - 1
        return lambda knots: knots[ix]
    return lambda knots: np.interp(grid, ps, knots)


def _stat_on_grid(grid: np.ndarray, vals: np.ndarray, kind: CurveKind, r: float) -> float:
    if kind is CurveKind.STEP:
        return phi_segments(grid[:-1], grid[1:], vals[:-1], vals[:-1], vals[-1], r)
    return phi_segments(grid[:-1], grid[1:], vals[:-1], vals[1:], vals[-1], r)


def _make_reports(test, r_values, alpha, n, m, observed, rep_stats, scale,
                  n_boot, seed, scheme, kind) -> list[TestReport]:
    reports = []
    for j, r in enumerate(r_values):
        stats_j = rep_stats[:, j]
        p = bootstrap_pvalue(observed[j], stats_j)
        reports.append(
            TestReport(
                test=test,
                r=r,
                alpha=alpha,
                n=n,
                m=m,
                statistic=observed[j],
                scaled_statistic=scale * observed[j],
                p_value=p,
                reject=p < alpha,
                n_boot=n_boot,
                seed=seed,
                scheme=scheme,
                kind=kind.value,
                replicate_min=float(stats_j.min()),
                replicate_median=float(np.median(stats_j)),
                replicate_max=float(stats_j.max()),
            )
        )
    return reports


def _two_sample_reports(x, y, *, statistic, r_values, alpha, kind, n_boot, seed,
                        scheme) -> list[TestReport]:
    kind = CurveKind(kind)
    alpha = _check_alpha(alpha)
    r_values = [_check_r(r) for r in r_values]

    if scheme == "paired":
        if isinstance(x, PairedSample) and y is None:
            ps = x
        elif not isinstance(x, (Sample, PairedSample)) and y is not None:
            ps = PairedSample(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        else:
            raise SchemeMismatchError(
                "paired scheme needs a PairedSample or two equal-length arrays"
            )
        xs, ys = ps.marginals()
        px, py = ps.x, ps.y
    elif scheme == "independent":
        if y is None or isinstance(x, PairedSample):
            raise SchemeMismatchError("independent scheme needs two separate samples")
        xs, ys = _as_sample(x), _as_sample(y)
        px = py = None
    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    n, m = xs.n, ys.n
    grid = np.union1d(knot_grid(n), knot_grid(m))
    at_grid_x = _grid_values(n, grid, kind)
    at_grid_y = _grid_values(m, grid, kind)

    def delta(tx_knots, ty_knots):
        if statistic == "ttt":
            return at_grid_y(ty_knots) - at_grid_x(tx_knots)
        # excess wealth: W = mean - T, and the mean is the last TTT knot
        wx = tx_knots[-1] - at_grid_x(tx_knots)
        wy = ty_knots[-1] - at_grid_y(ty_knots)
        return wy - wx

    d_hat = delta(ttt_knot_values(xs.values), ttt_knot_values(ys.values))
    observed = [_stat_on_grid(grid, d_hat, kind, r) for r in r_values]

    rep_stats = np.empty((n_boot, len(r_values)))
    for k in range(n_boot):
        if scheme == "paired":
            w = draw_weights(n, replicate_rng(seed, k, stream=0))
            xs_star = np.sort(np.repeat(px, w))
            ys_star = np.sort(np.repeat(py, w))
        else:
            wx = draw_weights(n, replicate_rng(seed, k, stream=0))
            wy = draw_weights(m, replicate_rng(seed, k, stream=1))
            xs_star = np.repeat(xs.values, wx)
            ys_star = np.repeat(ys.values, wy)
        pivot = delta(ttt_knot_values(xs_star), ttt_knot_values(ys_star)) - d_hat
        for j, r in enumerate(r_values):
            rep_stats[k, j] = _stat_on_grid(grid, pivot, kind, r)

    scale = math.sqrt(n * m / (n + m))
    return _make_reports(statistic if statistic == "ttt" else "ew", r_values, alpha,
                         n, m, observed, rep_stats, scale, n_boot, seed, scheme, kind)


def _scaled_ttt_knots(sorted_values: np.ndarray, n: int) -> np.ndarray:
    knots = ttt_knot_values(sorted_values)
    if knots[-1] == 0.0:
        # all-zero resample: the scaled transform degenerates to the identity
        return knot_grid(n)
    return knots / knots[-1]


def _nbue_reports(x, *, r_values, alpha, kind, n_boot, seed) -> list[TestReport]:
    kind = CurveKind(kind)
    alpha = _check_alpha(alpha)
    r_values = [_check_r(r) for r in r_values]
    xs = _as_sample(x)
    if xs.mean == 0.0:
        raise ZeroMeanError("NBUE test undefined for an all-zero sample")

    n = xs.n
    grid = knot_grid(n)
    s_hat = ttt_knot_values(xs.values)
    s_hat = s_hat / s_hat[-1]
    curve = PiecewiseCurve(grid, s_hat, kind)
    observed = [phi_below_identity(curve, r) for r in r_values]

    rep_stats = np.empty((n_boot, len(r_values)))
    for k in range(n_boot):
        w = draw_weights(n, replicate_rng(seed, k, stream=0))
        s_star = _scaled_ttt_knots(np.repeat(xs.values, w), n)
        pivot = s_hat - s_star
        for j, r in enumerate(r_values):
            rep_stats[k, j] = _stat_on_grid(grid, pivot, kind, r)

    return _make_reports("nbue", r_values, alpha, n, None, observed, rep_stats,
                         math.sqrt(n), n_boot, seed, None, kind)


def test_ttt_order(x, y=None, *, r=math.inf, alpha=0.1, n_boot=500, kind="step",
                   scheme="independent", seed=0) -> TestReport:
    """Test the null that X dominates Y in the TTT order; small p rejects it."""
    return _two_sample_reports(x, y, statistic="ttt", r_values=[r], alpha=alpha,
                               kind=kind, n_boot=n_boot, seed=seed, scheme=scheme)[0]


def test_ew_order(x, y=None, *, r=math.inf, alpha=0.1, n_boot=500, kind="step",
                  scheme="independent", seed=0) -> TestReport:
    """Test the null that X dominates Y in the excess-wealth order."""
    return _two_sample_reports(x, y, statistic="ew", r_values=[r], alpha=alpha,
                               kind=kind, n_boot=n_boot, seed=seed, scheme=scheme)[0]


def test_nbue(x, *, r=math.inf, alpha=0.1, n_boot=500, kind="step", seed=0) -> TestReport:
    """Goodness-of-fit test of the NBUE null for a one-sample input."""
    return _nbue_reports(x, r_values=[r], alpha=alpha, kind=kind,
                         n_boot=n_boot, seed=seed)[0]


class _BootstrapTest(BaseEstimator):
    _test_fn = None  # set by subclasses

    def __init__(self, r=math.inf, alpha=0.1, n_boot=500, kind="step",
                 scheme="independent", seed=0):
        self.r = r
        self.alpha = alpha
        self.n_boot = n_boot
        self.kind = kind
        self.scheme = scheme
        self.seed = seed

    def _store(self, report: TestReport) -> "_BootstrapTest":
        self.report_ = report
        self.statistic_ = report.statistic
        self.scaled_statistic_ = report.scaled_statistic
        self.p_value_ = report.p_value
        self.reject_ = report.reject
        self.n_ = report.n
        self.m_ = report.m
        return self


class TTTOrderTest(_BootstrapTest):
    """Two-sample bootstrap test of TTT-order dominance of ``x`` over ``y``."""

    def fit(self, x, y=None):
        return self._store(
            test_ttt_order(x, y, r=self.r, alpha=self.alpha, n_boot=self.n_boot,
                           kind=self.kind, scheme=self.scheme, seed=self.seed)
        )


class ExcessWealthOrderTest(_BootstrapTest):
    """Two-sample bootstrap test of excess-wealth-order dominance."""

    def fit(self, x, y=None):
        return self._store(
            test_ew_order(x, y, r=self.r, alpha=self.alpha, n_boot=self.n_boot,
                          kind=self.kind, scheme=self.scheme, seed=self.seed)
        )


class NBUETest(_BootstrapTest):
    """One-sample bootstrap goodness-of-fit test of the NBUE property."""

    def __init__(self, r=math.inf, alpha=0.1, n_boot=500, kind="step", seed=0):
        super().__init__(r=r, alpha=alpha, n_boot=n_boot, kind=kind,
                         scheme="independent", seed=seed)

    def fit(self, x, y=None):
        return self._store(
            test_nbue(x, r=self.r, alpha=self.alpha, n_boot=self.n_boot,
                      kind=self.kind, seed=self.seed)
        )
