"""Empirical total-time-on-test, scaled TTT and excess-wealth curves.

Every transform is represented as a piecewise curve on [0, 1] with knots at
the points k/n. Two evaluation conventions are supported:

* ``linear`` -- the piecewise-linear interpolant through the knots (the
  definitional estimator);
* ``step`` -- a right-continuous step function holding each knot value on
  [k/n, (k+1)/n), with the closing point p = 1 taking the last knot value.

The step variant is the default statistic downstream; the difference between
the two is asymptotically negligible.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import KindMismatchError, ZeroMeanError
from .samples import Sample

__all__ = [
    "CurveKind",
    "PiecewiseCurve",
    "ttt_knot_values",
    "ttt_empirical",
    "scaled_ttt",
    "excess_wealth_empirical",
    "curve_difference",
    "knot_grid",
]


class CurveKind(str, Enum):
    LINEAR = "linear"
    STEP = "step"


def _as_kind(kind) -> CurveKind:
    return CurveKind(kind)


@dataclass(frozen=True)
class PiecewiseCurve:
    """A function on [0, 1] given by knots and an evaluation convention."""

    ps: np.ndarray
    values: np.ndarray
    kind: CurveKind

    def __post_init__(self):
        ps = np.asarray(self.ps, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if ps.shape != values.shape or ps.ndim != 1 or ps.size < 2:
            raise ValueError("knots must be two 1-d arrays of equal length >= 2")
        if ps[0] != 0.0 or ps[-1] != 1.0 or np.any(np.diff(ps) <= 0):
            raise ValueError("knot abscissae must increase strictly from 0 to 1")
        ps.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "ps", ps)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "kind", _as_kind(self.kind))

    def __call__(self, p):
        p_arr = np.asarray(p, dtype=float)
        if np.any(p_arr < 0) or np.any(p_arr > 1):
            raise ValueError("curves are defined on [0, 1] only")
        if self.kind is CurveKind.LINEAR:
            out = np.interp(p_arr, self.ps, self.values)
        else:
            idx = np.searchsorted(self.ps, p_arr, side="right") - 1
            idx = np.minimum(idx, self.ps.size - 1)
            out = self.values[idx]
        return float(out) if np.isscalar(p) else out

    def segments(self):
        """Per-segment endpoint values ``(t0, t1, v0, v1)`` plus the value at p=1.

        On [t0, t1) the curve runs linearly from v0 to v1 (v0 == v1 for step
        curves). The closing value at p = 1 matters only for sup-type
        functionals.
        """
        t0, t1 = self.ps[:-1], self.ps[1:]
        if self.kind is CurveKind.LINEAR:
            v0, v1 = self.values[:-1], self.values[1:]
        else:
            v0 = v1 = self.values[:-1]
        return t0, t1, v0, v1, float(self.values[-1])

    def scale(self, c: float) -> "PiecewiseCurve":
        return PiecewiseCurve(self.ps, c * self.values, self.kind)

    def to_csv(self, path) -> None:
        """Write the knots as CSV rows ``p,value``."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["p", "value"])
            for p, v in zip(self.ps, self.values):
                writer.writerow([repr(float(p)), repr(float(v))])


def knot_grid(n: int) -> np.ndarray:
    """The canonical knot abscissae k/n, k = 0..n."""
    return np.arange(n + 1) / n


def ttt_knot_values(sorted_values: np.ndarray) -> np.ndarray:
    """TTT values at the knots k/n for an already-sorted array.

    T(k/n) = (n-k)/n * x_(k) + (1/n) * sum_{i<=k} x_(i), with T(0) = 0 and
    T(1) equal to the sample mean.
    """
    x = np.asarray(sorted_values, dtype=float)
    n = x.size
    k = np.arange(1, n + 1)
    out = np.empty(n + 1)
    out[0] = 0.0
    out[1:] = ((n - k) * x + np.cumsum(x)) / n
    return out


def ttt_empirical(s: Sample, kind=CurveKind.STEP) -> PiecewiseCurve:
    """Empirical TTT transform of a sample as a curve on [0, 1]."""
    return PiecewiseCurve(knot_grid(s.n), ttt_knot_values(s.values), kind)


def scaled_ttt(s: Sample, kind=CurveKind.STEP) -> PiecewiseCurve:
    """Empirical TTT divided by the sample mean; ends at 1."""
    if s.mean == 0.0:
        raise ZeroMeanError("scaled TTT undefined for an all-zero sample")
    values = ttt_knot_values(s.values)
    return PiecewiseCurve(knot_grid(s.n), values / values[-1], kind)


def excess_wealth_empirical(s: Sample, kind=CurveKind.STEP) -> PiecewiseCurve:
    """Empirical excess-wealth transform: sample mean minus the TTT curve."""
    values = ttt_knot_values(s.values)
    return PiecewiseCurve(knot_grid(s.n), values[-1] - values, kind)


def curve_difference(a: PiecewiseCurve, b: PiecewiseCurve) -> PiecewiseCurve:
    """The curve a - b on the union of the two knot grids.

    Exact everywhere for matching kinds: a difference of step functions is a
    step function on the merged grid, and likewise for piecewise-linear.
    """
    if a.kind is not b.kind:
        raise KindMismatchError(f"cannot mix curve kinds {a.kind.value} and {b.kind.value}")
    grid = np.union1d(a.ps, b.ps)
    return PiecewiseCurve(grid, a(grid) - b(grid), a.kind)
