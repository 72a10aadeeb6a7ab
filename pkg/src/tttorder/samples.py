"""Sample containers, validation and empirical CDF helpers.

Observations are nonnegative reals. Samples are stored sorted and are
immutable, so they can be shared freely across bootstrap workers. Ties and
zeros are accepted: the empirical formulas downstream remain well defined,
even though the asymptotic theory assumes a continuous distribution with no
mass at zero.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    EmptyInputError,
    NegativeValueError,
    NonFiniteValueError,
    SchemeMismatchError,
)

__all__ = [
    "Sample",
    "PairedSample",
    "ingest",
    "ingest_paired",
    "order_statistic",
    "empirical_cdf",
    "read_sample_csv",
    "read_paired_csv",
]


def _validated(raw) -> np.ndarray:
    values = np.asarray(raw, dtype=float).ravel()
    if values.size == 0:
        raise EmptyInputError("no observations given")
    if values.size < 2:
        raise EmptyInputError("need at least two observations")
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueError("observations must be finite")
    if np.any(values < 0):
        raise NegativeValueError("observations must be nonnegative")
    return values


@dataclass(frozen=True)
class Sample:
    """A sorted, immutable collection of nonnegative observations."""

    values: np.ndarray

    def __post_init__(self):
        values = np.sort(_validated(self.values))
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    def scaled(self, c: float) -> "Sample":
        """The sample with every observation multiplied by ``c > 0``."""
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Sample(self.values * c)


@dataclass(frozen=True)
class PairedSample:
    """Matched pairs of nonnegative observations, kept in pairing order."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _validated(self.x)
        y = _validated(self.y)
        if x.size != y.size:
            raise SchemeMismatchError(
                f"paired sample coordinates differ in length ({x.size} vs {y.size})"
            )
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.size

    def marginals(self) -> tuple[Sample, Sample]:
        return Sample(self.x), Sample(self.y)


def ingest(raw) -> Sample:
    """Validate and sort raw observations into a :class:`Sample`."""
    return Sample(np.asarray(raw, dtype=float))


def ingest_paired(raw_x, raw_y) -> PairedSample:
    """Validate matched observations into a :class:`PairedSample`."""
    return PairedSample(np.asarray(raw_x, dtype=float), np.asarray(raw_y, dtype=float))


def order_statistic(s: Sample, k: int) -> float:
    """The k-th smallest observation; rank 0 is defined as 0."""
    if k == 0:
        return 0.0
    if not 1 <= k <= s.n:
        raise IndexError(f"rank {k} out of range 0..{s.n}")
    return float(s.values[k - 1])


def empirical_cdf(s: Sample, x) -> np.ndarray | float:
    """Fraction of observations <= x (right-continuous step function)."""
    counts = np.searchsorted(s.values, x, side="right")
    out = counts / s.n
    return float(out) if np.isscalar(x) else out


def _read_rows(path) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    # A non-numeric first row is an (optional) header.
    try:
        float(rows[0][0])
    except ValueError:
        rows = rows[1:]
    if not rows:
        raise EmptyInputError(f"{path}: no data rows after header")
    return rows


def read_sample_csv(path) -> Sample:
    """Read a one-column CSV of observations (header row optional)."""
    return ingest([float(row[0]) for row in _read_rows(path)])


def read_paired_csv(path) -> PairedSample:
    """Read a two-column CSV of matched pairs x,y (header row optional)."""
    rows = _read_rows(path)
    if any(len(row) < 2 for row in rows):
        raise SchemeMismatchError(f"{path}: paired input needs two columns per row")
    return ingest_paired(
        [float(row[0]) for row in rows], [float(row[1]) for row in rows]
    )
