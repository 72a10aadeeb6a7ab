"""Scalar special functions: upper incomplete gamma and Gauss 2F1.

Both are implemented directly so their accuracy is pinned by this package
rather than inherited from the environment. The incomplete gamma uses the
classic split: power series for the lower function when x < s + 1, modified
Lentz continued fraction for the upper function otherwise. The
hypergeometric series is summed directly for 0 <= z < 1 and reached through
the Pfaff transformation z -> z/(z-1) for z < 0, which is the regime produced
by the Singh-Maddala transform (its argument is always nonpositive and can
exceed 1 in magnitude).
"""

from __future__ import annotations

import math

from .exceptions import NonConvergenceError

__all__ = ["upper_incomplete_gamma", "lower_regularized_gamma", "gauss_2f1"]

_EPS = 1e-16
_MAX_ITER = 500
_TINY = 1e-300


def _gamma_p_series(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x) by power series (x < s + 1)."""
    term = 1.0 / s
    total = term
    a = s
    for _ in range(_MAX_ITER):
        a += 1.0
        term *= x / a
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + s * math.log(x) - math.lgamma(s))
    raise NonConvergenceError(f"gamma series failed for s={s}, x={x}")


def _gamma_q_contfrac(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) by continued fraction (x >= s + 1)."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-x + s * math.log(x) - math.lgamma(s))
    raise NonConvergenceError(f"gamma continued fraction failed for s={s}, x={x}")


def lower_regularized_gamma(s: float, x: float) -> float:
    """P(s, x) = gamma(s, x) / Gamma(s)."""
    if s <= 0:
        raise ValueError(f"shape must be positive, got {s}")
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if x == 0.0:
        return 0.0
    if x < s + 1.0:
        return _gamma_p_series(s, x)
    return 1.0 - _gamma_q_contfrac(s, x)


def upper_incomplete_gamma(s: float, x: float) -> float:
    """Unnormalized upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^-t dt."""
    if s <= 0:
        raise ValueError(f"shape must be positive, got {s}")
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if x == 0.0:
        return math.gamma(s)
    if x < s + 1.0:
        q = 1.0 - _gamma_p_series(s, x)
    else:
        q = _gamma_q_contfrac(s, x)
    return q * math.gamma(s)


def _hyp2f1_series(a: float, b: float, c: float, z: float) -> float:
    term = 1.0
    total = 1.0
    for k in range(_MAX_ITER * 20):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) < abs(total) * _EPS:
            return total
    raise NonConvergenceError(f"2F1 series failed for ({a}, {b}; {c}; {z})")


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) for z < 1."""
    if c <= 0 and c == int(c):
        raise ValueError(f"c must not be a nonpositive integer, got {c}")
    if z >= 1.0:
        raise ValueError(f"argument must be < 1, got {z}")
    if z == 0.0:
        return 1.0
    if z < 0.0:
        # Pfaff: 2F1(a, b; c; z) = (1-z)^(-a) * 2F1(a, c-b; c; z/(z-1)),
        # mapping any z < 0 into [0, 1).
        return (1.0 - z) ** (-a) * _hyp2f1_series(a, c - b, c, z / (z - 1.0))
    return _hyp2f1_series(a, b, c, z)
