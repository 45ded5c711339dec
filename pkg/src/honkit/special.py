"""Regularized incomplete gamma functions and the chi-square survival tail.

The lower regularized function P(s, x) is evaluated by its power series for
x < s + 1 and via the continued fraction of the upper function Q(s, x)
otherwise (modified Lentz iteration). Both expansions are carried to relative
machine accuracy, well past the 1e-12 the significance tests require, and the
tail Q is always formed directly in whichever regime is numerically natural
so small p-values keep full relative precision.
"""

from __future__ import annotations

import math

_MAX_ITER = 10_000
_EPS = 1e-16
_TINY = 1e-300


def _lower_series(s: float, x: float) -> float:
    """P(s, x) by the ascending series; accurate for x < s + 1."""
    ap = s
    term = 1.0 / s
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    log_front = s * math.log(x) - x - math.lgamma(s)
    return total * math.exp(log_front)


def _upper_continued_fraction(s: float, x: float) -> float:
    """Q(s, x) by the continued fraction; accurate for x >= s + 1."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
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
            break
    log_front = s * math.log(x) - x - math.lgamma(s)
    return h * math.exp(log_front)


def gammainc_lower(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s)."""
    if s <= 0:
        raise ValueError(f"shape parameter must be positive, got {s}")
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if x == 0.0:
        return 0.0
    if x < s + 1.0:
        return _lower_series(s, x)
    return 1.0 - _upper_continued_fraction(s, x)


def gammainc_upper(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x)."""
    if s <= 0:
        raise ValueError(f"shape parameter must be positive, got {s}")
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if x == 0.0:
        return 1.0
    if x < s + 1.0:
        return 1.0 - _lower_series(s, x)
    return _upper_continued_fraction(s, x)


def chi2_survival(stat: float, df: float) -> float:
    """P(X >= stat) for X ~ chi-square with df degrees of freedom.

    df = 0 denotes the degenerate point mass at zero: survival is 1 at
    stat = 0 and 0 beyond.
    """
    if df < 0:
        raise ValueError(f"degrees of freedom must be nonnegative, got {df}")
    if stat < 0:
        raise ValueError(f"statistic must be nonnegative, got {stat}")
    if df == 0:
        return 1.0 if stat == 0.0 else 0.0
    return gammainc_upper(df / 2.0, stat / 2.0)
