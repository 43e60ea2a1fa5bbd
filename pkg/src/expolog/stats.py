"""Row statistics: means, variances, medians, and table normalizations.

Two input flavors.  Exact rows (ExactRow, built from a CountTable) give
statistics as correctly rounded 130-bit ratios of exact integers; the
variance numerator S2*b - S1^2 is formed in integers first, so nothing
cancels in floating point.  Float rows (ScaledDistribution) use plain
doubles with extended-precision accumulation and inherit the row's
err_bound.

The median convention is min{k : P(K <= k) >= 1/2}.  The strict variant
min{k : P(K <= k) > 1/2} is evaluated alongside; the two disagree only
when the CDF hits 1/2 exactly, and the report carries both so the caller
can see the ambiguity instead of silently picking one.

One asymmetry to be aware of: the tabulated spread column for the
smallest component is the scaled raw second moment E[S^2] (its limit is
the (1,2) moment integral directly), while the largest-side column is
the central variance.  normalized_variance follows the tables; the
variance field itself is always central.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import gmpy2
from gmpy2 import mpfr

from .families import family_spec
from .enumeration import CountTable, Kind
from .floatrows import ScaledDistribution

_STAT_PRECISION = 130


@dataclass(frozen=True)
class ExactRow:
    """One exact table row: cells[k] = count with statistic k, k = 0..n."""
    family: object
    kind: Kind
    n: int
    cells: tuple
    total: object


def exact_row(table, n):
    if table.total(n) == 0:
        raise ValueError(f"b_n = 0 for {table.family.value} n={n}")
    return ExactRow(table.family, table.kind, n,
                    tuple(table.row(n)), table.total(n))


@dataclass(frozen=True)
class RowStats:
    family: object
    kind: Kind
    n: int
    mean: float
    variance: float
    median: int
    median_strict: int          # strict-inequality convention
    normalized_mean: float
    normalized_variance: float
    normalized_median: float
    err_bound: float

    @property
    def median_ambiguous(self):
        return self.median != self.median_strict


def _normalize(kind, a, n, mean, variance, median):
    if kind is Kind.LARGEST:
        return mean / n, variance / n**2, median / n
    if a == 1:
        dmean, dvar = math.log(n), float(n)
    else:
        dmean, dvar = math.sqrt(n), float(n)**1.5
    nmean = mean / dmean if dmean > 0 else math.nan
    nmedian = median / dmean if dmean > 0 else math.nan
    return nmean, (variance + mean * mean) / dvar, nmedian


def _exact_stats(row):
    n, b = row.n, row.total
    s1 = sum(k * c for k, c in enumerate(row.cells))
    s2 = sum(k * k * c for k, c in enumerate(row.cells))
    with gmpy2.context(precision=_STAT_PRECISION):
        mean = float(mpfr(s1) / mpfr(b))
        variance = float(mpfr(s2 * b - s1 * s1) / mpfr(b * b))
    pref = 0
    median = median_strict = None
    for k, c in enumerate(row.cells):
        pref += c
        if median is None and 2 * pref >= b:
            median = k
        if median_strict is None and 2 * pref > b:
            median_strict = k
    return mean, variance, median, median_strict, 0.0


def _float_stats(dist):
    p = np.asarray(dist.probs, dtype=np.longdouble)
    k = np.arange(len(p), dtype=np.longdouble)
    mean = float(np.dot(k, p))
    variance = float(np.dot(k * k, p)) - mean * mean
    cdf = np.cumsum(p).astype(np.float64)
    half = 0.5 * float(cdf[-1])
    median = int(np.searchsorted(cdf, half, side="left"))
    median_strict = int(np.searchsorted(cdf, half, side="right"))
    return mean, variance, median, median_strict, dist.err_bound


def row_stats(dist, scaling=None):
    """Mean, variance, median, and normalized values for one table row.

    dist is an ExactRow or a ScaledDistribution; scaling overrides the
    family's exp-log parameter a when given.
    """
    if not isinstance(dist, (ExactRow, ScaledDistribution)):
        raise TypeError(f"cannot take row stats of {type(dist).__name__}")
    if dist.n < 1:
        raise ValueError("need n >= 1")
    if isinstance(dist, ExactRow):
        mean, var, med, med_s, err = _exact_stats(dist)
    else:
        mean, var, med, med_s, err = _float_stats(dist)
    a = Fraction(scaling) if scaling is not None else family_spec(dist.family).a
    nmean, nvar, nmed = _normalize(dist.kind, a, dist.n, mean, var, med)
    return RowStats(dist.family, dist.kind, dist.n, mean, var, med, med_s,
                    nmean, nvar, nmed, err)


def limit_constants(family, kind):
    """n -> oo values of the normalized columns, from the moment integrals.

    Largest: {mean, variance, median}; smallest: {mean, variance} (the
    smallest-side median has no tabulated scaling).
    """
    from .specfun import moments
    spec = family_spec(family)
    a = float(spec.a)
    from .enumeration import parse_kind
    if parse_kind(kind) is Kind.LARGEST:
        m1 = moments.moment_largest(a, 1, 1).value
        m2 = moments.moment_largest(a, 1, 2).value
        return {"mean": m1, "variance": m2 - m1 * m1,
                "median": moments.median_limit(spec.a)}
    s1 = moments.moment_smallest(a, 1, 1).value
    s2 = moments.moment_smallest(a, 1, 2).value
    return {"mean": spec.shortest_scale * s1,
            "variance": spec.shortest_scale * s2}
