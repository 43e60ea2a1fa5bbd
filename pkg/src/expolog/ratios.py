"""Finite-size ratio tables and their analytic limits.

Four ratio kinds, numbered by the table they reproduce:

    5  b_{n,m}(smooth)/b_n            -> rho_a(x)
    6  c_n/b_{n,m}(rough)             -> 1/Omega_a(x)
    7  m^a b_{n,m}(rough)/b_n         -> omega_A(x)
    8  n^a c_n/b_{n,m}(smooth)        -> kappa_A/rho_a(x)

with n = floor(x m).  Up to the exact-backend crossover the fractions
are 130-bit quotients of exact integers (one rounding at the end);
beyond it the normalized float triangles supply the cumulative
fractions, whose certified err_bound (~1e-10 at n = 4000) sits far
below the published print precision.
"""

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .families import (parse_family, family_spec, connectivity_constant,
                       total_count, connected_count)
from .enumeration import (Kind, get_count_table, smooth_count, rough_count,
                          drop_cached_tables)
from .floatrows import get_float_triangle
from .specfun import dickman_rho, buchstab_Omega, omega_family

_EXACT_LIMIT = 1500         # largest n served by the exact backend
_PRECISION = 130


@dataclass(frozen=True)
class RatioReport:
    family: object
    table_id: int
    m: int
    x: float
    n: int
    finite_value: float
    limit_value: float

    @property
    def gap(self):
        return abs(self.finite_value - self.limit_value)


def _require(family, m, x, x_min_exclusive=True):
    fid = parse_family(family)
    if m < 1:
        raise ValueError("need m >= 1")
    x = float(x)
    if x_min_exclusive and not x > 1.0:
        raise ValueError(f"need x > 1, got {x}")
    if not x_min_exclusive and not x >= 1.0:
        raise ValueError(f"need x >= 1, got {x}")
    n = math.floor(x * m)
    if n < m:
        raise ValueError(f"floor(x m) = {n} < m = {m}")
    return fid, x, n


def _cum_fraction(fid, kind, n, m):
    """P(largest <= m) or P(smallest >= m) as a float."""
    if n <= _EXACT_LIMIT:
        tab = get_count_table(fid, kind, n)
        part = (smooth_count(tab, n, m) if kind is Kind.LARGEST
                else rough_count(tab, n, m))
        with gmpy2.context(precision=_PRECISION):
            return float(mpfr(part) / mpfr(tab.total(n)))
    tri = get_float_triangle(fid, kind, n)
    return tri.cum_fraction(n, m)


def _connected_fraction(fid, n):
    """c_n/b_n from exact integers at any n."""
    with gmpy2.context(precision=_PRECISION):
        return float(mpfr(connected_count(fid, n)) /
                     mpfr(total_count(fid, n)))


def smooth_ratio(family, m, x):
    """Probability the largest component has size <= m, at n = floor(x m)."""
    fid, x, n = _require(family, m, x)
    finite = _cum_fraction(fid, Kind.LARGEST, n, m)
    limit = dickman_rho(family_spec(fid).a, x)
    return RatioReport(fid, 5, m, x, n, finite, limit)


def connectedness_ratio(family, m, x):
    """Probability a rough object (smallest >= m) is connected."""
    fid, x, n = _require(family, m, x, x_min_exclusive=False)
    finite = _connected_fraction(fid, n) / _cum_fraction(fid, Kind.SMALLEST, n, m)
    a = family_spec(fid).a
    limit = 1.0 / buchstab_Omega(a, x) if x > 1.0 else 1.0
    return RatioReport(fid, 6, m, x, n, finite, limit)


def rough_probability_ratio(family, m, x):
    """m^a times the probability the smallest component has size >= m."""
    fid, x, n = _require(family, m, x)
    a = float(family_spec(fid).a)
    finite = m ** a * _cum_fraction(fid, Kind.SMALLEST, n, m)
    return RatioReport(fid, 7, m, x, n, finite, omega_family(fid, x))


def connected_over_smooth_ratio(family, m, x):
    """n^a c_n over the smooth count b_{n,m}, at n = floor(x m)."""
    fid, x, n = _require(family, m, x)
    a = float(family_spec(fid).a)
    finite = n ** a * _connected_fraction(fid, n) \
        / _cum_fraction(fid, Kind.LARGEST, n, m)
    limit = connectivity_constant(fid) / dickman_rho(family_spec(fid).a, x)
    return RatioReport(fid, 8, m, x, n, finite, limit)


_RATIO_OPS = {5: smooth_ratio, 6: connectedness_ratio,
              7: rough_probability_ratio, 8: connected_over_smooth_ratio}


def _limit_only(table_id, family, x):
    spec = family_spec(family)
    if table_id == 5:
        return dickman_rho(spec.a, x)
    if table_id == 6:
        return 1.0 / buchstab_Omega(spec.a, x) if x > 1.0 else 1.0
    if table_id == 7:
        return omega_family(family, x)
    return connectivity_constant(family) / dickman_rho(spec.a, x)


@dataclass(frozen=True)
class SweepResult:
    table_id: int
    family: object
    m_list: tuple
    x_list: tuple
    cells: tuple            # cells[i][j] = RatioReport at (m_list[i], x_list[j])
    infinity_row: tuple


def table_sweep(table_id, family, m_list, x_list, free_tables=True):
    """All (m, x) cells of one published-table block, plus its limit row."""
    if table_id not in _RATIO_OPS:
        raise ValueError(f"table_id must be one of 5,6,7,8, got {table_id}")
    op = _RATIO_OPS[table_id]
    fid = parse_family(family)
    cells = tuple(tuple(op(fid, m, x) for x in x_list) for m in m_list)
    inf_row = tuple(_limit_only(table_id, fid, float(x)) for x in x_list)
    if free_tables:
        drop_cached_tables()
    return SweepResult(table_id, fid, tuple(m_list), tuple(x_list),
                       cells, inf_row)
