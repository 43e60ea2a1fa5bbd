"""Normalized row backend: probabilities p_k = cell(k,n)/b_n in log space.

The exact recursions are rewritten per row as

    p_k = sum_j exp(lf[n] - lf[j] + j*(lc[k] - lf[k]) - lf[tgt]
                    + lb[tgt] - lb[n]) * (cumulative factor at tgt),

tgt = n - k*j, where lf/lb/lc are log factorial, log b_n, log c_n tables
held in double-double (the raw logs reach ~3e4 by n=4000, so plain doubles
leave only ~1e-12 of relative headroom; the dd pairs leave ~1e-27).  All
summands are nonnegative, so there is no cancellation anywhere, and each
row reads only finished rows: one forward pass fills the triangle.  Zero
counts (graph b_1 = b_2 = 0, c_1 = c_2 = 0, ...) enter as a large negative
sentinel rather than -inf, which keeps the branch-free dd arithmetic free
of inf - inf while still flushing exp() to an exact 0.

err_bound is a certified bound, not an estimate: each row inherits the
worst bound among the rows it read plus a per-row term covering exp and
summation noise (cumulative sums are taken in extended precision, so the
per-row term stays O(eps) instead of O(n*eps)).  Row sums come out near 1
without any normalization step, which the tests use to validate both the
recursion and the certificate.
"""

import math

import numpy as np
import gmpy2
from gmpy2 import mpfr

from . import ddouble as dd
from .families import parse_family, total_count, connected_count, FamilyId
from .enumeration import Kind, parse_kind

_LOG_PRECISION = 130        # mpfr bits for the log tables
_MAP_EXACT_LOGC = 256       # below this, take log of the exact integer c_k
_LOG_ZERO = -1.0e9          # finite stand-in for log 0; exp() still gives 0
_ROW_NOISE = 12 * np.finfo(np.float64).eps + 1.2e-14


class ToleranceError(RuntimeError):
    pass


class ScaledDistribution:
    """One normalized table row: probs[k] ~ cell(k,n)/b_n, k = 0..n."""

    def __init__(self, family, kind, n, probs, err_bound):
        self.family = family
        self.kind = kind
        self.n = n
        self.probs = probs
        self.err_bound = err_bound


def _dd_array(values):
    hi = np.empty(len(values))
    lo = np.empty(len(values))
    for i, v in enumerate(values):
        hi[i], lo[i] = dd.dd_from_mpfr(v)
    return hi, lo


def _log_tables(fid, N):
    """(lf, lb, lc) as (hi, lo) numpy pairs; zeros use the _LOG_ZERO sentinel."""
    zero = mpfr(_LOG_ZERO)
    with gmpy2.context(precision=_LOG_PRECISION):
        logs = [zero] + [gmpy2.log(mpfr(i)) for i in range(1, N + 1)]
        lf = [mpfr(0)] * (N + 1)
        for i in range(1, N + 1):
            lf[i] = lf[i - 1] + logs[i]

        if fid is FamilyId.PERMUTE:
            lb = list(lf)
            lc = [zero] + [lf[k - 1] for k in range(1, N + 1)]
        elif fid is FamilyId.DERANGE:
            lb = [mpfr(0)] + [zero if n == 1 else
                              gmpy2.log(mpfr(total_count(fid, n)))
                              for n in range(1, N + 1)]
            lc = [zero, zero] + [lf[k - 1] for k in range(2, N + 1)]
        elif fid is FamilyId.GRAPH:
            lb = [mpfr(0)] + [zero if n in (1, 2) else
                              gmpy2.log(mpfr(total_count(fid, n)))
                              for n in range(1, N + 1)]
            ln2 = gmpy2.log(mpfr(2))
            lc = [zero, zero, zero][:N + 1] + [lf[k - 1] - ln2
                                               for k in range(3, N + 1)]
        else:   # map
            lb = [mpfr(0)] + [n * logs[n] for n in range(1, N + 1)]
            lc = [zero]
            for k in range(1, min(_MAP_EXACT_LOGC, N) + 1):
                lc.append(gmpy2.log(mpfr(connected_count(fid, k))))
            for k in range(_MAP_EXACT_LOGC + 1, N + 1):
                # c_k = k^(k-1) * (1 + sum_{j>=2} s_j), s_{j+1} = s_j (k-j)/k;
                # the series is O(sqrt(k)) long and safe in extended precision
                j = np.arange(1, int(10.5 * math.sqrt(k)) + 2)
                s = np.cumprod(np.longdouble(k - j) / np.longdouble(k))
                lc.append((k - 1) * logs[k] + mpfr(float(np.log1p(s.sum()))))
        return _dd_array(lf), _dd_array(lb), _dd_array(lc)


def _pairs(kind, lc_hi, N):
    """(k, j, kj) with c_k > 0 and kj <= N, sorted by kj; k >= 2 for L."""
    ks, js, kjs = [], [], []
    kmin = 2 if kind is Kind.LARGEST else 1
    for k in range(kmin, N + 1):
        if lc_hi[k] <= _LOG_ZERO / 2:
            continue
        for j in range(1, N // k + 1):
            ks.append(k)
            js.append(j)
            kjs.append(k * j)
    order = np.argsort(np.asarray(kjs, dtype=np.int64), kind="stable")
    K = np.asarray(ks, dtype=np.int64)[order]
    J = np.asarray(js, dtype=np.int64)[order]
    KJ = np.asarray(kjs, dtype=np.int64)[order]
    return K, J, KJ


class FloatTriangle:
    """All normalized rows n <= N of one family/kind, plus cumulative rows."""

    def __init__(self, family, kind, N):
        fid = parse_family(family)
        kind = parse_kind(kind)
        if N < 1:
            raise ValueError("N must be >= 1")
        self.family = fid
        self.kind = kind
        self.N = N
        largest = kind is Kind.LARGEST
        (lf_hi, lf_lo), (lb_hi, lb_lo), (lc_hi, lc_lo) = _log_tables(fid, N)
        self._lb_hi = lb_hi

        K, J, KJ = _pairs(kind, lc_hi, N)
        # n-independent part of the log coefficient: j*(lc[k]-lf[k]) - lf[j]
        eh, el = dd.dd_sub(lc_hi[K], lc_lo[K], lf_hi[K], lf_lo[K])
        ph, pl = dd.dd_mul_d(eh, el, J.astype(np.float64))
        pc_hi, pc_lo = dd.dd_sub(ph, pl, lf_hi[J], lf_lo[J])
        # row-side parts: d1[n] = lf[n]-lb[n]; the gather needs -d1[tgt]
        d1_hi, d1_lo = dd.dd_sub(lf_hi, lf_lo, lb_hi, lb_lo)

        sizes_p = np.arange(N + 1) + 1
        sizes_c = sizes_p + (0 if largest else 1)
        poff = np.concatenate(([0], np.cumsum(sizes_p)[:-1]))
        coff = np.concatenate(([0], np.cumsum(sizes_c)[:-1]))
        self._poff, self._coff = poff, coff
        probs = np.zeros(poff[N] + sizes_p[N])
        cum = np.zeros(coff[N] + sizes_c[N])
        err = np.zeros(N + 1)

        p1_init = largest and fid in (FamilyId.PERMUTE, FamilyId.MAP)
        for n in range(1, N + 1):
            if lb_hi[n] <= _LOG_ZERO / 2:
                continue        # b_n = 0: graph n in {1,2}, derange n=1
            stop = int(np.searchsorted(KJ, n, side="right"))
            k = K[:stop]
            tgt = n - KJ[:stop]
            h, l = dd.dd_add(pc_hi[:stop], pc_lo[:stop],
                             -d1_hi[tgt], -d1_lo[tgt])
            h, l = dd.dd_add_d(h, l, d1_hi[n] + d1_lo[n])
            coef = np.exp(np.maximum(h, -746.0)) * (1.0 + l)
            if largest:
                fac = cum[coff[tgt] + np.minimum(k - 1, tgt)]
            else:
                fac = cum[coff[tgt] + np.minimum(k + 1, tgt + 1)]
            terms = coef * np.where(tgt == 0, 1.0, fac)
            row = np.bincount(k, weights=terms, minlength=n + 1)[:n + 1]
            row[0] = 0.0
            if p1_init:
                lbn = lb_hi[n] + lb_lo[n]
                row[1] = math.exp(-lbn) if lbn < 708.0 else 0.0
            probs[poff[n]:poff[n] + n + 1] = row
            acc = np.cumsum(row if largest else row[::-1], dtype=np.longdouble)
            if largest:
                cum[coff[n]:coff[n] + n + 1] = acc.astype(np.float64)
            else:
                cum[coff[n]:coff[n] + n + 1] = acc[::-1].astype(np.float64)
                cum[coff[n] + n + 1] = 0.0
            inherited = float(err[tgt].max()) if len(tgt) else 0.0
            err[n] = inherited + _ROW_NOISE + n * 1.1e-19
        self._probs, self._cum, self._err = probs, cum, err

    # -- accessors ---------------------------------------------------------

    def _check(self, n):
        if not (1 <= n <= self.N):
            raise IndexError(f"row {n} outside triangle N={self.N}")
        if self._lb_hi[n] <= _LOG_ZERO / 2:
            raise ValueError(f"b_n = 0 for {self.family.value} n={n}")

    def row(self, n, tol=None):
        self._check(n)
        if tol is not None and self._err[n] > tol:
            raise ToleranceError(
                f"err_bound {self._err[n]:.3e} exceeds tol {tol:.3e}")
        probs = self._probs[self._poff[n]:self._poff[n] + n + 1]
        return ScaledDistribution(self.family, self.kind, n, probs,
                                  float(self._err[n]))

    def err_bound(self, n):
        self._check(n)
        return float(self._err[n])

    def cum_fraction(self, n, m):
        """Largest: sum_{k<=m} p_k.  Smallest: sum_{k>=m} p_k."""
        self._check(n)
        if not 1 <= m <= n:
            raise IndexError(f"need 1 <= m <= n (got m={m}, n={n})")
        return float(self._cum[self._coff[n] + m])


_cache = {}


def get_float_triangle(family, kind, N):
    """Memoized triangle; rebuilt (and replaced) only when N grows."""
    key = (parse_family(family), parse_kind(kind))
    tri = _cache.get(key)
    if tri is None or tri.N < N:
        tri = FloatTriangle(key[0], key[1], N)
        _cache[key] = tri
    return tri


def drop_float_triangles():
    """Release the memoized triangles (a 4000-row pair is ~0.3 GB)."""
    _cache.clear()


def largest_row_float(family, n, tol=1e-9):
    """Normalized L row; log-space backend, certified err_bound <= tol."""
    return get_float_triangle(family, Kind.LARGEST, n).row(n, tol=tol)


def smallest_row_float(family, n, tol=1e-9):
    """Normalized S row; log-space backend, certified err_bound <= tol."""
    return get_float_triangle(family, Kind.SMALLEST, n).row(n, tol=tol)
