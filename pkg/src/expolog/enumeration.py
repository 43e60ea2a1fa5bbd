"""Exact triangular tables of L_{k,n} and S_{k,n}.

L_{k,n} counts n-objects whose largest component has exactly k nodes,
S_{k,n} the same for the smallest.  Both satisfy a recursion over the
number j of size-k components,

    sum_j  n! c_k^j / (j! (k!)^j (n-kj)!)  *  (partial row sum at n-kj),

where the partial sum runs over i <= min(k-1, n-kj) for L (strictly
smaller pieces) and over i >= k+1 for S (strictly larger), plus, for S,
the all-components-equal term when k divides n.  Rows are stored as
cumulative sums (prefix for L, suffix for S): that is what the recursion
consumes, it halves memory, and cells come back as differences.

Every division in the coefficient update is asserted exact; the weight is
a multinomial count, so a remainder would mean the implementation is wrong.
"""

import enum

import gmpy2
from gmpy2 import mpz

from .families import parse_family, total_count, connected_count, FamilyId

_EXACT_BACKEND_LIMIT = 1500     # default exact/float crossover for callers


class Kind(enum.Enum):
    LARGEST = "largest"
    SMALLEST = "smallest"


def parse_kind(kind):
    if isinstance(kind, Kind):
        return kind
    try:
        return Kind(str(kind).strip().lower())
    except ValueError:
        raise ValueError(f"unknown table kind: {kind!r}") from None


class CountTable:
    """Triangle of exact counts, 0 <= k <= n <= N, one kind per instance.

    _cum[n] holds prefix sums (L: _cum[n][i] = sum_{t<=i} L_{t,n}) or
    suffix sums (S: _cum[n][i] = sum_{t>=i} S_{t,n}, with a trailing 0
    at index n+1).  cell(0,0) = 1 is the empty object for either kind.
    """

    def __init__(self, family, kind, N, cum, totals):
        self.family = family
        self.kind = kind
        self.N = N
        self._cum = cum
        self._totals = totals          # b_n for 0 <= n <= N

    def total(self, n):
        return self._totals[n]

    def cell(self, k, n):
        if not (0 <= k <= n <= self.N):
            raise IndexError(f"cell ({k},{n}) outside triangle N={self.N}")
        row = self._cum[n]
        if self.kind is Kind.LARGEST:
            return row[k] - row[k - 1] if k > 0 else row[0]
        return row[k] - row[k + 1] if k > 0 else row[0] - row[1]

    def row(self, n):
        return [self.cell(k, n) for k in range(n + 1)]

    def row_prefix(self, n, k):
        """sum_{j<=k} cell(j,n), either kind."""
        if not (0 <= k <= n <= self.N):
            raise IndexError(f"prefix ({k},{n}) outside triangle N={self.N}")
        row = self._cum[n]
        if self.kind is Kind.LARGEST:
            return row[k]
        return row[0] - row[k + 1] if k < n else row[0]

    def suffix(self, n, k):
        """sum_{j>=k} cell(j,n)."""
        if not (0 <= k <= n <= self.N):
            raise IndexError(f"suffix ({k},{n}) outside triangle N={self.N}")
        row = self._cum[n]
        if self.kind is Kind.SMALLEST:
            return row[k]
        return row[n] - (row[k - 1] if k > 0 else 0)


def _connected_list(family, N):
    return [None] + [connected_count(family, k) for k in range(1, N + 1)]


def largest_table(family, N):
    """Full exact L triangle for 1 <= n <= N (plus the n=0 corner)."""
    fid = parse_family(family)
    if N < 1:
        raise ValueError("N must be >= 1")
    b = [total_count(fid, n) for n in range(N + 1)]
    c = _connected_list(fid, N)
    l1 = mpz(1) if fid in (FamilyId.PERMUTE, FamilyId.MAP) else mpz(0)
    cum = [[mpz(1)]]                     # row 0: just the empty object
    for n in range(1, N + 1):
        row = [mpz(0)] * (n + 1)
        row[1] = l1
        for k in range(2, n + 1):
            ck = c[k]
            if not ck:
                continue
            if 2 * k > n:
                # single size-k component possible, rest unconstrained
                row[k] = ck * gmpy2.bincoef(n, k) * b[n - k]
                continue
            acc = mpz(0)
            coef = ck * gmpy2.bincoef(n, k)
            j = 1
            while True:
                tgt = n - k * j
                if tgt == 0:
                    acc += coef
                    break
                q = cum[tgt][min(k - 1, tgt)]
                if q:
                    acc += coef * q
                j += 1
                if k * j > n:
                    break
                coef, rem = divmod(coef * ck * gmpy2.bincoef(tgt, k), j)
                assert rem == 0, "inexact multinomial division"
            row[k] = acc
        pref = [mpz(0)] * (n + 1)
        run = mpz(0)
        for k in range(1, n + 1):
            run += row[k]
            pref[k] = run
        assert run == b[n], f"row sum != b_n at n={n}"
        cum.append(pref)
    return CountTable(fid, Kind.LARGEST, N, cum, b)


def smallest_table(family, N):
    """Full exact S triangle for 1 <= n <= N (plus the n=0 corner)."""
    fid = parse_family(family)
    if N < 1:
        raise ValueError("N must be >= 1")
    b = [total_count(fid, n) for n in range(N + 1)]
    c = _connected_list(fid, N)
    cum = [[mpz(1), mpz(0)]]
    for n in range(1, N + 1):
        row = [mpz(0)] * (n + 1)
        for k in range(1, n + 1):
            ck = c[k]
            if not ck:
                continue
            if 2 * k > n:
                # no room for a strictly larger component and no second
                # copy of size k: only k = n survives (the connected case)
                if k == n:
                    row[k] = ck
                continue
            acc = mpz(0)
            coef = ck * gmpy2.bincoef(n, k)
            j = 1
            while True:
                tgt = n - k * j
                if tgt == 0:
                    acc += coef        # all components of size exactly k
                    break
                r = cum[tgt][min(k + 1, tgt + 1)]
                if r:
                    acc += coef * r
                j += 1
                if k * j > n:
                    break
                coef, rem = divmod(coef * ck * gmpy2.bincoef(tgt, k), j)
                assert rem == 0, "inexact multinomial division"
            row[k] = acc
        suff = [mpz(0)] * (n + 2)
        run = mpz(0)
        for k in range(n, 0, -1):
            run += row[k]
            suff[k] = run
        suff[0] = run
        assert run == b[n], f"row sum != b_n at n={n}"
        cum.append(suff)
    return CountTable(fid, Kind.SMALLEST, N, cum, b)


def build_table(family, kind, N):
    kind = parse_kind(kind)
    if kind is Kind.LARGEST:
        return largest_table(family, N)
    return smallest_table(family, N)


_table_cache = {}


def get_count_table(family, kind, N):
    """Memoized exact table; rebuilt (and replaced) only when N grows."""
    key = (parse_family(family), parse_kind(kind))
    tab = _table_cache.get(key)
    if tab is None or tab.N < N:
        tab = build_table(key[0], key[1], N)
        _table_cache[key] = tab
    return tab


def drop_cached_tables():
    """Release the memoized exact tables (they can be hundreds of MB)."""
    _table_cache.clear()


def smooth_count(table, n, m):
    """b_{n,m} = sum_{j<=m} L_{j,n}: objects with all components of size <= m."""
    if table.kind is not Kind.LARGEST:
        raise ValueError("smooth_count needs a largest-kind table")
    if not (1 <= m <= n <= table.N):
        raise IndexError(f"need 1 <= m <= n <= N (got m={m}, n={n}, N={table.N})")
    return table.row_prefix(n, m)


def rough_count(table, n, m):
    """b_{n,m} = sum_{j>=m} S_{j,n}: objects with all components of size >= m."""
    if table.kind is not Kind.SMALLEST:
        raise ValueError("rough_count needs a smallest-kind table")
    if not (1 <= m <= n <= table.N):
        raise IndexError(f"need 1 <= m <= n <= N (got m={m}, n={n}, N={table.N})")
    return table.suffix(n, m)
