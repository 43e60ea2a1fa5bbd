"""The four structure families and their exact count sequences.

Permutations and derangements decompose into cycles (exp-log type a=1),
2-regular labeled graphs and mappings into connected components (a=1/2).
b_n counts all n-objects, c_n the connected ones.  Everything here is
exact integer arithmetic on gmpy2.mpz; the per-family real constants are
evaluated from closed forms, never parsed from decimal literals.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpz


class FamilyId(enum.Enum):
    PERMUTE = "permute"
    GRAPH = "graph"
    MAP = "map"
    DERANGE = "derange"


def parse_family(name):
    """Accept a FamilyId, or a name like 'permute' / 'Graph' / 'MAP'."""
    if isinstance(name, FamilyId):
        return name
    try:
        return FamilyId(str(name).strip().lower())
    except ValueError:
        raise ValueError(f"unknown family: {name!r}") from None


@dataclass(frozen=True)
class FamilySpec:
    id: FamilyId
    a: Fraction                 # exp-log type
    kappa: float                # lim n^a c_n / b_n
    median_limit: float         # lim (largest-size median)/n
    shortest_scale: float       # multiplier on the smallest-size G moments


_E = math.e

FAMILIES = {
    FamilyId.PERMUTE: FamilySpec(FamilyId.PERMUTE, Fraction(1), 1.0,
                                 1.0 / math.sqrt(_E), 1.0),
    FamilyId.GRAPH: FamilySpec(FamilyId.GRAPH, Fraction(1, 2),
                               math.exp(0.75) * math.sqrt(math.pi) / 2.0,
                               4.0 * _E / (1.0 + _E) ** 2, math.exp(0.75)),
    FamilyId.MAP: FamilySpec(FamilyId.MAP, Fraction(1, 2),
                             math.sqrt(math.pi / 2.0),
                             4.0 * _E / (1.0 + _E) ** 2, math.sqrt(2.0)),
    FamilyId.DERANGE: FamilySpec(FamilyId.DERANGE, Fraction(1), _E,
                                 1.0 / math.sqrt(_E), _E),
}


def family_spec(family):
    return FAMILIES[parse_family(family)]


def connectivity_constant(family):
    """kappa_A = lim n^a c_n/b_n, from the closed forms (>= 15 digits)."""
    return family_spec(family).kappa


# ---------------------------------------------------------------------------
# b_n and c_n.  Memoized in per-family growable vectors; values are mpz and
# safe to share (never mutated after insertion).

_b_memo = {fid: [mpz(1)] for fid in FamilyId}   # b_0 = 1 for all four
_c_memo = {fid: {} for fid in FamilyId}


def total_count(family, n):
    """b_n: number of n-objects.  n >= 0; b_0 = 1 (the empty object)."""
    fid = parse_family(family)
    if n < 0:
        raise ValueError("n must be >= 0")
    if fid is FamilyId.PERMUTE:
        return mpz(gmpy2.fac(n))
    if fid is FamilyId.MAP:
        return mpz(n) ** n if n > 0 else mpz(1)
    memo = _b_memo[fid]
    if n < len(memo):
        return memo[n]
    if fid is FamilyId.GRAPH:
        if len(memo) < 3:
            memo.extend([mpz(0), mpz(0)])
        for i in range(len(memo), n + 1):
            memo.append((i - 1) * memo[i - 1]
                        + ((i - 1) * (i - 2) // 2) * memo[i - 3])
    else:   # derange
        for i in range(len(memo), n + 1):
            memo.append(i * memo[i - 1] + (1 if i % 2 == 0 else -1))
    return memo[n]


def _map_connected(n):
    # c_n = sum_{j=1}^{n} n^{n-j-1} * n!/(n-j)!.  The j=n term is (n-1)!,
    # isolated so that every intermediate stays integral.
    if n == 1:
        return mpz(1)
    total = mpz(0)
    power = mpz(n) ** (n - 2)       # n^{n-j-1} at j=1
    falling = mpz(n)                # n!/(n-j)!  at j=1
    for j in range(1, n):
        total += power * falling
        if j < n - 1:
            power, rem = gmpy2.f_divmod(power, n)
            assert rem == 0
            falling *= n - j
    return total + gmpy2.fac(n - 1)


def connected_count(family, n):
    """c_n: number of connected n-objects.  n >= 1."""
    fid = parse_family(family)
    if n < 1:
        raise ValueError("n must be >= 1")
    if fid is FamilyId.PERMUTE:
        return mpz(gmpy2.fac(n - 1))
    if fid is FamilyId.GRAPH:
        return mpz(gmpy2.fac(n - 1)) // 2 if n >= 3 else mpz(0)
    if fid is FamilyId.DERANGE:
        return mpz(gmpy2.fac(n - 1)) if n >= 2 else mpz(0)
    memo = _c_memo[fid]
    if n not in memo:
        memo[n] = _map_connected(n)
    return memo[n]
