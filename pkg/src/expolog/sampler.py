"""Monte Carlo sampler over component-size partitions.

Draws the size multiset of a uniform random n-object by repeatedly
sampling the size of the component containing a marked element.  In a
labeled class the marked component has size k with probability

    C(n-1, k-1) * c_k * b_{n-k} / b_n,

after which the remaining n-k elements form an independent uniform
(n-k)-object, so recursing yields the exact partition law.  Only the
partition is sampled, never the labeled object; that is enough for
every largest/smallest statistic in scope.

Each size draw compares a uniformly drawn integer in [0, b_n) against
cumulative big-integer weights, so there is no floating-point bias
anywhere: the sampled law is exactly the uniform one.

Stream format v1: trial t under seed s uses a fresh Philox-4x64
generator keyed by (s, t).  Any subrange of trials can therefore be
reproduced, or farmed out in parallel, without touching the others.
"""

from bisect import bisect_right
from dataclasses import dataclass

import gmpy2
import numpy as np

from .families import FamilyId, connected_count, family_spec, total_count

__all__ = [
    "PartitionSample",
    "SampleSummary",
    "MonteCarloReport",
    "sample_partition",
    "monte_carlo_stats",
    "trial_rng",
    "drop_sampler_cache",
]


@dataclass(frozen=True)
class PartitionSample:
    """Component-size multiset of one sampled n-object."""

    family: FamilyId
    n: int
    sizes: tuple

    def __post_init__(self):
        if sum(self.sizes) != self.n:
            raise ValueError("sizes must sum to n")


@dataclass(frozen=True)
class SampleSummary:
    mean: float
    variance: float
    median: float
    se: float


@dataclass(frozen=True)
class MonteCarloReport:
    family: FamilyId
    n: int
    trials: int
    seed: int
    largest: SampleSummary
    smallest: SampleSummary


# marked-component cumulative weight rows, keyed by (family, remaining n)
_cum_rows = {}


def drop_sampler_cache():
    """Release the cached cumulative weight rows."""
    _cum_rows.clear()


def _cum_row(fid, n):
    key = (fid, n)
    row = _cum_rows.get(key)
    if row is None:
        acc = gmpy2.mpz(0)
        row = []
        for k in range(1, n + 1):
            ck = connected_count(fid, k)
            if ck:
                acc += gmpy2.bincoef(n - 1, k - 1) * ck * total_count(fid, n - k)
            row.append(acc)
        if acc != total_count(fid, n):
            raise AssertionError(f"weight rows broken at {fid.value} n={n}")
        _cum_rows[key] = row
    return row


def _uniform_below(rng, bound):
    """Exactly uniform integer in [0, bound), bound an int or mpz."""
    bound = int(bound)
    if bound <= 1 << 63:
        return int(rng.integers(bound))
    nbits = bound.bit_length()
    nbytes = (nbits + 7) // 8
    shift = 8 * nbytes - nbits
    while True:
        # rejection keeps the draw exactly uniform; expected <2 rounds
        u = int.from_bytes(rng.bytes(nbytes), "big") >> shift
        if u < bound:
            return u


def sample_partition(family, n, rng):
    """Draw one component-size partition of a uniform n-object."""
    spec = family_spec(family)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if total_count(spec.id, n) == 0:
        raise ValueError(f"no {spec.id.value} objects of size {n}")
    sizes = []
    rest = n
    while rest:
        row = _cum_row(spec.id, rest)
        u = _uniform_below(rng, row[-1])
        k = bisect_right(row, u) + 1
        sizes.append(k)
        rest -= k
    sizes.sort(reverse=True)
    return PartitionSample(spec.id, n, tuple(sizes))


def trial_rng(seed, trial):
    """Stream v1 generator for one trial: Philox keyed by (seed, trial)."""
    key = np.array([seed % (1 << 64), trial], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _summary(values):
    mean = float(np.mean(values))
    var = float(np.var(values, ddof=1)) if len(values) > 1 else 0.0
    return SampleSummary(
        mean=mean,
        variance=var,
        median=float(np.median(values)),
        se=(var / len(values)) ** 0.5,
    )


def monte_carlo_stats(family, n, trials, seed):
    """Estimate largest/smallest component statistics from seeded trials."""
    spec = family_spec(family)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    hi = np.empty(trials, dtype=np.int64)
    lo = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        sizes = sample_partition(spec.id, n, trial_rng(seed, t)).sizes
        hi[t] = sizes[0]
        lo[t] = sizes[-1]
    return MonteCarloReport(
        family=spec.id,
        n=n,
        trials=trials,
        seed=seed,
        largest=_summary(hi),
        smallest=_summary(lo),
    )
