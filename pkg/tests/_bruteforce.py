"""Exhaustive component-size oracles for small n.

Each family is enumerated object by object, nothing shared with the
package recursions: permutations and derangements walk
itertools.permutations, 2-regular graphs are generated as canonical
cycle covers (least vertex first, second-listed neighbor below the
last kills the reflection), and mappings sweep all n^n functions with
the final pending arrow batched through a union-find merge so the
inner loop costs O(n) per n functions.

Each oracle returns (largest, smallest): histograms indexed by
component size, hist[k] = number of objects whose largest (smallest)
component has exactly k elements.  n >= 1 throughout.
"""

import itertools

import numpy as np
from numba import njit


def permutation_hists(n, fixed_point_free=False):
    largest = [0] * (n + 1)
    smallest = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        if fixed_point_free and any(perm[i] == i for i in range(n)):
            continue
        seen = [False] * n
        sizes = []
        for i in range(n):
            if not seen[i]:
                ln, j = 0, i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    ln += 1
                sizes.append(ln)
        largest[max(sizes)] += 1
        smallest[min(sizes)] += 1
    return largest, smallest


def _cycle_covers(avail):
    """Yield component-size lists, one per 2-regular graph on avail."""
    if not avail:
        yield []
        return
    v, rest = avail[0], avail[1:]
    for s in range(3, len(avail) + 1):
        for others in itertools.combinations(rest, s - 1):
            chosen = set(others)
            remaining = tuple(u for u in rest if u not in chosen)
            for order in itertools.permutations(others):
                if order[0] > order[-1]:
                    continue        # reflection of a cycle already seen
                for tail in _cycle_covers(remaining):
                    yield [s] + tail


def graph_hists(n):
    largest = [0] * (n + 1)
    smallest = [0] * (n + 1)
    for sizes in _cycle_covers(tuple(range(n))):
        largest[max(sizes)] += 1
        smallest[min(sizes)] += 1
    return largest, smallest


@njit(cache=True)
def _map_scan(n):
    largest = np.zeros(n + 1, dtype=np.int64)
    smallest = np.zeros(n + 1, dtype=np.int64)
    f = np.zeros(n, dtype=np.int64)        # f[0] is the pending arrow
    parent = np.zeros(n, dtype=np.int64)
    size = np.zeros(n, dtype=np.int64)
    while True:
        for i in range(n):
            parent[i] = i
        for i in range(1, n):
            a = i
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = f[i]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[a] = b
        for i in range(n):
            size[i] = 0
        for i in range(n):
            r = i
            while parent[r] != r:
                r = parent[r]
            parent[i] = r
        for i in range(n):
            size[parent[i]] += 1
        r0 = parent[0]
        for t in range(n):
            rt = parent[t]
            if rt == r0:
                hi = 0
                lo = n + 1
                for i in range(n):
                    if size[i] > 0:
                        if size[i] > hi:
                            hi = size[i]
                        if size[i] < lo:
                            lo = size[i]
            else:
                hi = size[r0] + size[rt]
                lo = hi
                for i in range(n):
                    if size[i] > 0 and i != r0 and i != rt:
                        if size[i] > hi:
                            hi = size[i]
                        if size[i] < lo:
                            lo = size[i]
            largest[hi] += 1
            smallest[lo] += 1
        i = 1
        while i < n and f[i] == n - 1:
            f[i] = 0
            i += 1
        if i >= n:
            break
        f[i] += 1
    return largest, smallest


def map_hists(n):
    largest, smallest = _map_scan(n)
    return [int(v) for v in largest], [int(v) for v in smallest]


ORACLES = {
    "permute": permutation_hists,
    "graph": graph_hists,
    "map": map_hists,
    "derange": lambda n: permutation_hists(n, fixed_point_free=True),
}
