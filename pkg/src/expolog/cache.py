"""On-disk cache for exact count sequences and triangles.

File format, one file per (family, kind):

    EXPOLOG-CACHE v1 <family> <kind>
    <n> <value>            for kind b or c
    <k> <n> <value>        for kind L or S (zero cells omitted)

Indices are strictly increasing ((n) or (n, k) lexicographic).  Loads
never trust the file: sequences are revalidated against the defining
recursions and triangles against row sums, so a corrupt cache raises
instead of propagating bad counts.  The cache is an optimization only;
its absence never changes any result.

The directory comes from $EXPOLOG_CACHE, default ./.expolog-cache.
Writes go through a temp file and os.replace, so readers never see a
partial file.
"""

import os
import tempfile
from pathlib import Path

import gmpy2
from gmpy2 import mpz

from .enumeration import CountTable, Kind, build_table, parse_kind
from .families import FamilyId, connected_count, parse_family, total_count

__all__ = [
    "cache_dir",
    "cache_path",
    "CacheError",
    "store_sequence",
    "load_sequence",
    "store_triangle",
    "load_triangle",
    "cached_table",
]

_MAGIC = "EXPOLOG-CACHE v1"


class CacheError(ValueError):
    """A cache file is malformed or fails revalidation."""


def cache_dir():
    return Path(os.environ.get("EXPOLOG_CACHE", ".expolog-cache"))


def cache_path(family, kind_char):
    fid = parse_family(family)
    if kind_char not in ("b", "c", "L", "S"):
        raise ValueError(f"unknown cache kind {kind_char!r}")
    return cache_dir() / f"{fid.value}.{kind_char}"


def _atomic_write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _read_lines(path, fid, kind_char):
    try:
        raw = path.read_text()
    except FileNotFoundError:
        return None
    lines = raw.splitlines()
    if not lines or lines[0] != f"{_MAGIC} {fid.value} {kind_char}":
        raise CacheError(f"{path}: bad header")
    return lines[1:]


def store_sequence(family, kind_char, limit):
    """Write b_n or c_n for 0 <= n <= limit."""
    fid = parse_family(family)
    if kind_char not in ("b", "c"):
        raise ValueError("sequence kind must be b or c")
    fn = total_count if kind_char == "b" else connected_count
    start = 0 if kind_char == "b" else 1      # c_n is defined for n >= 1
    body = [f"{_MAGIC} {fid.value} {kind_char}"]
    body += [f"{n} {fn(fid, n)}" for n in range(start, limit + 1)]
    path = cache_path(fid, kind_char)
    _atomic_write(path, "\n".join(body) + "\n")
    return path


def load_sequence(family, kind_char):
    """Validated list of cached b_n or c_n values, or None if absent."""
    fid = parse_family(family)
    path = cache_path(fid, kind_char)
    lines = _read_lines(path, fid, kind_char)
    if lines is None:
        return None
    fn = total_count if kind_char == "b" else connected_count
    start = 0 if kind_char == "b" else 1
    values = []
    for line in lines:
        try:
            n_s, v_s = line.split()
            n, v = int(n_s), mpz(v_s)
        except ValueError:
            raise CacheError(f"{path}: bad line {line!r}") from None
        if n != start + len(values):
            raise CacheError(f"{path}: indices not consecutive at n={n}")
        if v != fn(fid, n):
            raise CacheError(f"{path}: value mismatch at n={n}")
        values.append(v)
    return values


def store_triangle(table):
    """Write every nonzero cell of a CountTable."""
    kind_char = "L" if table.kind is Kind.LARGEST else "S"
    out = [f"{_MAGIC} {table.family.value} {kind_char}"]
    for n in range(1, table.N + 1):
        for k in range(1, n + 1):
            v = table.cell(k, n)
            if v:
                out.append(f"{k} {n} {v}")
    path = cache_path(table.family, kind_char)
    _atomic_write(path, "\n".join(out) + "\n")
    return path


def load_triangle(family, kind):
    """Rebuild a validated CountTable from cache, or None if absent."""
    fid = parse_family(family)
    kind = parse_kind(kind)
    kind_char = "L" if kind is Kind.LARGEST else "S"
    path = cache_path(fid, kind_char)
    lines = _read_lines(path, fid, kind_char)
    if lines is None:
        return None
    cells = []
    last = (0, 0)
    for line in lines:
        try:
            k_s, n_s, v_s = line.split()
            k, n, v = int(k_s), int(n_s), mpz(v_s)
        except ValueError:
            raise CacheError(f"{path}: bad line {line!r}") from None
        if (n, k) <= last or not 1 <= k <= n:
            raise CacheError(f"{path}: index order broken at ({k},{n})")
        last = (n, k)
        cells.append((k, n, v))
    if not cells:
        raise CacheError(f"{path}: empty triangle")
    N = cells[-1][1]
    rows = [[mpz(0)] * (n + 1) for n in range(N + 1)]
    for k, n, v in cells:
        rows[n][k] = v
    totals = [total_count(fid, n) for n in range(N + 1)]
    if kind is Kind.LARGEST:
        cum = [[mpz(1)]]
        for n in range(1, N + 1):
            pref = [mpz(0)] * (n + 1)
            run = mpz(0)
            for k in range(1, n + 1):
                run += rows[n][k]
                pref[k] = run
            if run != totals[n]:
                raise CacheError(f"{path}: row sum != b_n at n={n}")
            cum.append(pref)
    else:
        cum = [[mpz(1), mpz(0)]]
        for n in range(1, N + 1):
            suff = [mpz(0)] * (n + 2)
            run = mpz(0)
            for k in range(n, 0, -1):
                run += rows[n][k]
                suff[k] = run
            suff[0] = run
            if run != totals[n]:
                raise CacheError(f"{path}: row sum != b_n at n={n}")
            cum.append(suff)
    return CountTable(fid, kind, N, cum, totals)


def cached_table(family, kind, N, write=False):
    """Table from cache when it covers N, else freshly built.

    With write=True a freshly built table is stored for next time.
    """
    fid = parse_family(family)
    got = load_triangle(fid, kind)
    if got is not None and got.N >= N:
        return got
    table = build_table(fid, kind, N)
    if write:
        store_triangle(table)
    return table
