"""Minimal double-double arithmetic (~31 significant digits).

A value is an unevaluated pair (hi, lo) with |lo| <= ulp(hi)/2.  Everything
is branch-free and works elementwise on numpy arrays as well as on floats;
products use the Dekker split because math.fma is unavailable on 3.10 and
numpy has no fma either.  Only the handful of operations the log-space row
backend needs are provided.
"""

_SPLITTER = 134217729.0            # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def dd_add(xh, xl, yh, yl):
    s, e = two_sum(xh, yh)
    e = e + (xl + yl)
    return quick_two_sum(s, e)


def dd_add_d(xh, xl, y):
    s, e = two_sum(xh, y)
    return quick_two_sum(s, e + xl)


def dd_sub(xh, xl, yh, yl):
    return dd_add(xh, xl, -yh, -yl)


def dd_mul_d(xh, xl, y):
    p, e = two_prod(xh, y)
    return quick_two_sum(p, e + xl * y)


def dd_from_mpfr(v):
    """Round an mpfr (or anything float()-able twice) to a (hi, lo) pair."""
    hi = float(v)
    lo = float(v - hi)
    return hi, lo
