"""Exponential integral E(x) = integral_x^inf e^-t / t dt, x > 0.

Three regimes.  The power series around 0 has no cancellation issue up
to x = 1 (the -gamma - ln x part dominates the alternating tail).  On
(1, 40] the standard continued fraction E(x) = e^-x / (x+1 - 1/(x+3 -
4/(x+5 - ...))) is evaluated with the modified Lentz scheme.  Beyond 40
the divergent asymptotic series e^-x/x * sum (-1)^k k!/x^k is summed to
its smallest term; at x > 40 that term is below 1e-16 relative, so the
switch keeps relative error ~1e-15 everywhere.  (A fixed-length
asymptotic tail would not: six terms leave ~2e-7 at x = 40.)
"""

import math

import numpy as np

_GAMMA = float(np.euler_gamma)
_TINY = 1e-300


def exp_integral_E(x):
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"exp_integral_E needs x > 0, got {x}")
    if x <= 1.0:
        total = -_GAMMA - math.log(x)
        term = 1.0
        for k in range(1, 30):
            term *= -x / k
            total -= term / k
            if abs(term) < 1e-18 * k:
                break
        return total
    if x <= 40.0:
        b = x + 1.0
        c = 1.0 / _TINY
        d = 1.0 / b
        h = d
        for i in range(1, 200):
            a = -float(i) * float(i)
            b += 2.0
            d = 1.0 / (a * d + b)
            c = b + a / c
            delta = c * d
            h *= delta
            if abs(delta - 1.0) < 1e-16:
                break
        return h * math.exp(-x)
    total = 1.0
    term = 1.0
    for k in range(1, 400):
        nxt = term * (-k / x)
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-17:
            break
        term = nxt
        total += term
    return math.exp(-x) / x * total if x < 745.0 else 0.0


def expint_remainder(x):
    """W(x) = E(x) + gamma + ln x = sum_{k>=1} (-1)^{k+1} x^k/(k k!); entire.

    Accepts scalars or numpy arrays; accurate for |x| <= ~2 (alternating
    terms decay like 1/k!), which covers its use on unit intervals.
    """
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        term = term * (-x) / k
        total -= term / k
        if np.max(np.abs(term)) < 1e-19 * k:
            break
    return total if total.ndim else float(total)
