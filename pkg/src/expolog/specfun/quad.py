"""Quadrature rules on [0,1] and Chebyshev interpolation helpers.

Everything downstream integrates either an analytic function (Gauss
Legendre) or an analytic function times t^beta / (1-t)^alpha with an
exponent in (-1, infinity) (Gauss Jacobi).  Rules are cached per
(order, alpha, beta); nodes are returned on [0,1] with the weight
function absorbed into the weights, so callers only supply the smooth
part.
"""

import functools

import numpy as np
from numpy.polynomial import chebyshev
from scipy.special import roots_legendre, roots_jacobi


@functools.lru_cache(maxsize=None)
def gauss_legendre01(n):
    x, w = roots_legendre(n)
    return (x + 1.0) / 2.0, w / 2.0


@functools.lru_cache(maxsize=None)
def gauss_jacobi01(n, alpha, beta):
    """Nodes/weights for integral_0^1 f(t) (1-t)^alpha t^beta dt."""
    if alpha == 0 and beta == 0:
        return gauss_legendre01(n)
    if alpha == 0 and beta > -1 and float(2 * beta).is_integer():
        # t = v^2 carries the t^beta weight onto Legendre nodes, whose
        # scipy weights are clean; roots_jacobi's carry ~1e-14 noise
        v, wv = gauss_legendre01(n)
        return v * v, 2.0 * wv * v ** (2.0 * beta + 1.0)
    x, w = roots_jacobi(n, alpha, beta)
    return (x + 1.0) / 2.0, w / 2.0 ** (alpha + beta + 1.0)


def legendre_panel(f, lo, hi, n=40):
    """integral_lo^hi f, one Gauss-Legendre panel."""
    t, w = gauss_legendre01(n)
    return (hi - lo) * float(np.dot(w, f(lo + (hi - lo) * t)))


def cheb_fit(f, deg, lo=0.0, hi=1.0):
    """Chebyshev interpolant of f on [lo,hi] at deg+1 first-kind points."""
    return chebyshev.Chebyshev.interpolate(f, deg, domain=[lo, hi])


def cheb_tail(poly, count=3):
    """Sum of the trailing coefficient magnitudes: interpolation error cue."""
    return float(np.sum(np.abs(poly.coef[-count:])))
