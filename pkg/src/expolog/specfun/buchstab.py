"""Generalized Buchstab function Omega_a and the family variants omega_A.

Omega_a is 1 on [1,2) and solves

    Omega_a(x) = 1 + a * integral_2^x Omega_a(t-1)/(t-1) dt,

so it is continuous, nondecreasing, and piecewise analytic with joins at
the integers: no fractional powers appear (the kernel 1/(t-1) stays away
from 0), so plain Chebyshev pieces suffice.  omega_A(x) =
kappa_A * Omega_a(x) / x^a with the family connectivity constant kappa_A.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quad import gauss_legendre01, cheb_fit, cheb_tail
from .dickman import ToleranceNotMet
from ..families import family_spec

_DEG = 24
_NQ = 48


@dataclass
class OmegaPiece:
    m: int                  # covers [m, m+1]
    poly: object
    accuracy: float

    def value(self, s):
        return self.poly(s)


class OmegaFunction:
    """Piecewise representation of Omega_a on [1, inf), extended on demand."""

    def __init__(self, a):
        self.a = Fraction(a)
        self.af = float(self.a)
        if not self.af > 0:
            raise ValueError("need a > 0")
        one = cheb_fit(lambda s: np.ones_like(s), 1)
        self.pieces = [OmegaPiece(1, one, 0.0)]

    def _append_next(self):
        a = self.af
        last = self.pieces[-1]
        m = last.m
        left = last.poly(1.0)                   # Omega_a(m+1)
        tg, wg = gauss_legendre01(_NQ)

        def F(s):
            # Omega(m+1+s) = left + a * int_0^s Omega(m+u)/(m+u) du, u = s*t
            s = np.asarray(s)[..., None]
            u = s * tg
            return left + a * s[..., 0] * np.dot(last.poly(u) / (m + u), wg)

        poly = cheb_fit(F, _DEG)
        acc = last.accuracy * (1.0 + a * math.log1p(1.0 / m)) \
            + cheb_tail(poly) + 1e-16
        self.pieces.append(OmegaPiece(m + 1, poly, acc))

    def piece(self, m):
        while len(self.pieces) < m:
            self._append_next()
        return self.pieces[m - 1]

    def value(self, x):
        if x < 1.0:
            raise ValueError("Omega_a domain is x >= 1")
        if x < 2.0:
            return 1.0
        m = max(1, math.ceil(x) - 1)
        return self.piece(m).value(x - m)

    def accuracy_at(self, x):
        if x < 2.0:
            return 0.0
        return self.piece(max(1, math.ceil(x) - 1)).accuracy


_omega_cache = {}


def omega_function(a):
    key = Fraction(a)
    if key not in _omega_cache:
        _omega_cache[key] = OmegaFunction(key)
    return _omega_cache[key]


def buchstab_Omega(a, x, tol=1e-12):
    """Omega_a(x) with certified absolute accuracy <= tol."""
    f = omega_function(a)
    v = f.value(float(x))
    acc = f.accuracy_at(float(x))
    if acc > tol:
        raise ToleranceNotMet(
            f"Omega_{a}({x}): achieved accuracy {acc:.2e} > tol {tol:.2e}", acc)
    return v


def omega_family(family, x):
    """kappa_A * Omega_a(x) / x^a for the family's a and kappa."""
    spec = family_spec(family)
    x = float(x)
    if not x > 1.0:
        raise ValueError("omega_family needs x > 1")
    a = float(spec.a)
    return spec.kappa * omega_function(spec.a).value(x) / x ** a
