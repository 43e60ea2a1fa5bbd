"""Generalized Dickman function rho_a and weighted integrals against it.

rho_a is 1 on [0,1) and solves the delay equation

    rho_a(x) = 1 - a * integral_1^x rho_a(t-1) (t-1)^(a-1) t^-a dt.

On [m, m+1] write x = m + s.  The solution is not analytic at integer
joins (a fractional power s^(a+m-1) enters through the (t-1)^(a-1)
factor at the first join and propagates), so a single polynomial per
interval converges poorly.  The split

    rho_a(m + s) = P_m(s) + s^(e_m) Q_m(s),   e_m = a + m - 1,

with P_m, Q_m analytic, is closed under the recursion: integrating the
P part gives another analytic function, and in the Q part the
substitution u = s*tau turns the integral into s^(e_m + 1) times an
analytic function of s, evaluated by Gauss-Jacobi with weight tau^e_m.
P_m and Q_m are stored as Chebyshev interpolants; accuracy per piece is
certified from coefficient decay plus the inherited bound.

For a = 1 the exponents e_m are integers and the split is redundant but
harmless; the code path is identical for all a.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quad import gauss_jacobi01, gauss_legendre01, cheb_fit, cheb_tail

_DEG = 24           # Chebyshev degree per piece
_NQ = 48            # quadrature order inside piece construction
_FLOOR = 1e-60      # rho below this counts as zero for tails
_PROBES = (0.31, 0.57, 0.93, 1.0)   # off-grid accuracy probe points


class ToleranceNotMet(RuntimeError):
    def __init__(self, msg, achieved):
        super().__init__(msg)
        self.achieved = achieved


@dataclass
class RhoPiece:
    m: int
    P: object           # Chebyshev on s in [0,1]
    Q: object
    e: float            # s-exponent a + m - 1
    accuracy: float

    def value(self, s):
        return self.P(s) + s ** self.e * self.Q(s) if s > 0 else self.P(0.0)


class RhoFunction:
    """Piecewise representation of rho_a, extended on demand."""

    def __init__(self, a):
        self.a = Fraction(a)
        self.af = float(self.a)
        if not 0 < self.af:
            raise ValueError("need a > 0")
        self.pieces = []            # pieces[i] covers [i+1, i+2]
        self._append_base()

    def _append_base(self):
        a = self.af
        # rho_a(1+s) = 1 - a s^a * H(s),  H(s) = int_0^1 tau^(a-1) (1+s tau)^-a dtau

        def make_H(nq):
            t, w = gauss_jacobi01(nq, 0.0, a - 1.0)

            def H(s):
                s = np.asarray(s)[..., None]
                return a * np.dot((1.0 + s * t) ** (-a), w)

            return H

        H = make_H(_NQ)
        P = cheb_fit(lambda s: np.ones_like(s), _DEG)
        Q = cheb_fit(lambda s: -H(s), _DEG)
        # probe off the fit grid against a node-doubled rule: sees both
        # interpolation error and quadrature node/weight noise
        H2 = make_H(_NQ + 40)
        probe = max(abs(float(Q(s)) + float(H2(s))) for s in _PROBES)
        acc = 2.0 * probe + cheb_tail(Q) + 1e-16
        self.pieces.append(RhoPiece(1, P, Q, a, acc))

    def _append_next(self):
        a = self.af
        last = self.pieces[-1]
        m = last.m
        left = last.P(1.0) + last.Q(1.0)        # rho_a(m+1)

        def make_parts(nq):
            tg, wg = gauss_legendre01(nq)
            tj, wj = gauss_jacobi01(nq, 0.0, last.e)

            def I1(s):
                # a * int_0^s P_m(u) (m+u)^(a-1) (m+1+u)^-a du, via u = s*t
                s = np.asarray(s)[..., None]
                u = s * tg
                f = last.P(u) * (m + u) ** (a - 1.0) * (m + 1.0 + u) ** (-a)
                return a * s[..., 0] * np.dot(f, wg)

            def J(s):
                # I2(s) = s^(e+1) * J(s), J analytic; Jacobi weight tau^e
                s = np.asarray(s)[..., None]
                u = s * tj
                f = last.Q(u) * (m + u) ** (a - 1.0) * (m + 1.0 + u) ** (-a)
                return a * np.dot(f, wj)

            return I1, J

        I1, J = make_parts(_NQ)
        P = cheb_fit(lambda s: left - I1(s), _DEG)
        Q = cheb_fit(lambda s: -J(s), _DEG)
        e1 = last.e + 1.0
        I1b, Jb = make_parts(_NQ + 40)
        probe = max(
            abs(float(P(s)) + s ** e1 * float(Q(s))
                - (left - float(I1b(s)) - s ** e1 * float(Jb(s))))
            for s in _PROBES)
        acc = last.accuracy * (1.0 + a / (m + 1.0)) + 2.0 * probe \
            + cheb_tail(P) + cheb_tail(Q) + 1e-16
        self.pieces.append(RhoPiece(m + 1, P, Q, e1, acc))

    def extend_to(self, x):
        while len(self.pieces) < max(1, math.ceil(x) - 1):
            self._append_next()

    def piece(self, m):
        self.extend_to(m + 1)
        return self.pieces[m - 1]

    def value(self, x):
        if x < 0:
            raise ValueError("rho_a domain is x >= 0")
        if x <= 1.0:
            return 1.0
        m = max(1, math.ceil(x) - 1)           # x = m + s with s in (0,1]
        return self.piece(m).value(x - m)

    def accuracy_at(self, x):
        if x <= 1.0:
            return 0.0
        m = max(1, math.ceil(x) - 1)
        return self.piece(m).accuracy


_rho_cache = {}


def rho_function(a):
    key = Fraction(a)
    if key not in _rho_cache:
        _rho_cache[key] = RhoFunction(key)
    return _rho_cache[key]


def dickman_rho(a, x, tol=1e-13):
    """rho_a(x) with certified absolute accuracy <= tol."""
    if tol < 1e-13:
        raise ValueError("tol below the 1e-13 support floor")
    f = rho_function(a)
    v = f.value(float(x))
    acc = f.accuracy_at(float(x))
    if acc > tol:
        raise ToleranceNotMet(
            f"rho_{a}({x}): achieved accuracy {acc:.2e} > tol {tol:.2e}", acc)
    return v


def rho_weighted_integral(a, g, tol=1e-12, nq=60):
    """a * integral_0^inf rho_a(x) x^(a-1) g(x) dx, g analytic per piece.

    Returns (value, abs_err, truncation).  The x^(a-1) factor is singular
    only on the first unit interval, where rho = 1 and a Jacobi rule with
    weight x^(a-1) absorbs it exactly.
    """
    f = rho_function(a)
    af = f.af
    t, w = gauss_jacobi01(nq, 0.0, af - 1.0)
    total = af * float(np.dot(w, np.asarray([g(x) for x in t])))
    err = 1e-16 * abs(total)
    tg, wg = gauss_legendre01(nq)
    m = 1
    while True:
        piece = f.piece(m)
        xg = m + tg
        smooth = xg ** (af - 1.0) * np.asarray([g(x) for x in xg])
        part = float(np.dot(wg, piece.P(tg) * smooth))
        tj, wj = gauss_jacobi01(nq, 0.0, piece.e)
        xj = m + tj
        smoothj = xj ** (af - 1.0) * np.asarray([g(x) for x in xj])
        part += float(np.dot(wj, piece.Q(tj) * smoothj))
        total += af * part
        err += piece.accuracy * abs(g(m)) * af
        size = abs(piece.P(1.0) + piece.Q(1.0)) + abs(piece.P(0.0))
        if m > 3 and (size < _FLOOR or size <= piece.accuracy):
            # remaining pieces are below the certified noise floor
            err += (size + piece.accuracy) * abs(g(m))
            break
        m += 1
    if err > tol:
        raise ToleranceNotMet(
            f"rho-weighted integral: abs_err {err:.2e} > tol {tol:.2e}", err)
    return total, err, float(m + 1)


def rho_plain_integral(a, g, tol=1e-12, nq=60):
    """integral_1^inf rho_a(x) g(x) dx (no x^(a-1) weight), g analytic."""
    f = rho_function(a)
    total = 0.0
    err = 0.0
    tg, wg = gauss_legendre01(nq)
    m = 1
    while True:
        piece = f.piece(m)
        xg = m + tg
        gv = np.asarray([g(x) for x in xg])
        part = float(np.dot(wg, piece.P(tg) * gv))
        tj, wj = gauss_jacobi01(nq, 0.0, piece.e)
        xj = m + tj
        gvj = np.asarray([g(x) for x in xj])
        part += float(np.dot(wj, piece.Q(tj) * gvj))
        total += part
        err += piece.accuracy * abs(g(m))
        size = abs(piece.P(1.0) + piece.Q(1.0)) + abs(piece.P(0.0))
        if m > 3 and (size < _FLOOR or size <= piece.accuracy):
            err += (size + piece.accuracy) * abs(g(m))
            break
        m += 1
    if err > tol:
        raise ToleranceNotMet(
            f"rho integral: abs_err {err:.2e} > tol {tol:.2e}", err)
    return total, err, float(m + 1)
