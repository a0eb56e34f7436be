"""Linear spectrum of the travelling-wave problem near the zero state.

The advance-delay equation linearized about u = 0 has eigenvalues
Lambda solving

    D(Lambda; c, h) = 2 (cosh Lambda - 1) + h^2 - c^2 Lambda^2 = 0.

On the imaginary axis, Lambda = 2iK, this reduces to

    g(K) = sin^2 K - h^2/4 - c^2 K^2 = 0.

Near (c, h) = (1, 0) the spectrum is governed by the bi-quadratic
(1/12) L^4 - gamma L^2 + tau = 0 of the scalar normal form.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidParameter

BOUNDARY_TOL = 1e-12


def eval_D(Lambda: complex, c: float, h: float) -> complex:
    return 2.0 * (cmath.cosh(Lambda) - 1.0) + h * h - c * c * Lambda * Lambda


def _g(K, c, h):
    s = np.sin(K)
    return s * s - 0.25 * h * h - c * c * K * K


def _dg(K, c):
    return np.sin(2.0 * K) - 2.0 * c * c * K


def imaginary_roots(c: float, h: float, k_max: float, step: float | None = None) -> list[float]:
    """Non-negative roots K <= k_max of sin^2 K = h^2/4 + c^2 K^2.

    Simple roots are located by sign changes on a uniform grid and polished
    with Brent's method. Tangential (double) roots, which do not change
    sign, are picked up at sign changes of g' where g itself vanishes.
    K = 0 is included only when it is a root, i.e. when h = 0.
    """
    if not k_max > 0.0:
        raise InvalidParameter("k_max must be positive")
    c, h = abs(c), abs(h)
    if step is None:
        step = min(0.01, math.pi / 64)
    n = max(int(math.ceil(k_max / step)), 1)
    grid = np.linspace(0.0, k_max, n + 1)
    g = _g(grid, c, h)
    dg = _dg(grid, c)

    def g_scalar(k):
        return float(_g(k, c, h))

    def dg_scalar(k):
        return float(_dg(k, c))

    roots = []
    if h == 0.0:
        roots.append(0.0)
    for i in range(n):
        a, b = grid[i], grid[i + 1]
        ga, gb = g[i], g[i + 1]
        if a == 0.0 and ga == 0.0:
            # start of the grid at the K = 0 root: look at the interior only
            continue
        if gb == 0.0:
            roots.append(float(b))
        elif ga * gb < 0.0:
            roots.append(brentq(g_scalar, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        elif dg[i] * dg[i + 1] < 0.0:
            k = brentq(dg_scalar, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
            if abs(g_scalar(k)) < BOUNDARY_TOL:
                roots.append(k)
    roots = sorted(set(roots))
    # a tangential root sitting on a grid node can be found twice
    out = []
    for k in roots:
        if not out or k - out[-1] > 1e-9:
            out.append(k)
    return out


@dataclass(frozen=True)
class BifurcationPoint:
    """A point (c, h) on the 1:1 resonance curve h = h*(c), parametrized by
    the double root K = P of the imaginary-axis equation."""

    P: float
    c: float
    h: float

    @property
    def asymptotic_ratio(self) -> float:
        """h / (sqrt(3)(1 - c^2)); tends to 1 as P -> 0."""
        return self.h / (math.sqrt(3.0) * (1.0 - self.c * self.c))


def bifurcation_point(P: float) -> BifurcationPoint:
    if not 0.0 < P < 0.5 * math.pi:
        raise InvalidParameter(f"P must lie in (0, pi/2), got {P}")
    s, co = math.sin(P), math.cos(P)
    c2 = s * co / P
    h2 = 4.0 * s * (s - P * co)
    return BifurcationPoint(P, math.sqrt(c2), math.sqrt(h2))


class QuarticLabel(enum.Enum):
    FourReal = "FourReal"
    TwoRealTwoImaginary = "TwoRealTwoImaginary"
    FourImaginary = "FourImaginary"
    ComplexQuartet = "ComplexQuartet"
    DoubleZeroPlusPair = "DoubleZeroPlusPair"
    DoubleImaginaryPair = "DoubleImaginaryPair"
    QuadrupleZero = "QuadrupleZero"


@dataclass(frozen=True)
class QuarticClass:
    label: QuarticLabel
    roots: tuple[complex, complex, complex, complex]


def quartic_roots(gamma: float, tau: float) -> tuple[complex, ...]:
    """Roots of (1/12) L^4 - gamma L^2 + tau = 0 from the two values of L^2."""
    disc = cmath.sqrt(gamma * gamma - tau / 3.0)
    out = []
    for sq in (6.0 * (gamma + disc), 6.0 * (gamma - disc)):
        r = cmath.sqrt(sq)
        out.extend((r, -r))
    return tuple(out)


def classify_quartic(gamma: float, tau: float) -> QuarticClass:
    """Label the eigenvalue configuration of the normal form at (gamma, tau).

    For gamma > 0 on tau = 3 gamma^2 the roots form a double real pair; that
    configuration has no label of its own and is reported as FourReal.
    """
    roots = quartic_roots(gamma, tau)
    tol = BOUNDARY_TOL
    if abs(gamma) <= tol and abs(tau) <= tol:
        label = QuarticLabel.QuadrupleZero
    elif abs(tau) <= tol:
        label = QuarticLabel.DoubleZeroPlusPair
    elif gamma < 0.0 and abs(tau - 3.0 * gamma * gamma) <= tol:
        label = QuarticLabel.DoubleImaginaryPair
    else:
        disc = gamma * gamma - tau / 3.0
        if disc < 0.0:
            label = QuarticLabel.ComplexQuartet
        elif tau < 0.0:
            label = QuarticLabel.TwoRealTwoImaginary
        elif gamma > 0.0:
            label = QuarticLabel.FourReal
        else:
            label = QuarticLabel.FourImaginary
    if label in (QuarticLabel.DoubleImaginaryPair, QuarticLabel.QuadrupleZero):
        # collapse the numerically split double roots onto their exact values
        sq = 6.0 * gamma if label is QuarticLabel.DoubleImaginaryPair else 0.0
        r = cmath.sqrt(sq)
        roots = (r, -r, r, -r)
    return QuarticClass(label, roots)


def zero_state_growth(kappa: float, h: float) -> float:
    """Squared growth rate lambda^2 of the mode exp(i kappa h n) about u = 0."""
    if not h > 0.0:
        raise InvalidParameter("h must be positive")
    s = math.sin(0.5 * kappa * h)
    return 1.0 - 4.0 / (h * h) * s * s


def critical_wavenumber(h: float) -> float:
    """kappa*(h), the edge of the unstable band of the zero state.

    Returns inf for h > 2, where every mode grows.
    """
    if not h > 0.0:
        raise InvalidParameter("h must be positive")
    if h > 2.0:
        return math.inf
    return 2.0 / h * math.asin(0.5 * h)
