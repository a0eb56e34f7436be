"""Exact tanh kinks for the inverse-method nonlinearity

    f(u) = u (1 - u^2) (1 + alpha u^2) / (1 - beta u^2).

For given speed s and width mu, choosing beta = tanh^2 mu,
h^2 = 2 (tanh^2 mu - s^2 mu^2) and alpha = s^2 mu^2 beta / (beta - s^2 mu^2)
makes u_n(t) = tanh(mu (n - s t / h)) an exact travelling solution of the
lattice. Near (c, h) = (1, 0) the width scales as mu ~ sqrt(eps) mu_s with
(4/3) mu_s^4 + 2 gamma_s mu_s^2 + tau = 0, and tanh(mu_s z) solves the
corresponding normal form exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NoRealLattice
from .model import Nonlinearity, eval_F, inverse_model


@dataclass(frozen=True)
class InverseParams:
    s: float
    mu: float
    alpha: float
    beta: float
    h2: float

    @property
    def h(self) -> float:
        return math.sqrt(self.h2)

    @property
    def model(self) -> Nonlinearity:
        return inverse_model(self.alpha, self.beta)


def inverse_params(s: float, mu: float) -> InverseParams:
    if not (s > 0.0 and mu > 0.0):
        raise InvalidParameter(f"need s > 0 and mu > 0, got s={s}, mu={mu}")
    beta = math.tanh(mu) ** 2
    sm2 = (s * mu) ** 2
    h2 = 2.0 * (beta - sm2)
    if not h2 > 0.0:
        raise NoRealLattice(f"s={s} >= tanh(mu)/mu={math.tanh(mu) / mu:.6g}: h^2 = {h2:.6g} <= 0")
    alpha = sm2 * beta / (beta - sm2)
    return InverseParams(s, mu, alpha, beta, h2)


def mu_s_roots(gamma_s: float, tau: float) -> list[float]:
    """Positive roots of (4/3) m^4 + 2 gamma_s m^2 + tau = 0, descending.

    A double root (tau = 3 gamma_s^2 / 4, gamma_s < 0) is returned once.
    """
    disc = gamma_s * gamma_s - 4.0 * tau / 3.0
    if disc < 0.0:
        return []
    r = math.sqrt(disc)
    squares = {0.75 * (-gamma_s + r), 0.75 * (-gamma_s - r)}
    return sorted((math.sqrt(x) for x in squares if x > 0.0), reverse=True)


def _tanh_derivs(m, z):
    """phi, phi'' and phi'''' of phi = tanh(m z), in closed form."""
    p = np.tanh(m * z)
    q = p * (1.0 - p * p)
    d2 = -2.0 * m**2 * q
    d4 = 8.0 * m**4 * q * (2.0 - 3.0 * p * p)
    return p, d2, d4


def normalform_residual(gamma_s: float, tau: float, mu_s: float, z_grid) -> float:
    """max |(1/12) phi'''' - gamma_s phi'' + tau phi(1-phi^2) + 2 mu_s^4 phi^3 (1-phi^2)|
    over ``z_grid`` for phi = tanh(mu_s z)."""
    z = np.asarray(z_grid, dtype=float)
    p, d2, d4 = _tanh_derivs(mu_s, z)
    q = p * (1.0 - p * p)
    res = d4 / 12.0 - gamma_s * d2 + tau * q + 2.0 * mu_s**4 * p * p * q
    return float(np.max(np.abs(res))) if res.size else 0.0


def advance_delay_residual(s: float, mu: float, zeta_grid, h2_scale: float = 1.0) -> float:
    """max |c^2 phi'' - (phi(z+1) - 2 phi(z) + phi(z-1)) - h^2 f(phi)| with
    phi = tanh(mu z), c = s.

    ``h2_scale`` multiplies h^2 and exists to show that the identity is
    sharp (any mismatch leaves an O(1) residual).
    """
    p = inverse_params(s, mu)
    z = np.asarray(zeta_grid, dtype=float)
    phi = np.tanh(mu * z)
    d2 = -2.0 * mu * mu * phi * (1.0 - phi * phi)
    lap = np.tanh(mu * (z + 1.0)) - 2.0 * phi + np.tanh(mu * (z - 1.0))
    res = s * s * d2 - lap - h2_scale * p.h2 * eval_F(p.model, phi)
    return float(np.max(np.abs(res))) if res.size else 0.0
