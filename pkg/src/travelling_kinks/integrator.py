"""Fixed-step RK4 for phi'''' + sigma phi'' + F(phi) = 0.

The ODE is written as a first-order system in x = (phi, phi', phi'', phi''').
:func:`rk4_step` is the readable reference step. The compiled kernels below
(`_shoot`, `_trajectory`) perform exactly the same arithmetic in a loop and
are what the shooting code calls; ``tests/test_integrator.py`` pins the two
against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BlowUp, InvalidParameter, Unsupported
from .model import Nonlinearity, eval_F, eval_F_prime, potential

# blow-up guard: |phi| > PHI_FACTOR * u+ or any component > COMPONENT_BOUND
PHI_FACTOR = 10.0
COMPONENT_BOUND = 1e6


def as_state(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (4,):
        raise InvalidParameter(f"state must have four components, got shape {x.shape}")
    return x


def rhs(state, sigma: float, model: Nonlinearity) -> np.ndarray:
    phi, d1, d2, d3 = as_state(state)
    return np.array([d1, d2, d3, -sigma * d2 - eval_F(model, phi)])


def rk4_step(state, dt: float, sigma: float, model: Nonlinearity) -> np.ndarray:
    """One classical Runge-Kutta step of size dt (negative dt integrates backward)."""
    x = as_state(state)
    k1 = rhs(x, sigma, model)
    k2 = rhs(x + 0.5 * dt * k1, sigma, model)
    k3 = rhs(x + 0.5 * dt * k2, sigma, model)
    k4 = rhs(x + dt * k3, sigma, model)
    out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise BlowUp("non-finite state after RK4 step")
    return out


@dataclass(frozen=True)
class EquilibriumRates:
    """Spectrum (+-lambda0, +-i omega0) of the linearization at u+ (or u-)."""

    lambda0: float
    omega0: float


def equilibrium_rates(sigma: float, fprime_at_plus: float) -> EquilibriumRates:
    """Roots of lambda^4 + sigma lambda^2 + F'(u+) = 0 for F'(u+) < 0."""
    fp = fprime_at_plus
    if not fp < 0.0:
        raise InvalidParameter(f"F'(u+) must be negative, got {fp}")
    r = math.sqrt(sigma * sigma - 4.0 * fp)
    # pick the cancellation-free form of each root of x^2 + sigma x + F' = 0
    if sigma >= 0.0:
        lam2 = -2.0 * fp / (r + sigma)
        om2 = 0.5 * (sigma + r)
    else:
        lam2 = 0.5 * (r - sigma)
        om2 = -2.0 * fp / (r - sigma)
    return EquilibriumRates(math.sqrt(lam2), math.sqrt(om2))


def model_rates(sigma: float, model: Nonlinearity) -> EquilibriumRates:
    return equilibrium_rates(sigma, float(eval_F_prime(model, model.u_plus)))


def unstable_ic(c0: float, lambda0: float, u_minus: float) -> np.ndarray:
    """Point on the linearized unstable manifold of u-, at distance ~c0."""
    if not c0 > 0.0:
        raise InvalidParameter(f"c0 must be positive, got {c0}")
    return np.array([u_minus + c0, c0 * lambda0, c0 * lambda0**2, c0 * lambda0**3])


def energy(state, sigma: float, model: Nonlinearity):
    """First integral phi' phi''' - phi''^2/2 + sigma phi'^2/2 + V(phi).

    ``state`` may also have shape (4, ...), e.g. a transposed trajectory;
    the result then has the trailing shape.
    """
    if not model.has_potential:
        raise Unsupported("energy needs a closed-form potential")
    x = np.asarray(state, dtype=float)
    if x.ndim == 0 or x.shape[0] != 4:
        raise InvalidParameter(f"state must have four components, got shape {x.shape}")
    phi, d1, d2, d3 = x
    E = d1 * d3 - 0.5 * d2 * d2 + 0.5 * sigma * d1 * d1 + potential(model, phi)
    return float(E) if x.ndim == 1 else E


# --- compiled kernels -------------------------------------------------------

@njit(cache=True, nogil=True)
def _F(kind, a, b, u):
    if kind == 0:
        return u * (1.0 - u * u)
    if kind == 1:
        return math.sin(u)
    u2 = u * u
    return u * (1.0 - u2) * (1.0 + a * u2) / (1.0 - b * u2)


@njit(cache=True, nogil=True)
def _step(x0, x1, x2, x3, dt, sigma, kind, a, b):
    h = 0.5 * dt
    k10, k11, k12 = x1, x2, x3
    k13 = -sigma * x2 - _F(kind, a, b, x0)
    y0, y1, y2, y3 = x0 + h * k10, x1 + h * k11, x2 + h * k12, x3 + h * k13
    k20, k21, k22 = y1, y2, y3
    k23 = -sigma * y2 - _F(kind, a, b, y0)
    y0, y1, y2, y3 = x0 + h * k20, x1 + h * k21, x2 + h * k22, x3 + h * k23
    k30, k31, k32 = y1, y2, y3
    k33 = -sigma * y2 - _F(kind, a, b, y0)
    y0, y1, y2, y3 = x0 + dt * k30, x1 + dt * k31, x2 + dt * k32, x3 + dt * k33
    k40, k41, k42 = y1, y2, y3
    k43 = -sigma * y2 - _F(kind, a, b, y0)
    w = dt / 6.0
    return (
        x0 + w * (k10 + 2.0 * k20 + 2.0 * k30 + k40),
        x1 + w * (k11 + 2.0 * k21 + 2.0 * k31 + k41),
        x2 + w * (k12 + 2.0 * k22 + 2.0 * k32 + k42),
        x3 + w * (k13 + 2.0 * k23 + 2.0 * k33 + k43),
    )


@njit(cache=True, nogil=True)
def _out_of_bounds(x0, x1, x2, x3, phi_bound):
    # written as a negation so that nan trips the guard
    return not (
        abs(x0) <= phi_bound
        and abs(x1) <= COMPONENT_BOUND
        and abs(x2) <= COMPONENT_BOUND
        and abs(x3) <= COMPONENT_BOUND
    )


# status codes returned by _shoot
CROSSED, NO_CROSSING, BLEW_UP, AT_NODE = 0, 1, 2, 3


@njit(cache=True, nogil=True)
def _shoot(x, sigma, kind, a, b, dt, level, n_max, phi_bound):
    """Advance until phi - level changes sign between consecutive steps.

    Returns (status, k, left, right): ``left`` is the state at step k and
    ``right`` the state at step k + 1. For AT_NODE the crossing is exactly
    at step k.
    """
    left = np.empty(4)
    right = np.empty(4)
    x0, x1, x2, x3 = x[0], x[1], x[2], x[3]
    d_prev = x0 - level
    left[0], left[1], left[2], left[3] = x0, x1, x2, x3
    right[:] = left
    if d_prev == 0.0:
        return AT_NODE, 0, left, right
    for k in range(n_max):
        y0, y1, y2, y3 = _step(x0, x1, x2, x3, dt, sigma, kind, a, b)
        if _out_of_bounds(y0, y1, y2, y3, phi_bound):
            left[0], left[1], left[2], left[3] = x0, x1, x2, x3
            right[0], right[1], right[2], right[3] = y0, y1, y2, y3
            return BLEW_UP, k, left, right
        d = y0 - level
        if d == 0.0:
            left[0], left[1], left[2], left[3] = y0, y1, y2, y3
            right[:] = left
            return AT_NODE, k + 1, left, right
        if (d > 0.0) != (d_prev > 0.0):
            left[0], left[1], left[2], left[3] = x0, x1, x2, x3
            right[0], right[1], right[2], right[3] = y0, y1, y2, y3
            return CROSSED, k, left, right
        x0, x1, x2, x3 = y0, y1, y2, y3
        d_prev = d
    left[0], left[1], left[2], left[3] = x0, x1, x2, x3
    right[:] = left
    return NO_CROSSING, n_max, left, right


@njit(cache=True, nogil=True)
def _trajectory(x, n_steps, dt, sigma, kind, a, b):
    out = np.empty((n_steps + 1, 4))
    out[0, :] = x
    x0, x1, x2, x3 = x[0], x[1], x[2], x[3]
    for k in range(n_steps):
        x0, x1, x2, x3 = _step(x0, x1, x2, x3, dt, sigma, kind, a, b)
        out[k + 1, 0] = x0
        out[k + 1, 1] = x1
        out[k + 1, 2] = x2
        out[k + 1, 3] = x3
    return out


def _kernel_args(model: Nonlinearity):
    return int(model.kind), float(model.alpha), float(model.beta)


def step_fast(state, dt: float, sigma: float, model: Nonlinearity) -> np.ndarray:
    """Compiled equivalent of :func:`rk4_step` (no blow-up check)."""
    x = as_state(state)
    return np.array(_step(x[0], x[1], x[2], x[3], float(dt), float(sigma), *_kernel_args(model)))


def trajectory(state, n_steps: int, dt: float, sigma: float, model: Nonlinearity) -> np.ndarray:
    """States at t = 0, dt, ..., n_steps*dt as an (n_steps + 1, 4) array."""
    x = as_state(state).copy()
    traj = _trajectory(x, int(n_steps), float(dt), float(sigma), *_kernel_args(model))
    bound = PHI_FACTOR * model.u_plus
    bad = ~np.isfinite(traj).all(axis=1) | (np.abs(traj[:, 0]) > bound) | (np.abs(traj) > COMPONENT_BOUND).any(axis=1)
    if bad.any():
        raise BlowUp(f"trajectory left the admissible region at step {int(np.argmax(bad))}")
    return traj
