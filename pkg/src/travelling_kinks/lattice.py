"""Velocity-Verlet simulation of the discrete Klein-Gordon lattice

    u_n'' = (u_{n+1} - 2 u_n + u_{n-1}) / h^2 + f(u_n)

on a finite chain whose two ghost neighbours are clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BlowUp, InvalidParameter, Unsupported
from .inverse import inverse_params
from .model import Nonlinearity, eval_F, potential

BLOWUP_FACTOR = 10.0
EDGE_MARGIN = 10


@dataclass(frozen=True)
class LatticeState:
    u: np.ndarray
    v: np.ndarray
    h: float
    model: Nonlinearity
    clamps: tuple[float, float]
    t: float = 0.0

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if u.ndim != 1 or u.shape != v.shape:
            raise InvalidParameter("u and v must be 1-d arrays of equal length")
        if len(u) < 8:
            raise InvalidParameter("lattice needs at least 8 sites")
        if not self.h > 0.0:
            raise InvalidParameter("h must be positive")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "clamps", (float(self.clamps[0]), float(self.clamps[1])))

    @property
    def n_sites(self) -> int:
        return len(self.u)


def _accel(u, h, model, left, right):
    lap = np.empty_like(u)
    lap[1:-1] = u[2:] - 2.0 * u[1:-1] + u[:-2]
    lap[0] = u[1] - 2.0 * u[0] + left
    lap[-1] = right - 2.0 * u[-1] + u[-2]
    return lap / (h * h) + eval_F(model, u)


def lattice_accel(state: LatticeState) -> np.ndarray:
    return _accel(state.u, state.h, state.model, *state.clamps)


def _check(u, v, model):
    bound = BLOWUP_FACTOR * model.u_plus
    if not (np.all(np.abs(u) <= bound) and np.all(np.abs(v) <= 1e6)):
        raise BlowUp("lattice state left the admissible region")


def verlet_step(state: LatticeState, dt: float) -> LatticeState:
    if not 0.0 < dt < state.h:
        raise InvalidParameter(f"need 0 < dt < h = {state.h}, got {dt}")
    u, v = evolve(state.u, state.v, state.h, state.model, state.clamps, dt, 1)
    return replace(state, u=u, v=v, t=state.t + dt)


def evolve(u, v, h, model, clamps, dt, n_steps, callback=None):
    """Advance (u, v) by n_steps Verlet steps; returns new arrays.

    ``callback(k, u, v)`` is invoked after every step with the live arrays.
    """
    u = np.array(u, dtype=float)
    v = np.array(v, dtype=float)
    left, right = clamps
    a = _accel(u, h, model, left, right)
    half = 0.5 * dt
    for k in range(1, n_steps + 1):
        v += half * a
        u += dt * v
        a = _accel(u, h, model, left, right)
        v += half * a
        _check(u, v, model)
        if callback is not None:
            callback(k, u, v)
    return u, v


def lattice_energy(state: LatticeState) -> float:
    """H = sum v^2/2 + (u_{n+1} - u_n)^2 / (2h^2) - V(u_n), ghost bonds included."""
    if not state.model.has_potential:
        raise Unsupported("lattice energy needs a closed-form potential")
    left, right = state.clamps
    ext = np.concatenate(([left], state.u, [right]))
    grad = np.diff(ext)
    return float(0.5 * np.sum(state.v**2) + np.sum(grad**2) / (2.0 * state.h**2)
                 - np.sum(potential(state.model, state.u)))


def exact_kink(s: float, mu: float, h: float, n: np.ndarray, t: float, center: float):
    """u_n(t) and its time derivative for the exact inverse-method kink."""
    arg = mu * (n - center - s * t / h)
    u = np.tanh(arg)
    v = -(mu * s / h) * (1.0 - u * u)
    return u, v


def simulate_exact_kink(s: float, mu: float, t_final: float, dt: float, n_sites: int = 400,
                        check_every: int = 1) -> float:
    """Max over checkpoints of max_n |u_n(t) - tanh(mu (n - n_c - s t / h))|.

    The kink starts so that it ends as far from the right edge as it began
    from the left. Raises InvalidParameter if the front would come within
    10 sites of either edge.
    """
    p = inverse_params(s, mu)
    h = p.h
    if t_final < 0.0:
        raise InvalidParameter("t_final must be non-negative")
    if not 0.0 < dt < h:
        raise InvalidParameter(f"need 0 < dt < h = {h}, got {dt}")
    travel = s * t_final / h
    center = 0.5 * (n_sites - 1 - travel)
    if center < EDGE_MARGIN or center + travel > n_sites - 1 - EDGE_MARGIN:
        raise InvalidParameter("kink would reach the lattice boundary")
    n = np.arange(n_sites, dtype=float)
    u0, v0 = exact_kink(s, mu, h, n, 0.0, center)
    if t_final == 0.0:
        return 0.0
    n_steps = max(int(round(t_final / dt)), 1)
    step = t_final / n_steps
    worst = 0.0

    def watch(k, u, v):
        nonlocal worst
        if k % check_every == 0 or k == n_steps:
            ref, _ = exact_kink(s, mu, h, n, k * step, center)
            worst = max(worst, float(np.max(np.abs(u - ref))))

    evolve(u0, v0, h, p.model, (-1.0, 1.0), step, n_steps, watch)
    return worst
