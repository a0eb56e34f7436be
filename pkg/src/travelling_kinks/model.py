"""On-site nonlinearities F(u) and the normal-form parameter map.

Three model kinds are supported:

* ``PHI4``        F(u) = u (1 - u^2),                          u+ = 1
* ``SINE_GORDON`` F(u) = sin(u),                               u+ = pi
* ``INVERSE``     F(u) = u (1 - u^2) (1 + a u^2) / (1 - b u^2),  u+ = 1

All evaluators accept scalars or numpy arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, PoleError, Unsupported


class Kind(enum.IntEnum):
    # integer codes are what the compiled kernels dispatch on
    PHI4 = 0
    SINE_GORDON = 1
    INVERSE = 2


@dataclass(frozen=True)
class Nonlinearity:
    kind: Kind
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind == Kind.INVERSE and not 0.0 < self.beta < 1.0:
            raise InvalidParameter(f"inverse model needs 0 < beta < 1, got {self.beta}")

    @property
    def u_plus(self) -> float:
        return math.pi if self.kind == Kind.SINE_GORDON else 1.0

    @property
    def u_minus(self) -> float:
        return -self.u_plus

    @property
    def has_potential(self) -> bool:
        return self.kind != Kind.INVERSE

    def __str__(self):
        if self.kind == Kind.INVERSE:
            return f"inverse(alpha={self.alpha:.6g}, beta={self.beta:.6g})"
        return self.kind.name.lower()


PHI4 = Nonlinearity(Kind.PHI4)
SINE_GORDON = Nonlinearity(Kind.SINE_GORDON)


def inverse_model(alpha: float, beta: float) -> Nonlinearity:
    return Nonlinearity(Kind.INVERSE, alpha, beta)


def by_name(name: str, alpha: float = 0.0, beta: float = 0.0) -> Nonlinearity:
    """Look up a model from a command-line style name."""
    key = name.lower().replace("-", "").replace("_", "")
    if key == "phi4":
        return PHI4
    if key in ("sinegordon", "sg"):
        return SINE_GORDON
    if key == "inverse":
        return inverse_model(alpha, beta)
    raise InvalidParameter(f"unknown model {name!r}")


def _check_pole(model: Nonlinearity, u):
    den = 1.0 - model.beta * np.square(u)
    if np.any(den == 0.0):
        raise PoleError("inverse nonlinearity evaluated at beta*u^2 = 1")
    return den


def eval_F(model: Nonlinearity, u):
    """Return F(u)."""
    if model.kind == Kind.PHI4:
        return u * (1.0 - u * u)
    if model.kind == Kind.SINE_GORDON:
        return np.sin(u)
    den = _check_pole(model, u)
    u2 = u * u
    return u * (1.0 - u2) * (1.0 + model.alpha * u2) / den


def eval_F_prime(model: Nonlinearity, u):
    """Return dF/du, analytically."""
    if model.kind == Kind.PHI4:
        return 1.0 - 3.0 * u * u
    if model.kind == Kind.SINE_GORDON:
        return np.cos(u)
    den = _check_pole(model, u)
    a, b = model.alpha, model.beta
    u2 = u * u
    # numerator N = u (1 - u^2)(1 + a u^2) = u + (a - 1) u^3 - a u^5
    num = u + (a - 1.0) * u2 * u - a * u2 * u2 * u
    dnum = 1.0 + 3.0 * (a - 1.0) * u2 - 5.0 * a * u2 * u2
    return (dnum * den + 2.0 * b * u * num) / (den * den)


def potential(model: Nonlinearity, u):
    """Antiderivative V of F with V(0) = 0 (phi4) or V(0) = -1 (sine-Gordon)."""
    if model.kind == Kind.PHI4:
        u2 = u * u
        return 0.5 * u2 - 0.25 * u2 * u2
    if model.kind == Kind.SINE_GORDON:
        return -np.cos(u)
    raise Unsupported("no closed-form potential for the inverse-method model")


def sigma_from(gamma: float, tau: float) -> float:
    """Map normal-form coefficients (gamma, tau) to the normalized sigma."""
    if not tau > 0.0:
        raise InvalidParameter(f"tau must be positive, got {tau}")
    return -math.sqrt(12.0) * gamma / math.sqrt(tau)


@dataclass(frozen=True)
class NormalFormParams:
    """Coefficients of (1/12) phi'''' - gamma phi'' + tau F(phi) = 0.

    Rescaling the independent variable by (12 tau)^(1/4) gives
    phi'''' + sigma phi'' + F(phi) = 0.
    """

    gamma: float
    tau: float

    @property
    def sigma(self) -> float:
        return sigma_from(self.gamma, self.tau)

    @property
    def time_scale(self) -> float:
        """Factor t / zeta_1 between normalized and slow variables."""
        return (12.0 * self.tau) ** 0.25
