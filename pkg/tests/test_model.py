import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from travelling_kinks.errors import InvalidParameter, PoleError, Unsupported
from travelling_kinks.inverse import inverse_params
from travelling_kinks.model import (
    PHI4, SINE_GORDON, Kind, NormalFormParams, Nonlinearity, by_name, eval_F,
    eval_F_prime, inverse_model, potential, sigma_from,
)

INV = inverse_params(0.8, 0.5).model
MODELS = [PHI4, SINE_GORDON, INV]


def test_equilibria():
    assert eval_F(PHI4, 1.0) == 0.0
    assert abs(eval_F(SINE_GORDON, math.pi)) < 1e-15
    assert eval_F(INV, 1.0) == 0.0
    assert eval_F(INV, -1.0) == 0.0


def test_inverse_model_parameters():
    assert INV.alpha == pytest.approx(0.6380377, abs=1e-7)
    assert INV.beta == pytest.approx(0.2135523, abs=1e-7)


def test_derivative_values():
    assert eval_F_prime(PHI4, 1.0) == -2.0
    assert eval_F_prime(SINE_GORDON, math.pi) == -1.0
    assert eval_F_prime(PHI4, 0.0) == 1.0
    for m in MODELS:
        assert eval_F_prime(m, 0.0) == pytest.approx(1.0, abs=1e-15)
        assert eval_F_prime(m, m.u_plus) < 0.0


def test_potential_values():
    assert potential(PHI4, 0.0) == 0.0
    assert potential(PHI4, 1.0) == 0.25
    assert potential(SINE_GORDON, math.pi) == 1.0
    assert potential(SINE_GORDON, 0.0) == -1.0
    with pytest.raises(Unsupported):
        potential(INV, 0.3)


def test_sigma_from():
    assert sigma_from(-1.0, 3.0) == pytest.approx(2.0, rel=1e-15)
    assert sigma_from(0.0, 1.0) == 0.0
    assert sigma_from(-1.0, 1.0 / 12.0) == pytest.approx(12.0, rel=1e-15)
    for tau in (0.0, -1.0):
        with pytest.raises(InvalidParameter):
            sigma_from(-1.0, tau)
    p = NormalFormParams(-1.0, 3.0)
    assert p.sigma == pytest.approx(2.0)
    assert p.time_scale == pytest.approx(36.0 ** 0.25)


@given(st.floats(-50, -1e-3))
def test_gamma2_maps_to_sigma_two(gamma):
    assert sigma_from(gamma, 3 * gamma * gamma) == pytest.approx(2.0, rel=1e-14)


def test_pole_and_validation():
    m = inverse_model(0.1, 0.25)
    with pytest.raises(PoleError):
        eval_F(m, 2.0)
    with pytest.raises(PoleError):
        eval_F_prime(m, np.array([0.0, -2.0]))
    for beta in (0.0, 1.0, 1.5):
        with pytest.raises(InvalidParameter):
            inverse_model(0.0, beta)


def test_by_name():
    assert by_name("phi4") == PHI4
    assert by_name("sine-gordon").kind is Kind.SINE_GORDON
    assert by_name("inverse", 0.1, 0.2) == Nonlinearity(Kind.INVERSE, 0.1, 0.2)
    assert SINE_GORDON.u_minus == -math.pi


@pytest.mark.parametrize("model", MODELS, ids=["phi4", "sg", "inverse"])
def test_odd(model):
    rng = np.random.default_rng(1)
    u = rng.uniform(-model.u_plus, model.u_plus, 1000)
    assert np.array_equal(eval_F(model, -u), -eval_F(model, u))


@pytest.mark.parametrize("model", MODELS, ids=["phi4", "sg", "inverse"])
def test_derivative_matches_central_difference(model):
    u = np.linspace(-model.u_plus, model.u_plus, 41)

    def gap(d):
        fd = (eval_F(model, u + d) - eval_F(model, u - d)) / (2 * d)
        return np.max(np.abs(eval_F_prime(model, u) - fd))

    assert gap(1e-5) < 1e-8
    # truncation dominates at these d, so halving d quarters the gap
    assert 3.5 < gap(1e-2) / gap(5e-3) < 4.5


@pytest.mark.parametrize("model", [PHI4, SINE_GORDON], ids=["phi4", "sg"])
def test_potential_is_antiderivative(model):
    u = np.linspace(-model.u_plus, model.u_plus, 41)
    d = 1e-3
    gap = potential(model, u + d) - potential(model, u - d) - 2 * d * eval_F(model, u)
    # third-order remainder d^3 |F''| / 3
    assert np.max(np.abs(gap)) < 1e-8
