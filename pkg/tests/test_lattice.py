import math

import numpy as np
import pytest

from travelling_kinks import lattice as lt
from travelling_kinks.dispersion import zero_state_growth
from travelling_kinks.errors import BlowUp, InvalidParameter, Unsupported
from travelling_kinks.inverse import inverse_params
from travelling_kinks.model import PHI4, SINE_GORDON

P = inverse_params(0.8, 0.5)
N = 64


def state(u, v=None, h=0.5, model=PHI4, clamps=(-1.0, 1.0)):
    u = np.asarray(u, float)
    return lt.LatticeState(u, np.zeros_like(u) if v is None else v, h, model, clamps)


def test_state_validation():
    with pytest.raises(InvalidParameter):
        state(np.zeros(7))
    with pytest.raises(InvalidParameter):
        lt.LatticeState(np.zeros(10), np.zeros(9), 0.5, PHI4, (0, 0))
    with pytest.raises(InvalidParameter):
        state(np.zeros(10), h=0.0)
    assert state(np.zeros(12)).n_sites == 12


def test_equilibria_have_zero_acceleration():
    assert np.array_equal(lt.lattice_accel(state(np.ones(N), clamps=(1, 1))), np.zeros(N))
    assert np.array_equal(lt.lattice_accel(state(np.zeros(N), clamps=(0, 0))), np.zeros(N))
    s = state(np.full(N, math.pi), model=SINE_GORDON, clamps=(math.pi, math.pi))
    assert np.max(np.abs(lt.lattice_accel(s))) < 1e-15


def test_exact_kink_acceleration():
    h, mu, s = P.h, P.mu, P.s
    n = np.arange(200, dtype=float)
    u, _ = lt.exact_kink(s, mu, h, n, 0.0, 99.5)
    a = lt.lattice_accel(state(u, h=h, model=P.model))
    p = np.tanh(mu * (n - 99.5))
    expected = (s / h) ** 2 * (-2 * mu**2 * p * (1 - p * p))
    assert np.max(np.abs(a - expected)) < 1e-10


def test_verlet_keeps_equilibrium():
    s0 = state(np.ones(N), clamps=(1, 1))
    s1 = lt.verlet_step(s0, 0.01)
    assert np.array_equal(s1.u, s0.u) and np.array_equal(s1.v, s0.v)
    assert s1.t == pytest.approx(0.01)
    for dt in (0.0, 0.5, 1.0):
        with pytest.raises(InvalidParameter):
            lt.verlet_step(s0, dt)


def test_plus_state_is_neutrally_stable():
    u = np.ones(N)
    u[30] += 1e-3
    peak = [0.0]

    def watch(k, u, v):
        peak[0] = max(peak[0], np.max(np.abs(u - 1.0)))

    lt.evolve(u, np.zeros(N), 0.5, PHI4, (1.0, 1.0), 0.01, 2000, watch)
    assert peak[0] <= 1.001e-3


@pytest.mark.parametrize("mode", [1, 3, 8])
def test_zero_state_growth_rate(mode):
    h = 0.5
    n = np.arange(N)
    theta = math.pi * mode / (N + 1)  # Dirichlet mode on the clamped chain
    u0 = 1e-8 * np.sin(theta * (n + 1))
    u1, _ = lt.evolve(u0, np.zeros(N), h, PHI4, (0.0, 0.0), 0.005, 1000)
    # starting from rest the mode grows like cosh(lambda t)
    amp = np.dot(u1, u0) / np.dot(u0, u0)
    rate = math.acosh(amp) / 5.0
    expected = math.sqrt(zero_state_growth(theta / h, h))
    assert rate == pytest.approx(expected, rel=0.05)
    assert rate == pytest.approx(expected, rel=1e-4)


@pytest.mark.parametrize("model,amp", [(PHI4, 1.0), (SINE_GORDON, math.pi)], ids=["phi4", "sg"])
def test_energy_drift_is_second_order(model, amp):
    h = 0.5
    n = np.arange(N)
    u0 = amp * np.tanh(0.4 * (n - 30.3))
    v0 = 0.1 * np.exp(-0.05 * (n - 30) ** 2)
    clamps = (-amp, amp)
    E0 = lt.lattice_energy(lt.LatticeState(u0, v0, h, model, clamps))
    drift = []
    for dt in (0.02, 0.01, 0.005):
        worst = [0.0]

        def watch(k, u, v):
            if k % 10 == 0:
                E = lt.lattice_energy(lt.LatticeState(u, v, h, model, clamps))
                worst[0] = max(worst[0], abs(E - E0))

        lt.evolve(u0, v0, h, model, clamps, dt, int(round(10 / dt)), watch)
        drift.append(worst[0])
    assert drift[0] < 1e-4
    assert 3.5 < drift[0] / drift[1] < 4.5
    assert 3.5 < drift[1] / drift[2] < 4.5


def test_energy_requires_potential():
    with pytest.raises(Unsupported):
        lt.lattice_energy(state(np.zeros(N), model=P.model))


def test_reflection_symmetry():
    h = 0.5
    n = np.arange(N)
    u0 = np.tanh(0.4 * (n - 25.7)) + 0.05 * np.sin(n)
    v0 = 0.2 * np.exp(-0.1 * (n - 20) ** 2)
    clamps = (-1.0, 1.0)
    u1, v1 = lt.evolve(u0, v0, h, PHI4, clamps, 0.01, 500)
    u2, v2 = lt.evolve(-u0[::-1], -v0[::-1], h, PHI4, (-clamps[1], -clamps[0]), 0.01, 500)
    assert np.max(np.abs(u2 + u1[::-1])) < 1e-12
    assert np.max(np.abs(v2 + v1[::-1])) < 1e-12


def test_blowup_guard():
    u = np.zeros(N)
    u[10] = 20.0
    with np.errstate(over="ignore", invalid="ignore"), pytest.raises(BlowUp):
        lt.evolve(u, np.zeros(N), 0.5, PHI4, (0.0, 0.0), 0.01, 100)


def test_exact_kink_propagates():
    h = P.h
    err = lt.simulate_exact_kink(0.8, 0.5, 10 * h / 0.8, h / 50)
    assert err < 1e-4
    assert err == pytest.approx(3.8295e-5, rel=1e-3)
    half = lt.simulate_exact_kink(0.8, 0.5, 10 * h / 0.8, h / 100)
    assert 3.5 <= err / half <= 4.5
    assert lt.simulate_exact_kink(0.8, 0.5, 0.0, h / 50) == 0.0


def test_exact_kink_guards():
    h = P.h
    with pytest.raises(InvalidParameter):
        lt.simulate_exact_kink(0.8, 0.5, 500 * h / 0.8, h / 50, n_sites=400)
    with pytest.raises(InvalidParameter):
        lt.simulate_exact_kink(0.8, 0.5, 1.0, h)
    with pytest.raises(InvalidParameter):
        lt.simulate_exact_kink(0.8, 0.5, -1.0, h / 50)


def test_exact_kink_error_is_shift_invariant():
    h, dt, steps = P.h, P.h / 50, 500
    n = np.arange(300, dtype=float)
    errs = []
    for center in (120.0, 127.0):
        u0, v0 = lt.exact_kink(0.8, 0.5, h, n, 0.0, center)
        u1, _ = lt.evolve(u0, v0, h, P.model, (-1.0, 1.0), dt, steps)
        ref, _ = lt.exact_kink(0.8, 0.5, h, n, steps * dt, center)
        errs.append(np.max(np.abs(u1 - ref)))
    assert errs[0] == pytest.approx(errs[1], rel=1e-6)
