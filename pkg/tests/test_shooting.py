import math

import numpy as np
import pytest

from oracles import _F_phi4, _F_sg, adaptive_crossing, quartic_rates
from travelling_kinks import integrator as itg
from travelling_kinks import shooting as sh
from travelling_kinks.errors import InvalidParameter, NoCrossing
from travelling_kinks.model import PHI4, SINE_GORDON

PI = math.pi
C0_GRID = np.logspace(-6, -4, 9)

# measured at sigma = 5, phi4, nine log-spaced c0 in [1e-6, 1e-4]
C0_REL_ERROR = {0.01: 1.18546e-7, 0.005: 1.18551e-7, 0.0025: 1.18550e-7}


def cross(sigma, model=PHI4, **kw):
    return sh.integrate_to_crossing(sh.ShootingConfig(sigma, **kw), model)


@pytest.mark.parametrize("model,F,fp,um", [(PHI4, _F_phi4, -2.0, -1.0), (SINE_GORDON, _F_sg, -1.0, -PI)],
                         ids=["phi4", "sg"])
def test_split_matches_adaptive_oracle(model, F, fp, um):
    lam, _ = quartic_rates(5.0, fp)
    t0_ref, K_ref = adaptive_crossing(5.0, 1e-5, lam, um, 0.0, F)
    res = cross(5.0, model)
    assert res.K == pytest.approx(K_ref, rel=5e-7)
    assert res.t0 == pytest.approx(t0_ref, rel=1e-9)


def test_frozen_phi4_value():
    res = cross(5.0)
    assert res.K == pytest.approx(0.0033260803509, rel=1e-10)
    assert res.t0 == pytest.approx(19.778740471, rel=1e-9)
    assert res.steps == res.k + 1 and res.k * 0.005 <= res.t0 <= res.steps * 0.005


@pytest.mark.parametrize("model,level,sigma", [(PHI4, 0.0, 5.0), (SINE_GORDON, 0.0, 4.0), (SINE_GORDON, PI, 3.3)])
def test_crossing_lands_on_level(model, level, sigma):
    cfg = sh.ShootingConfig(sigma, level=level)
    res = sh.integrate_to_crossing(cfg, model)
    x = sh.crossing_state(cfg, model, res)
    assert abs(x[0] - level) < 1e-10
    assert abs(x[2] - res.K) < 1e-9 * max(1.0, abs(res.K))


def test_crossing_at_start():
    lam = itg.model_rates(5.0, PHI4).lambda0
    res = cross(5.0, level=-1 + 1e-5)
    assert res.t0 == 0.0 and res.steps == 0
    assert res.K == pytest.approx(1e-5 * lam**2, rel=1e-15)


def test_no_crossing():
    # departure time ln(1/c0)/lambda0 ~ 45 exceeds the budget
    with pytest.raises(NoCrossing):
        cross(5.0, c0=1e-12, t_max=40.0)


def test_config_validation():
    for kw in (dict(c0=0.0), dict(c0=0.02), dict(dt=0.0), dict(dt=0.06), dict(t_max=0.0)):
        with pytest.raises(InvalidParameter):
            sh.ShootingConfig(5.0, **kw)
    with pytest.raises(InvalidParameter):
        sh.ShootingConfig(math.nan)
    assert sh.ShootingConfig(5.0, level="2pi").level == 2 * PI
    assert sh.resolve_level("zero") == 0.0 and sh.resolve_level("0.5") == 0.5
    with pytest.raises(InvalidParameter):
        sh.resolve_level("tau")


def test_single_kink_split_is_nonzero():
    assert sh.split_K(5.0, model=PHI4) > 1e-3
    assert abs(sh.split_K(5.0, model=SINE_GORDON)) > 1e-3


def test_double_kink_split_changes_sign():
    K = [r.K for r in sh.scan(np.arange(2.0, 12.01, 0.05), level=PI, model=SINE_GORDON)]
    signs = np.sign(K)
    assert np.count_nonzero(signs[1:] != signs[:-1]) >= 3


def test_scan_shape_and_order():
    rows = sh.scan([3.0, 4.0, 5.0, 6.0], model=PHI4)
    assert [r.sigma for r in rows] == [3.0, 4.0, 5.0, 6.0]
    K = np.abs([r.K for r in rows])
    assert np.all(np.diff(K) < 0)
    assert sh.scan([], model=PHI4) == []
    with pytest.raises(InvalidParameter):
        sh.scan([4.0, 3.0], model=PHI4)


def test_scan_failures_are_nan():
    rows = sh.scan([5.0, 6.0], c0=1e-12, t_max=40.0, model=PHI4)
    assert all(math.isnan(r.K) and math.isnan(r.t0) for r in rows)


def test_scan_is_deterministic_across_threads():
    grid = sh.sigma_grid(2.0, 6.0, 0.1)
    a = sh.scan(grid, level=PI, model=SINE_GORDON, threads=1)
    b = sh.scan(grid, level=PI, model=SINE_GORDON, threads=4)
    c = sh.scan(grid, level=PI, model=SINE_GORDON, threads=4)
    assert a == b == c


def test_sigma_grid():
    g = sh.sigma_grid(2.5, 8.0, 0.1)
    assert len(g) == 56 and g[0] == 2.5 and g[-1] == pytest.approx(8.0)
    assert len(sh.sigma_grid(1.0, 1.0, 0.1)) == 1
    with pytest.raises(InvalidParameter):
        sh.sigma_grid(1.0, 0.0, 0.1)


def test_no_single_kinks():
    assert sh.find_sigma_zeros((2.5, 8.0), 0.1, level=0.0, model=PHI4) == []


def test_double_kink_zeros():
    zs = sh.find_sigma_zeros((2.0, 6.0), 0.05, level=PI, model=SINE_GORDON)
    expected = [2.842128750, 3.707003395, 4.376808948, 4.941970079, 5.439014815, 5.887343079]
    assert [z.sigma_star for z in zs] == pytest.approx(expected, abs=1e-8)
    for z in zs:
        assert abs(z.K_residual) < 1e-10
        assert z.bracket_lo <= z.sigma_star <= z.bracket_hi
        assert z.bracket_hi - z.bracket_lo < 1e-8
        assert abs(sh.split_K(z.sigma_star, level=PI, model=SINE_GORDON)) < 1e-10


def test_double_kink_is_odd_about_crossing():
    z = sh.find_sigma_zeros((3.5, 3.8), 0.05, level=PI, model=SINE_GORDON)[0]
    assert sh.odd_symmetry_defect(z.sigma_star, model=SINE_GORDON) < 1e-6
    # away from a zero the orbit is visibly not odd
    assert sh.odd_symmetry_defect(z.sigma_star + 0.1, model=SINE_GORDON) > 1e-4


def test_triple_kinks_survive_halving_dt():
    zs = sh.find_sigma_zeros((2.0, 5.0), 0.05, level="2pi", model=SINE_GORDON)
    assert len(zs) > 0
    for z in zs:
        assert abs(sh.split_K(z.sigma_star, dt=0.0025, level=2 * PI, model=SINE_GORDON)) < 1e-8


def test_c0_sensitivity_trivial():
    r = sh.c0_sensitivity(5.0, 0.005, [1e-5, 1e-5, 1e-5], model=PHI4)
    assert r.std == 0.0 and r.rel_error == 0.0 and r.amplitude == 0.0
    with pytest.raises(InvalidParameter):
        sh.c0_sensitivity(5.0, 0.005, [1e-5], model=PHI4)


@pytest.mark.parametrize("dt", sorted(C0_REL_ERROR))
def test_c0_sensitivity_fixture(dt):
    r = sh.c0_sensitivity(5.0, dt, C0_GRID, model=PHI4)
    assert r.rel_error < 1e-2
    assert r.rel_error == pytest.approx(C0_REL_ERROR[dt], rel=1e-3)
    assert len(r.values) == 9


def test_c0_oscillation_shrinks_with_dt():
    coarse = sh.c0_sensitivity(5.0, 0.01, C0_GRID, model=PHI4).amplitude
    fine = sh.c0_sensitivity(5.0, 0.0025, C0_GRID, model=PHI4).amplitude
    assert fine < coarse


@pytest.mark.parametrize("dt", [0.01, 0.005, 0.0025])
def test_translation_invariance(dt):
    # moving the start point along the unstable manifold changes K only
    # through the O(c0) linearization error of the initial data
    a = sh.split_K(5.0, 1e-5, dt, model=PHI4)
    b = sh.split_K(5.0, 1e-4, dt, model=PHI4)
    envelope = sh.c0_sensitivity(5.0, dt, C0_GRID, model=PHI4).amplitude
    assert abs(a - b) < 2 * envelope
    c = sh.split_K(5.0, 1e-6, dt, model=PHI4)
    assert abs(c - a) < 0.2 * abs(a - b)


def test_dt_convergence():
    rows = sh.dt_convergence(5.0, 1e-5, [0.02, 0.01, 0.005, 0.0025, 0.000625], model=PHI4)
    K_ref = rows[-1][1]
    err = [abs(K - K_ref) for _, K in rows[:-1]]
    assert all(a > b for a, b in zip(err, err[1:]))
    d = sh.successive_differences(rows[:4])
    assert d[1] / d[2] >= 4.0
    one = sh.dt_convergence(5.0, 1e-5, [0.005], model=PHI4)
    assert one == [(0.005, sh.split_K(5.0, model=PHI4))]
    for bad in ([], [0.01, 0.01], [0.005, 0.01]):
        with pytest.raises(InvalidParameter):
            sh.dt_convergence(5.0, 1e-5, bad, model=PHI4)


def test_model_required():
    with pytest.raises(InvalidParameter):
        sh.split_K(5.0)
