"""Split function K(sigma) of the normalized fourth-order normal form.

The unstable solution leaving u- is started on the linearized unstable
manifold, integrated with fixed-step RK4 until phi first crosses a level L,
and K = phi''(t0) is read off at the crossing time t0. Zeros of K in sigma
are odd (about the crossing point) heteroclinic connections:

* L = 0   single kink  u- -> u+
* L = pi  sine-Gordon double kink  -pi -> pi -> 3 pi
* L = 2pi sine-Gordon triple kink
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import integrator as itg
from .errors import BlowUp, InvalidParameter, NoCrossing, NumericalFailure
from .model import Nonlinearity

log = logging.getLogger(__name__)

DEFAULT_C0 = 1e-5
DEFAULT_DT = 0.005
DEFAULT_T_MAX = 200.0

LEVELS = {"zero": 0.0, "0": 0.0, "pi": math.pi, "2pi": 2.0 * math.pi}


def resolve_level(level) -> float:
    """Accept a number or one of the symbolic names ``zero``, ``pi``, ``2pi``."""
    if isinstance(level, str):
        key = level.strip().lower()
        if key in LEVELS:
            return LEVELS[key]
        try:
            return float(key)
        except ValueError:
            raise InvalidParameter(f"unknown level {level!r}") from None
    return float(level)


@dataclass(frozen=True)
class ShootingConfig:
    sigma: float
    c0: float = DEFAULT_C0
    dt: float = DEFAULT_DT
    level: float = 0.0
    t_max: float = DEFAULT_T_MAX

    def __post_init__(self):
        object.__setattr__(self, "level", resolve_level(self.level))
        if not 0.0 < self.c0 < 1e-2:
            raise InvalidParameter(f"c0 must lie in (0, 1e-2), got {self.c0}")
        if not 0.0 < self.dt <= 0.05:
            raise InvalidParameter(f"dt must lie in (0, 0.05], got {self.dt}")
        if not self.t_max > 0.0:
            raise InvalidParameter(f"t_max must be positive, got {self.t_max}")
        if not math.isfinite(self.sigma):
            raise InvalidParameter("sigma must be finite")


@dataclass(frozen=True)
class SplitResult:
    t0: float
    K: float
    steps: int
    # state at the left end of the bracketing step, at time k*dt
    left: np.ndarray = field(repr=False, compare=False)
    k: int = 0


def _hermite(s, dt, y0, dy0, y1, dy1):
    s2 = s * s
    s3 = s2 * s
    return (
        (2 * s3 - 3 * s2 + 1) * y0
        + (s3 - 2 * s2 + s) * dt * dy0
        + (-2 * s3 + 3 * s2) * y1
        + (s3 - s2) * dt * dy1
    )


def integrate_to_crossing(cfg: ShootingConfig, model: Nonlinearity) -> SplitResult:
    """Integrate the unstable solution of u- up to its first crossing of ``cfg.level``.

    Raises NoCrossing if t_max passes without a crossing and BlowUp if the
    trajectory leaves the admissible region first.
    """
    rates = itg.model_rates(cfg.sigma, model)
    x = itg.unstable_ic(cfg.c0, rates.lambda0, model.u_minus)
    n_max = int(math.ceil(cfg.t_max / cfg.dt))
    status, k, left, right = itg._shoot(
        x, float(cfg.sigma), *itg._kernel_args(model), float(cfg.dt), float(cfg.level),
        n_max, itg.PHI_FACTOR * model.u_plus,
    )
    if status == itg.NO_CROSSING:
        raise NoCrossing(f"no crossing of level {cfg.level:g} before t = {cfg.t_max:g} (sigma={cfg.sigma:g})")
    if status == itg.BLEW_UP:
        raise BlowUp(f"trajectory blew up near t = {k * cfg.dt:g} (sigma={cfg.sigma:g})")
    if status == itg.AT_NODE:
        return SplitResult(k * cfg.dt, float(left[2]), k, left, k)

    dt = cfg.dt
    L = cfg.level

    def gap(s):
        return _hermite(s, dt, left[0], left[1], right[0], right[1]) - L

    s = brentq(gap, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    K = _hermite(s, dt, left[2], left[3], right[2], right[3])
    return SplitResult(k * dt + s * dt, float(K), k + 1, left, k)


def split_K(sigma: float, c0: float = DEFAULT_C0, dt: float = DEFAULT_DT, level=0.0,
            model: Nonlinearity | None = None, t_max: float = DEFAULT_T_MAX) -> float:
    if model is None:
        raise InvalidParameter("a model is required")
    return integrate_to_crossing(ShootingConfig(sigma, c0, dt, level, t_max), model).K


def crossing_state(cfg: ShootingConfig, model: Nonlinearity, res: SplitResult | None = None) -> np.ndarray:
    """Full state at t0, by a partial RK4 step from the left bracket."""
    if res is None:
        res = integrate_to_crossing(cfg, model)
    h = res.t0 - res.k * cfg.dt
    if h == 0.0:
        return np.array(res.left)
    return itg.rk4_step(res.left, h, cfg.sigma, model)


@dataclass(frozen=True)
class ScanRow:
    sigma: float
    t0: float
    K: float


def _scan_one(sigma, c0, dt, level, model, t_max):
    try:
        res = integrate_to_crossing(ShootingConfig(sigma, c0, dt, level, t_max), model)
    except NumericalFailure as exc:
        log.info("sigma=%g: %s", sigma, exc)
        return ScanRow(float(sigma), math.nan, math.nan)
    return ScanRow(float(sigma), res.t0, res.K)


def scan(sigma_grid, c0: float = DEFAULT_C0, dt: float = DEFAULT_DT, level=0.0,
         model: Nonlinearity | None = None, t_max: float = DEFAULT_T_MAX,
         threads: int = 1) -> list[ScanRow]:
    """K at each sigma of an ascending grid; failed rows carry nan."""
    if model is None:
        raise InvalidParameter("a model is required")
    grid = [float(s) for s in sigma_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameter("sigma grid must be strictly ascending")
    level = resolve_level(level)

    def job(sig):
        return _scan_one(sig, c0, dt, level, model, t_max)

    if threads <= 1 or len(grid) < 2:
        return [job(s) for s in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map() yields in input order
        return list(pool.map(job, grid))


def sigma_grid(lo: float, hi: float, step: float) -> np.ndarray:
    """lo, lo + step, ... up to hi inclusive (with a small tolerance)."""
    if not step > 0.0:
        raise InvalidParameter("step must be positive")
    if hi < lo:
        raise InvalidParameter("empty sigma range")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


@dataclass(frozen=True)
class ZeroRecord:
    sigma_star: float
    bracket_lo: float
    bracket_hi: float
    K_residual: float
    t0: float = math.nan


def _bisect(f, a, b, fa, xtol, ktol, max_iter=200):
    # plain bisection on the sign of f; stop when the bracket is below xtol
    # and |f| at the midpoint is below ktol, or when the bracket cannot shrink
    m, fm = a, fa
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m, m, m, fm
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b = m
        if b - a < xtol and abs(fm) < ktol:
            break
    return m, a, b, fm


def find_sigma_zeros(sigma_range, step: float, c0: float = DEFAULT_C0, dt: float = DEFAULT_DT,
                     level=0.0, model: Nonlinearity | None = None, t_max: float = DEFAULT_T_MAX,
                     threads: int = 1, xtol: float = 1e-8, ktol: float = 1e-10) -> list[ZeroRecord]:
    """Zeros of K(sigma) on [lo, hi]: grid scan for sign changes, then bisection.

    A bracket whose bisection does not drive |K| below ``ktol`` is dropped.
    Usually this is a jump of K (the first crossing moving to the next
    oscillation about the level), occasionally a genuine zero whose
    residual is limited by round-off; the latter is logged as a warning.
    """
    lo, hi = sigma_range
    level = resolve_level(level)
    rows = scan(sigma_grid(lo, hi, step), c0, dt, level, model, t_max, threads)

    def K_at(sig):
        return integrate_to_crossing(ShootingConfig(sig, c0, dt, level, t_max), model).K

    out, stalled = [], []
    for r0, r1 in zip(rows, rows[1:]):
        if not (math.isfinite(r0.K) and math.isfinite(r1.K)):
            continue
        if r0.K == 0.0:
            out.append(ZeroRecord(r0.sigma, r0.sigma, r0.sigma, 0.0, r0.t0))
            continue
        if (r0.K > 0.0) == (r1.K > 0.0) or r1.K == 0.0:
            continue
        try:
            m, a, b, fm = _bisect(K_at, r0.sigma, r1.sigma, r0.K, xtol, ktol)
        except NumericalFailure as exc:
            log.warning("bisection in [%g, %g] failed: %s", r0.sigma, r1.sigma, exc)
            continue
        if abs(fm) >= ktol:
            if abs(fm) < 1e3 * ktol:
                # near a long plateau the crossing time is ill-conditioned and
                # round-off in sigma alone moves K by more than ktol
                stalled.append(m)
                log.debug("zero near sigma=%.12g stalled at |K|=%.3g", m, abs(fm))
            else:
                log.info("sign change in [%g, %g] is a jump of K, not a zero", r0.sigma, r1.sigma)
            continue
        t0 = integrate_to_crossing(ShootingConfig(m, c0, dt, level, t_max), model).t0
        out.append(ZeroRecord(m, a, b, fm, t0))
    if stalled:
        log.warning("%d zero(s) not resolved below |K|=%.1e by round-off, dropped (sigma ~ %s)",
                    len(stalled), ktol, ", ".join(f"{m:.6g}" for m in stalled))
    if rows and rows[-1].K == 0.0:
        r = rows[-1]
        out.append(ZeroRecord(r.sigma, r.sigma, r.sigma, 0.0, r.t0))
    return sorted(out, key=lambda z: z.sigma_star)


@dataclass(frozen=True)
class C0Sensitivity:
    mean: float
    std: float
    rel_error: float
    amplitude: float  # half the peak-to-peak spread of K over c0
    values: tuple


def c0_sensitivity(sigma: float, dt: float, c0_list, level=0.0,
                   model: Nonlinearity | None = None, t_max: float = DEFAULT_T_MAX) -> C0Sensitivity:
    """Spread of K under changes of the shooting offset c0.

    K does not depend on c0 for the exact flow, so std/|mean| measures the
    discretization error.
    """
    c0_list = list(c0_list)
    if len(c0_list) < 2:
        raise InvalidParameter("need at least two values of c0")
    Ks = np.array([split_K(sigma, c0, dt, level, model, t_max) for c0 in c0_list])
    mean = float(Ks.mean())
    # shifting by the first value keeps identical inputs at exactly zero spread
    std = float((Ks - Ks[0]).std())
    rel = std / abs(mean) if mean != 0.0 else math.inf
    return C0Sensitivity(mean, std, rel, 0.5 * float(Ks.max() - Ks.min()), tuple(Ks.tolist()))


def dt_convergence(sigma: float, c0: float, dt_list, level=0.0,
                   model: Nonlinearity | None = None, t_max: float = DEFAULT_T_MAX) -> list[tuple[float, float]]:
    """(dt, K) pairs for a strictly decreasing sequence of step sizes."""
    dt_list = [float(d) for d in dt_list]
    if not dt_list:
        raise InvalidParameter("dt list is empty")
    if any(b >= a for a, b in zip(dt_list, dt_list[1:])):
        raise InvalidParameter("dt list must be strictly decreasing")
    return [(d, split_K(sigma, c0, d, level, model, t_max)) for d in dt_list]


def successive_differences(rows) -> list[float]:
    """|K_i - K_{i+1}| along a dt_convergence result."""
    return [abs(a[1] - b[1]) for a, b in zip(rows, rows[1:])]


def odd_symmetry_defect(sigma: float, c0: float = DEFAULT_C0, dt: float = DEFAULT_DT, level=math.pi,
                        model: Nonlinearity | None = None, half_width: float = 5.0,
                        t_max: float = DEFAULT_T_MAX, n_samples: int = 501) -> float:
    """max |phi(t0 + s) + phi(t0 - s) - 2L| for 0 <= s <= half_width.

    At a zero of K the forward solution is odd about (t0, L); this measures
    how far it is from that. phi between grid points comes from cubic
    Hermite interpolation of (phi, phi').
    """
    cfg = ShootingConfig(sigma, c0, dt, level, t_max)
    res = integrate_to_crossing(cfg, model)
    if res.t0 < half_width:
        raise InvalidParameter("crossing too early for the requested half width")
    rates = itg.model_rates(sigma, model)
    x = itg.unstable_ic(c0, rates.lambda0, model.u_minus)
    n = int(math.ceil((res.t0 + half_width) / dt)) + 1
    traj = itg.trajectory(x, n, dt, sigma, model)

    def phi_at(t):
        k = np.minimum(np.floor(t / dt).astype(int), n - 1)
        s = t / dt - k
        return _hermite(s, dt, traj[k, 0], traj[k, 1], traj[k + 1, 0], traj[k + 1, 1])

    s = np.linspace(0.0, half_width, n_samples)
    return float(np.max(np.abs(phi_at(res.t0 + s) + phi_at(res.t0 - s) - 2.0 * cfg.level)))
