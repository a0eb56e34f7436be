"""Inverse-power-series coefficients near the complex singularity of the
phi4 kink, whose non-vanishing growth makes the Stokes constant nonzero.

The inner problem psi'''' + psi'' - psi^3 = 0 has the formal solution
psi = sum_{m>=1} a_m z^{-m} with a_1 = sqrt(2), a_2 = 0 and

    m(m+1)(m+2)(m+3) a_m + (m+2)(m+3) a_{m+2} = sum_{l+k+j = m+4} a_l a_k a_j.

Only odd coefficients survive. With a_{2n+1} = (-1)^n (2n)! b_n the
recurrence becomes

    b_{n+1} = b_n + sum_{l+k+j = n+1} (2l)!(2k)!(2j)!/(2n+4)! b_l b_k b_j.

b_{n+1} appears on the right in the three terms where one index equals
n+1, so each step solves a linear equation for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter

B0 = math.sqrt(2.0)


@dataclass(frozen=True)
class StokesSequence:
    b: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.b) - 1


def inv_binomial_even(M: int) -> np.ndarray:
    """1 / C(2M, 2k) for k = 0..M.

    Built from ratios of consecutive terms, outward from both ends, so no
    factorial is ever formed. Entries near the middle may underflow to 0.
    """
    out = np.empty(M + 1)
    out[0] = 1.0
    half = M // 2
    if half:
        k = np.arange(half, dtype=float)
        ratio = (2 * k + 2) * (2 * k + 1) / ((2 * M - 2 * k) * (2 * M - 2 * k - 1))
        out[1:half + 1] = np.cumprod(ratio)
    out[M - half:] = out[:half + 1][::-1]
    return out


def b_sequence(n_max: int) -> StokesSequence:
    """b_0 .. b_{n_max}. Cost is O(n_max^2)."""
    if n_max < 0:
        raise InvalidParameter("n_max must be non-negative")
    b = np.empty(n_max + 1)
    b[0] = B0
    # T[M] = sum_k b_k b_{M-k} / C(2M, 2k); depends on b_0..b_M only
    T = np.empty(n_max + 1)
    T[0] = B0 * B0
    for n in range(n_max):
        N = n + 1
        # T_N without its two b_N terms (k = 0 and k = N)
        if N >= 2:
            w = inv_binomial_even(N)[1:N]
            t_inner = float(np.dot(w, b[1:N] * b[N - 1:0:-1]))
        else:
            t_inner = 0.0
        # sum over l of b_l T_{N-l} / C(2N, 2l), l = 1..N-1, plus the l = 0 part of T_N
        wl = inv_binomial_even(N)
        explicit = B0 * t_inner
        if N >= 2:
            explicit += float(np.dot(wl[1:N] * b[1:N], T[N - 1:0:-1]))
        scale = 1.0 / ((2 * N + 2) * (2 * N + 1))
        # implicit terms: l = 0 with k in {0, N} and l = N, each b_0^2 b_N
        coef = 1.0 - 3.0 * B0 * B0 * scale
        b[N] = (b[n] + scale * explicit) / coef
        T[N] = t_inner + 2.0 * B0 * b[N]
    return StokesSequence(b)


def diagonal_residual(seq: StokesSequence, n: int) -> float:
    """Relative residual of the diagonal recurrence at step n -> n+1,
    re-evaluated with the full triple sum."""
    b = seq.b
    if not 0 <= n < seq.n_max:
        raise IndexError(f"step {n} outside the computed range")
    N = n + 1
    outer = inv_binomial_even(N)
    total = 0.0
    for l in range(N + 1):
        row = inv_binomial_even(N - l)
        for k in range(N - l + 1):
            total += outer[l] * row[k] * b[l] * b[k] * b[N - l - k]
    total /= (2 * N + 2) * (2 * N + 1)
    lhs = b[N] - b[n]
    return abs(lhs - total) / abs(lhs)


def a_from_b(seq: StokesSequence, m: int) -> float:
    """a_m: zero for even m, (-1)^n (2n)! b_n for m = 2n + 1.

    Overflows to OverflowError once (2n)! b_n exceeds the double range
    (n around 85).
    """
    if m < 1:
        raise IndexError(f"coefficient index must be >= 1, got {m}")
    if m % 2 == 0:
        return 0.0
    n = (m - 1) // 2
    if n > seq.n_max:
        raise IndexError(f"a_{m} needs b_{n}, only b_0..b_{seq.n_max} computed")
    return (-1.0) ** n * float(math.factorial(2 * n) * seq.b[n])


def verify_a_recurrence(seq: StokesSequence, m_max: int) -> float:
    """Largest relative residual of the a_m recurrence for 1 <= m <= m_max.

    Each residual is divided by the sum of the absolute values of its
    terms, which keeps it O(eps) even though a_m grows factorially.
    """
    if seq.n_max < 1 or seq.b[0] != B0:
        raise InvalidParameter("sequence must start from b_0 = sqrt(2)")
    if m_max > 2 * seq.n_max - 3:
        raise InvalidParameter(f"m_max must be <= 2*n_max - 3 = {2 * seq.n_max - 3}")
    a = [0.0] + [a_from_b(seq, m) for m in range(1, m_max + 4)]
    worst = 0.0
    for m in range(1, m_max + 1):
        t1 = m * (m + 1) * (m + 2) * (m + 3) * a[m]
        t2 = (m + 2) * (m + 3) * a[m + 2]
        cubic = 0.0
        size = abs(t1) + abs(t2)
        for l in range(1, m + 3):
            for k in range(1, m + 4 - l):
                p = a[l] * a[k] * a[m + 4 - l - k]
                cubic += p
                size += abs(p)
        if size == 0.0:
            continue
        worst = max(worst, abs(t1 + t2 - cubic) / size)
    return worst
