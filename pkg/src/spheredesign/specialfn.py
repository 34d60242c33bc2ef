"""Jacobi polynomials, normalized Gegenbauer values, and the normal CDF."""
from __future__ import annotations

import math

import numpy as np

from .errors import ConditionError


def jacobi_sequence(lmax: int, alpha: float, beta: float, t) -> np.ndarray:
    """P_l^{(alpha, beta)}(t) for all l = 0..lmax by the forward three-term
    recurrence; returns shape (lmax+1,) + shape(t)."""
    if lmax < 0:
        raise ConditionError("lmax must be >= 0")
    t = np.asarray(t, dtype=float)
    out = np.empty((lmax + 1,) + t.shape)
    out[0] = 1.0
    if lmax >= 1:
        out[1] = (alpha + 1.0) + (alpha + beta + 2.0) * (t - 1.0) / 2.0
    ab = alpha + beta
    for l in range(2, lmax + 1):
        c = 2.0 * l + ab
        denom = 2.0 * l * (l + ab) * (c - 2.0)
        p = (c - 1.0) * (c * (c - 2.0))
        q = (c - 1.0) * (alpha * alpha - beta * beta)
        r = 2.0 * (l + alpha - 1.0) * (l + beta - 1.0) * c
        out[l] = ((p * t + q) * out[l - 1] - r * out[l - 2]) / denom
    return out


def jacobi(l: int, alpha: float, beta: float, t):
    """P_l^{(alpha, beta)}(t); scalar in, scalar out."""
    t_arr = np.asarray(t, dtype=float)
    val = jacobi_sequence(l, alpha, beta, t_arr)[l]
    return float(val) if t_arr.ndim == 0 else val


def jacobi_at_one(l: int, alpha: float) -> float:
    """P_l^{(alpha, beta)}(1) = binom(l + alpha, l), independent of beta."""
    v = 1.0
    for k in range(1, l + 1):
        v *= (alpha + k) / k
    return v


def gegenbauer_normalized_sequence(lmax: int, d: int, t) -> np.ndarray:
    """Gegenbauer values scaled to 1 at t = 1, all degrees 0..lmax.

    These are P_l^{(a,a)}(t) / P_l^{(a,a)}(1) with a = (d-2)/2; for d = 1
    they reduce to the Chebyshev values cos(l arccos t).
    """
    if d < 1:
        raise ConditionError("d must be >= 1")
    a = (d - 2.0) / 2.0
    seq = jacobi_sequence(lmax, a, a, t)
    for l in range(lmax + 1):
        seq[l] /= jacobi_at_one(l, a)
    return seq


def gegenbauer_normalized(l: int, d: int, t):
    t_arr = np.asarray(t, dtype=float)
    val = gegenbauer_normalized_sequence(l, d, t_arr)[l]
    return float(val) if t_arr.ndim == 0 else val


_erfc = np.vectorize(math.erfc, otypes=[float])


def std_normal_cdf(x):
    """Standard normal CDF via erfc; absolute error well below 1e-12."""
    x_arr = np.asarray(x, dtype=float)
    val = 0.5 * _erfc(-x_arr / math.sqrt(2.0))
    return float(val) if x_arr.ndim == 0 else val
