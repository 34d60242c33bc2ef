"""Real harmonic polynomials on S^d: eigenspace bookkeeping for every d,
an explicit orthonormal basis for d in {1, 2}, and zonal kernels for all d.

All inner products are taken against the normalized surface measure, so the
constant function 1 is the first basis element and each basis function has
unit mean square.  Coefficients are stored degree-major: all of degree 0,
then degree 1, and so on; inside a degree the sine terms come first with
frequency descending, then the zonal term, then cosine terms ascending.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConditionError
from .specialfn import gegenbauer_normalized, jacobi_at_one
from .sphere import as_coords, dot

# ---------------------------------------------------------------------------
# dimensions and enumeration


def dim_eigenspace(d: int, l: int) -> int:
    """Dimension of the degree-l harmonic eigenspace on S^d."""
    if d < 1 or l < 0:
        raise ConditionError(f"need d >= 1 and l >= 0, got d={d}, l={l}")
    if l == 0:
        return 1
    first = math.comb(l + d, d)
    second = math.comb(l + d - 2, d) if l + d - 2 >= d else 0
    return first - second


def dim_poly_space(d: int, L: int) -> int:
    """Dimension of the spherical polynomials of total degree <= L."""
    if L < 0:
        raise ConditionError("L must be >= 0")
    return sum(dim_eigenspace(d, l) for l in range(L + 1))


def eigenvalue(d: int, l: int) -> int:
    """Laplace-Beltrami eigenvalue l(l + d - 1) of the degree-l eigenspace."""
    if d < 1 or l < 0:
        raise ConditionError(f"need d >= 1 and l >= 0, got d={d}, l={l}")
    return l * (l + d - 1)


@lru_cache(maxsize=None)
def degree_offsets(d: int, L: int) -> tuple:
    """Cumulative column offsets: entry l is where degree l starts."""
    offs = [0]
    for l in range(L + 1):
        offs.append(offs[-1] + dim_eigenspace(d, l))
    return tuple(offs)


def enumerate_pairs(d: int, L: int) -> list:
    """Degree-major (l, m) labels matching the basis column order.

    For d = 2, m runs over -l..l with m < 0 the sin(|m| phi) terms; for
    d = 1, m in {-1, +1} labels sin/cos; for d >= 3 the within-degree label
    is an abstract index 0..dim-1 (no explicit basis is provided there).
    """
    pairs = []
    for l in range(L + 1):
        if d == 2:
            pairs.extend((l, m) for m in range(-l, l + 1))
        elif d == 1:
            pairs.extend([(0, 0)] if l == 0 else [(l, -1), (l, 1)])
        else:
            pairs.extend((l, k) for k in range(dim_eigenspace(d, l)))
    return pairs


def pair_index(d: int, l: int, m: int) -> int:
    """Position of the (l, m) label in the degree-major order."""
    offs = degree_offsets(d, max(l, 0))
    if l < 0 or (d == 2 and abs(m) > l):
        raise ConditionError(f"no harmonic labeled (l={l}, m={m}) on S^{d}")
    if d == 2:
        return offs[l] + m + l
    if d == 1:
        if l == 0 and m == 0:
            return 0
        if l >= 1 and m in (-1, 1):
            return offs[l] + (0 if m == -1 else 1)
        raise ConditionError(f"no harmonic labeled (l={l}, m={m}) on S^1")
    if not 0 <= m < dim_eigenspace(d, l):
        raise ConditionError(f"no harmonic labeled (l={l}, m={m}) on S^{d}")
    return offs[l] + m


# ---------------------------------------------------------------------------
# normalized associated Legendre recurrences (d = 2 workhorse)
#
# pbar_{lm}(z) is normalized so (1/2) int_{-1}^{1} pbar_{lm}^2 dz = 1; then
# pbar_{l0} and sqrt(2) pbar_{lm} {cos,sin}(m phi) have unit mean square on
# the sphere.


@lru_cache(maxsize=None)
def _legendre_tables(L: int):
    alpha = np.zeros((L + 1, L + 1))
    beta = np.zeros((L + 1, L + 1))
    diag = np.zeros(L + 1)
    for m in range(L + 1):
        for l in range(m + 1, L + 1):
            alpha[l, m] = math.sqrt((2 * l - 1) * (2 * l + 1)
                                    / ((l - m) * (l + m)))
            if l >= m + 2:
                beta[l, m] = math.sqrt((2 * l + 1) * (l + m - 1) * (l - m - 1)
                                       / ((2 * l - 3) * (l - m) * (l + m)))
        if m >= 1:
            diag[m] = math.sqrt((2 * m + 1) / (2 * m))
    return alpha, beta, diag


def _eval_basis_s2(L: int, coords: np.ndarray) -> np.ndarray:
    n = coords.shape[0]
    z = coords[:, 2]
    u = np.hypot(coords[:, 0], coords[:, 1])
    uc = np.maximum(u, 1e-300)
    cph = coords[:, 0] / uc
    sph = coords[:, 1] / uc
    alpha, beta, diag = _legendre_tables(L)
    offs = degree_offsets(2, L)
    out = np.empty((n, dim_poly_space(2, L)))
    sqrt2 = math.sqrt(2.0)
    cm = np.ones(n)
    sm = np.zeros(n)
    pmm = np.ones(n)
    for m in range(L + 1):
        if m > 0:
            cm, sm = cm * cph - sm * sph, sm * cph + cm * sph
        p_prev = np.zeros(n)
        p = pmm
        for l in range(m, L + 1):
            if l > m:
                p_prev, p = p, alpha[l, m] * z * p - beta[l, m] * p_prev
            o = offs[l]
            if m == 0:
                out[:, o + l] = p
            else:
                out[:, o + l - m] = sqrt2 * p * sm
                out[:, o + l + m] = sqrt2 * p * cm
        if m < L:
            pmm = pmm * (u * diag[m + 1])
    return out


def _eval_basis_s1(L: int, coords: np.ndarray) -> np.ndarray:
    theta = np.arctan2(coords[:, 1], coords[:, 0])
    out = np.empty((coords.shape[0], dim_poly_space(1, L)))
    out[:, 0] = 1.0
    sqrt2 = math.sqrt(2.0)
    for l in range(1, L + 1):
        out[:, 2 * l - 1] = sqrt2 * np.sin(l * theta)
        out[:, 2 * l] = sqrt2 * np.cos(l * theta)
    return out


def eval_basis(d: int, L: int, points) -> np.ndarray:
    """Matrix of the orthonormal basis up to degree L at the given points,
    shape (n, dim_poly_space(d, L)).  Explicit bases exist for d in {1, 2};
    higher dimensions work through zonal kernels instead."""
    coords = as_coords(points)
    if coords.ndim == 1:
        coords = coords[None, :]
    if coords.shape[1] != d + 1:
        raise ConditionError(f"points of S^{d} need {d + 1} coordinates, "
                             f"got {coords.shape[1]}")
    if d == 1:
        return _eval_basis_s1(L, coords)
    if d == 2:
        return _eval_basis_s2(L, coords)
    raise NotImplementedError(
        "explicit harmonic bases are provided for d in {1, 2} only; "
        "for d >= 3 use zonal_kernel / zonal_sum")


def basis_mean_squares(d: int, lmax: int, points) -> np.ndarray:
    """Per-degree energy of the node averages: W_l = sum over the degree-l
    eigenspace of ((1/n) sum_i Y_lm(x_i))^2, for l = 0..lmax.

    The addition theorem identifies W_l with the double kernel sum
    (1/n^2) sum_ij N_l gegenbauer_l(<x_i, x_j>), but this form costs
    O(n lmax^2) instead of O(n^2 lmax) and never materializes the basis
    matrix.  W_0 is always 1; the higher entries are the per-degree
    cubature defects of the equal-weight rule."""
    coords = as_coords(points)
    if coords.ndim == 1:
        coords = coords[None, :]
    if coords.shape[1] != d + 1:
        raise ConditionError(f"points of S^{d} need {d + 1} coordinates, "
                             f"got {coords.shape[1]}")
    n = coords.shape[0]
    out = np.zeros(lmax + 1)
    if d == 1:
        theta = np.arctan2(coords[:, 1], coords[:, 0])
        out[0] = 1.0
        for l in range(1, lmax + 1):
            out[l] = 2.0 * (np.mean(np.sin(l * theta)) ** 2
                            + np.mean(np.cos(l * theta)) ** 2)
        return out
    if d != 2:
        raise NotImplementedError(
            "basis mean squares need the explicit basis (d in {1, 2}); "
            "use the kernel-sum route for higher dimensions")
    z = coords[:, 2]
    u = np.hypot(coords[:, 0], coords[:, 1])
    uc = np.maximum(u, 1e-300)
    cph = coords[:, 0] / uc
    sph = coords[:, 1] / uc
    alpha, beta, diag = _legendre_tables(lmax)
    cm = np.ones(n)
    sm = np.zeros(n)
    pmm = np.ones(n)
    for m in range(lmax + 1):
        if m > 0:
            cm, sm = cm * cph - sm * sph, sm * cph + cm * sph
        p_prev = np.zeros(n)
        p = pmm
        for l in range(m, lmax + 1):
            if l > m:
                p_prev, p = p, alpha[l, m] * z * p - beta[l, m] * p_prev
            if m == 0:
                out[l] += np.mean(p) ** 2
            else:
                out[l] += 2.0 * (np.mean(p * sm) ** 2 + np.mean(p * cm) ** 2)
        if m < lmax:
            pmm = pmm * (u * diag[m + 1])
    return out


# ---------------------------------------------------------------------------
# zonal kernels


def zonal_kernel(d: int, l: int, x, y):
    """Reproducing kernel of the degree-l eigenspace at (x, y): the value
    dim_l * gegenbauer_l(<x, y>), which the addition theorem identifies with
    sum_m Y_lm(x) Y_lm(y)."""
    return dim_eigenspace(d, l) * gegenbauer_normalized(l, d, dot(x, y))


def _gegenbauer_degrees(d: int, lmax: int, g: np.ndarray):
    """Yield (l, values) over degrees 0..lmax at the array g of inner
    products, normalized to 1 at g = 1.  The yielded array is reused between
    iterations; consumers must reduce it immediately."""
    a = (d - 2.0) / 2.0
    ab = 2.0 * a
    at_one = np.array([jacobi_at_one(l, a) for l in range(lmax + 1)])
    prev = np.ones_like(g)
    yield 0, prev
    if lmax == 0:
        return
    cur = ((a + 1.0) + (ab + 2.0) * (g - 1.0) / 2.0) / at_one[1]
    yield 1, cur
    t1 = np.empty_like(g)
    t2 = np.empty_like(g)
    for l in range(2, lmax + 1):
        c = 2.0 * l + ab
        denom = 2.0 * l * (l + ab) * (c - 2.0)
        p = (c - 1.0) * c * (c - 2.0)
        r = 2.0 * (l + a - 1.0) * (l + a - 1.0) * c
        # alpha = beta kills the odd (alpha^2 - beta^2) term; rescale the
        # neighbors back to raw Jacobi values inside the step
        np.multiply(g, cur, out=t1)
        t1 *= p * at_one[l - 1]
        np.multiply(prev, r * at_one[l - 2], out=t2)
        t1 -= t2
        t1 /= denom * at_one[l]
        prev, cur, t1 = cur, t1, prev
        yield l, cur


def zonal_sum(d: int, weights, dots) -> np.ndarray:
    """sum_l weights[l] * dim_l * gegenbauer_l(dots), the filtered zonal
    kernel with the given per-degree weights."""
    weights = np.asarray(weights, dtype=float)
    g = np.asarray(dots, dtype=float)
    scalar = g.ndim == 0
    g = np.atleast_1d(g)
    acc = np.zeros_like(g)
    for l, vals in _gegenbauer_degrees(d, len(weights) - 1, g):
        w = weights[l] * dim_eigenspace(d, l)
        if w != 0.0:
            acc += w * vals
    return float(acc[0]) if scalar else acc


def zonal_degree_totals(d: int, lmax: int, dots) -> np.ndarray:
    """Per-degree totals sum over entries of dim_l * gegenbauer_l(dots),
    shape (lmax+1,); used for strength defects."""
    g = np.atleast_1d(np.asarray(dots, dtype=float))
    out = np.empty(lmax + 1)
    for l, vals in _gegenbauer_degrees(d, lmax, g):
        out[l] = dim_eigenspace(d, l) * vals.sum()
    return out


# ---------------------------------------------------------------------------
# coefficient vectors


@dataclass(frozen=True)
class CoefficientVector:
    """Degree-major coefficients of a band-limited function on S^d."""

    d: int
    max_degree: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        expected = dim_poly_space(self.d, self.max_degree)
        if values.shape != (expected,):
            raise ConditionError(
                f"degree {self.max_degree} on S^{self.d} needs {expected} "
                f"coefficients, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    def degree_slice(self, l: int) -> slice:
        offs = degree_offsets(self.d, self.max_degree)
        if not 0 <= l <= self.max_degree:
            raise ConditionError(f"degree {l} outside 0..{self.max_degree}")
        return slice(offs[l], offs[l + 1])

    def degree_energies(self) -> np.ndarray:
        """Per-degree squared coefficient mass, shape (max_degree + 1,)."""
        offs = degree_offsets(self.d, self.max_degree)
        sq = self.values ** 2
        return np.array([sq[offs[l]:offs[l + 1]].sum()
                         for l in range(self.max_degree + 1)])

    def project(self, L: int) -> "CoefficientVector":
        """Orthogonal projection onto degrees <= L (truncation)."""
        if L >= self.max_degree:
            return self
        keep = dim_poly_space(self.d, L)
        return CoefficientVector(self.d, L, self.values[:keep].copy())

    def pad(self, L: int) -> "CoefficientVector":
        """Zero-extend to max degree L >= current."""
        if L < self.max_degree:
            raise ConditionError("pad target below current degree")
        out = np.zeros(dim_poly_space(self.d, L))
        out[:self.values.size] = self.values
        return CoefficientVector(self.d, L, out)

    def evaluate(self, points) -> np.ndarray:
        """Synthesis at the given points (d in {1, 2})."""
        return eval_basis(self.d, self.max_degree, points) @ self.values

    def l2_norm(self) -> float:
        """L2(mu) norm; Parseval, since the basis is orthonormal."""
        return float(np.linalg.norm(self.values))
