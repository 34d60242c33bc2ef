"""Smoothness classes on the sphere: Sobolev norms through the Laplacian
eigenvalues, Besov norms through needlet level blocks, and generators for
test functions with an exactly prescribed norm."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import substream
from .errors import ConditionError
from .harmonics import (CoefficientVector, degree_offsets, dim_eigenspace,
                        dim_poly_space, eigenvalue)
from .needlets import NeedletCoefficients, filter_h, level_scale


def sobolev_norm(coeffs: CoefficientVector, s: float) -> float:
    """Norm with degree-l energy weighted by (1 + l(l + d - 1))^s."""
    energies = coeffs.degree_energies()
    lam = np.array([eigenvalue(coeffs.d, l)
                    for l in range(coeffs.max_degree + 1)], dtype=float)
    return float(np.sqrt(np.sum((1.0 + lam) ** s * energies)))


def make_sobolev_function(d: int, s: float, radius: float, max_degree: int,
                          seed: int, profile: str = "random",
                          index: int = 0) -> CoefficientVector:
    """A band-limited function with Sobolev norm exactly equal to radius.

    profile="random" draws Gaussian coefficients whose scale decays just
    fast enough that the norm barely converges, then rescales; the result
    fills every degree up to max_degree.  profile="extremal" puts all mass
    one degree past max_degree, the worst case for a degree-max_degree
    projection at fixed norm.  index selects independent draws under one
    seed."""
    if s <= d / 2:
        raise ConditionError(f"smoothness s = {s} must exceed d/2 = {d / 2}")
    if radius <= 0:
        raise ConditionError("radius must be positive")
    if profile == "random":
        rng = substream(seed, "spaces.sobolev", f"L={max_degree}",
                        f"i={index}")
        offs = degree_offsets(d, max_degree)
        vals = rng.standard_normal(dim_poly_space(d, max_degree))
        for l in range(max_degree + 1):
            sd = (1.0 + eigenvalue(d, l)) ** (-(s + d / 2 + 0.05) / 2.0)
            vals[offs[l]:offs[l + 1]] *= sd
        out = CoefficientVector(d, max_degree, vals)
    elif profile == "extremal":
        l = max_degree + 1
        vals = np.zeros(dim_poly_space(d, l))
        vals[dim_poly_space(d, max_degree):] = 1.0
        out = CoefficientVector(d, l, vals)
    else:
        raise ConditionError(f"unknown profile {profile!r}")
    norm = sobolev_norm(out, s)
    return CoefficientVector(out.d, out.max_degree,
                             out.values * (radius / norm))


def besov_norm(levels, s: float, r: float, q: float, d: int) -> float:
    """Sequence norm of needlet level blocks: the l_q norm over levels j of
    2^(j (s - d/r + d/2)) times the l_r norm of block j.  Either index may
    be inf for a supremum."""
    if isinstance(levels, NeedletCoefficients):
        if levels.d != d:
            raise ConditionError("coefficient dimension does not match d")
        block_norms = levels.level_norms(r)
    else:
        block_norms = NeedletCoefficients(d, tuple(
            np.asarray(b, dtype=float) for b in levels)).level_norms(r)
    j = np.arange(len(block_norms), dtype=float)
    weighted = 2.0 ** (j * (s - d / r + d / 2.0)) * block_norms
    if math.isinf(q):
        return float(weighted.max()) if weighted.size else 0.0
    return float(np.sum(weighted ** q) ** (1.0 / q))


def besov_level_energies(coeffs: CoefficientVector, jmax: int) -> np.ndarray:
    """Squared l_2 mass of each needlet level, straight from harmonic
    coefficients: level 0 holds the mean, level j >= 1 holds the degree
    energies weighted by the squared band filter at scale 2^(j-1).

    This equals the sum of squared analysis coefficients whenever the level
    rules integrate the relevant products exactly, so r = 2 Besov norms
    never need quadrature."""
    energies = coeffs.degree_energies()
    degs = np.arange(coeffs.max_degree + 1, dtype=float)
    out = np.empty(jmax + 1)
    out[0] = energies[0]
    for j in range(1, jmax + 1):
        h = filter_h(degs / level_scale(j))
        out[j] = float(np.sum(h ** 2 * energies))
    return out


def besov_norm_from_harmonic(coeffs: CoefficientVector, s: float, q: float,
                             jmax: int | None = None) -> float:
    """Besov norm with r = 2, computed exactly from harmonic coefficients.

    jmax defaults to the coarsest level whose filter already covers the
    band, past which every block is zero."""
    if jmax is None:
        jmax = levels_for_band(coeffs.max_degree)
    e = besov_level_energies(coeffs, jmax)
    return besov_norm(tuple(np.array([math.sqrt(v)]) for v in e),
                      s, 2.0, q, coeffs.d)


def levels_for_band(max_degree: int) -> int:
    """Smallest jmax with h(l / 2^(jmax-1)) = 0 beyond it for l <= band,
    i.e. the support 2^(j-1) * 2 > band fails afterwards."""
    j = 1
    while 2.0 ** j <= max_degree:
        j += 1
    return j


def make_besov_function(d: int, s: float, r: float, radius: float,
                        max_degree: int, seed: int,
                        profile: str = "random",
                        index: int = 0,
                        q: float | None = None) -> CoefficientVector:
    """A band-limited function with Besov norm (q = r) exactly radius.

    The random profile reuses the near-critical Gaussian decay; the extremal
    profile concentrates on the single degree max_degree + 1.  For r = 2 the
    level energies come straight from the degree energies; other r go
    through exact needlet analysis on the bundled systems, so the band must
    stay within the catalog.  Either way the norm is 1-homogeneous in the
    coefficients and the rescaling is exact."""
    if radius <= 0:
        raise ConditionError("radius must be positive")
    if profile == "random":
        rng = substream(seed, "spaces.besov", f"L={max_degree}", f"i={index}")
        offs = degree_offsets(d, max_degree)
        vals = rng.standard_normal(dim_poly_space(d, max_degree))
        for l in range(max_degree + 1):
            sd = (1.0 + eigenvalue(d, l)) ** (-(s + d / 2 + 0.05) / 2.0)
            vals[offs[l]:offs[l + 1]] *= sd
        out = CoefficientVector(d, max_degree, vals)
    elif profile == "extremal":
        l = max_degree + 1
        vals = np.zeros(dim_poly_space(d, l))
        vals[dim_poly_space(d, max_degree):] = 1.0
        out = CoefficientVector(d, l, vals)
    else:
        raise ConditionError(f"unknown profile {profile!r}")
    if q is None:
        q = r
    if r == 2.0:
        norm = besov_norm_from_harmonic(out, s, q)
    else:
        from .needlets import needlet_coeffs, standard_system
        system = standard_system(d, levels_for_band(out.max_degree))
        norm = besov_norm(needlet_coeffs(out, system), s, r, q, d)
    return CoefficientVector(out.d, out.max_degree,
                             out.values * (radius / norm))


@dataclass(frozen=True)
class EmbeddingReport:
    """One comparison of Besov norms across integrability indices."""

    norm_r2: float
    norm_r: float
    constant: float
    bound: float
    ok: bool


def besov_embedding_check(levels, s: float, r: float, q: float, d: int,
                          level_sizes=None) -> EmbeddingReport:
    """Check the norm drop from index r >= 2 down to 2 on finite levels.

    Holder on a block of N_j coefficients gives ||.||_2 <= N_j^(1/2 - 1/r)
    ||.||_r, so the r = 2 norm is at most max_j N_j^(1/2 - 1/r) times the
    index-r norm."""
    if r < 2.0:
        raise ConditionError("the norm comparison runs from r >= 2 down to 2")
    if isinstance(levels, NeedletCoefficients):
        blocks = levels.levels
    else:
        blocks = tuple(np.asarray(b, dtype=float) for b in levels)
    if level_sizes is None:
        level_sizes = tuple(len(b) for b in blocks)
    sizes = np.array([max(int(m), 1) for m in level_sizes], dtype=float)
    if math.isinf(r):
        factors = sizes ** 0.5
    else:
        factors = sizes ** (0.5 - 1.0 / r)
    constant = float(factors.max())
    n2 = besov_norm(blocks, s, 2.0, q, d)
    nr = besov_norm(blocks, s, r, q, d)
    bound = constant * nr
    return EmbeddingReport(n2, nr, constant, bound,
                           bool(n2 <= bound * (1.0 + 1e-12)))
