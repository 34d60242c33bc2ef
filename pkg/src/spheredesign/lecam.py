"""Distinguishability bounds between the regression and sequence experiments,
and rate studies tracking how the bounds shrink as the design grows.

Both directions reduce to a total-variation bound between Gaussian shifts:
the node route compares regression laws whose means differ by the residual
of the degree-L fit at the nodes, the spectral route compares sequence laws
whose means differ by the L2 approximation error.  Each bound is
1 - 2 Phi(-sup / (2 scale)) with the supremum taken over a function family.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import DiscreteFrame
from .designs import CubatureRule, SphericalDesign, reference_rule
from .errors import ConditionError
from .experiments import gaussian_tv_bound
from .harmonics import CoefficientVector, eval_basis
from .needlets import filtered_kernel, level_scale, window_low_pass
from .spaces import make_besov_function, make_sobolev_function
from .sphere import dot


@dataclass(frozen=True)
class DeficiencyBound:
    """One total-variation bound over a function family."""

    sup_distance: float
    noise_scale: float
    per_function: np.ndarray

    @property
    def argument(self) -> float:
        """The half-distance in noise units fed to the normal cdf."""
        return self.sup_distance / (2.0 * self.noise_scale)

    @property
    def bound(self) -> float:
        return gaussian_tv_bound(self.sup_distance, self.noise_scale)


def _as_family(family):
    if isinstance(family, CoefficientVector):
        family = [family]
    family = list(family)
    if not family:
        raise ConditionError("the function family is empty")
    for f in family:
        if not isinstance(f, CoefficientVector):
            raise ConditionError("family members must be coefficient vectors")
    d = family[0].d
    for f in family:
        if f.d != d:
            raise ConditionError("family members live on different spheres")
    return family, d


def _family_values(family, d: int, points) -> np.ndarray:
    """Stack values of all members at the points into columns, evaluating
    the basis once at the largest band."""
    m = max(f.values.size for f in family)
    lmax = max(f.max_degree for f in family)
    basis = eval_basis(d, lmax, points)
    coef = np.zeros((m, len(family)))
    for k, f in enumerate(family):
        coef[:f.values.size, k] = f.values
    return basis @ coef


def bound_from_node_residuals(frame: DiscreteFrame, family,
                              sigma: float) -> DeficiencyBound:
    """Bound from the node residuals of the degree-L fit.

    The two regression laws for f and its fit share the noise sigma per
    node, so their total variation is controlled by the Euclidean residual
    at the nodes."""
    if not sigma > 0:
        raise ConditionError("sigma must be positive")
    family, d = _as_family(family)
    vals = _family_values(family, d, frame.design.points)
    fit = frame.matrix @ (frame.matrix.T @ vals) / frame.n
    dists = np.linalg.norm(fit - vals, axis=0)
    return DeficiencyBound(float(dists.max()), sigma, dists)


def bound_from_l2_error(frame: DiscreteFrame, family, sigma: float,
                        reference: CubatureRule | None = None) -> DeficiencyBound:
    """Bound from the L2 error of the degree-L fit.

    The sequence laws for f and its fit differ by the L2 distance at noise
    scale sigma / sqrt(n)."""
    if not sigma > 0:
        raise ConditionError("sigma must be positive")
    family, d = _as_family(family)
    band = max(f.max_degree for f in family)
    if reference is None:
        reference = reference_rule(d, 2 * max(band, frame.max_degree))
    vals = _family_values(family, d, frame.design.points)
    coef = frame.matrix.T @ vals / frame.n
    basis_ref = eval_basis(d, max(band, frame.max_degree),
                           reference.points)
    f_ref = _family_values(family, d, reference.points)
    fit_ref = basis_ref[:, :coef.shape[0]] @ coef
    diff = f_ref - fit_ref
    dists = np.sqrt(reference.weights @ diff ** 2)
    return DeficiencyBound(float(dists.max()), sigma / math.sqrt(frame.n),
                           dists)


def _empirical_kernel(design: SphericalDesign, jmax: int, points) -> np.ndarray:
    dots = dot(points, design.points)
    ker = filtered_kernel(design.dim, level_scale(jmax), window_low_pass, dots)
    return ker / design.n


def needlet_bound_from_node_residuals(design: SphericalDesign, jmax: int,
                                      family, sigma: float) -> DeficiencyBound:
    """Node-residual bound for the empirical needlet smoother at level jmax."""
    if not sigma > 0:
        raise ConditionError("sigma must be positive")
    if design.strength < 3 * 2 ** jmax:
        raise ConditionError(
            f"design strength {design.strength} < 3 * 2^{jmax} = "
            f"{3 * 2 ** jmax}")
    family, d = _as_family(family)
    vals = _family_values(family, d, design.points)
    fit = _empirical_kernel(design, jmax, design.points) @ vals
    dists = np.linalg.norm(fit - vals, axis=0)
    return DeficiencyBound(float(dists.max()), sigma, dists)


def needlet_bound_from_l2_error(design: SphericalDesign, jmax: int, family,
                                sigma: float,
                                reference: CubatureRule | None = None) -> DeficiencyBound:
    """L2-error bound for the empirical needlet smoother at level jmax."""
    if not sigma > 0:
        raise ConditionError("sigma must be positive")
    if design.strength < 3 * 2 ** jmax:
        raise ConditionError(
            f"design strength {design.strength} < 3 * 2^{jmax} = "
            f"{3 * 2 ** jmax}")
    family, d = _as_family(family)
    band = max(max(f.max_degree for f in family), 2 ** jmax - 1)
    if reference is None:
        reference = reference_rule(d, 2 * band)
    vals = _family_values(family, d, design.points)
    f_ref = _family_values(family, d, reference.points)
    fit_ref = _empirical_kernel(design, jmax, reference.points) @ vals
    diff = f_ref - fit_ref
    dists = np.sqrt(reference.weights @ diff ** 2)
    return DeficiencyBound(float(dists.max()),
                           sigma / math.sqrt(design.n), dists)


@dataclass(frozen=True)
class RateStudyRow:
    """Bounds for one design in a growing sequence."""

    n: int
    scale: int
    sup_nodes: float
    sup_l2: float
    arg_nodes: float
    arg_l2: float
    arg_total: float
    bound_nodes: float
    bound_l2: float
    bound_total: float


@dataclass(frozen=True)
class RateStudyResult:
    rows: tuple
    slope_nodes: float
    slope_l2: float
    slope_total: float
    expected_slope: float

    def as_table(self):
        return [row.__dict__ for row in self.rows]


def _fit_slope(ns, args):
    ns = np.asarray(ns, dtype=float)
    args = np.asarray(args, dtype=float)
    if np.any(args <= 0):
        return float("nan")
    return float(np.polyfit(np.log(ns), np.log(args), 1)[0])


def _make_row(n, scale, b_nodes: DeficiencyBound, b_l2: DeficiencyBound):
    arg_total = b_nodes.argument + b_l2.argument
    return RateStudyRow(
        n=n, scale=scale,
        sup_nodes=b_nodes.sup_distance, sup_l2=b_l2.sup_distance,
        arg_nodes=b_nodes.argument, arg_l2=b_l2.argument,
        arg_total=arg_total,
        bound_nodes=b_nodes.bound, bound_l2=b_l2.bound,
        bound_total=min(1.0, b_nodes.bound + b_l2.bound))


def assemble_rate_study(rows, expected_slope: float) -> RateStudyResult:
    """Fit the three slopes over finished rows (any order; sorted by n)."""
    rows = tuple(sorted(rows, key=lambda r: r.n))
    if len(rows) < 3:
        raise ConditionError("a rate fit needs at least three stages")
    ns = [r.n for r in rows]
    return RateStudyResult(
        rows,
        _fit_slope(ns, [r.arg_nodes for r in rows]),
        _fit_slope(ns, [r.arg_l2 for r in rows]),
        _fit_slope(ns, [r.arg_total for r in rows]),
        expected_slope)


def sobolev_family(d: int, s: float, radius: float, max_degree: int,
                   family_size: int, seed: int):
    """family_size random ball members of band 2L plus the extremal witness
    one degree past L."""
    family = [make_sobolev_function(d, s, radius, 2 * max_degree, seed,
                                    profile="random", index=i)
              for i in range(family_size)]
    family.append(make_sobolev_function(d, s, radius, max_degree, seed,
                                        profile="extremal"))
    return family


def sobolev_stage(design: SphericalDesign, max_degree: int, s: float,
                  radius: float, sigma: float, family_size: int,
                  seed: int) -> RateStudyRow:
    """One rate-study row: both bounds for one (design, L) pair."""
    d = design.dim
    family = sobolev_family(d, s, radius, max_degree, family_size, seed)
    frame = DiscreteFrame(design, max_degree)
    reference = reference_rule(d, 4 * max_degree + 2)
    b_nodes = bound_from_node_residuals(frame, family, sigma)
    b_l2 = bound_from_l2_error(frame, family, sigma, reference)
    return _make_row(design.n, max_degree, b_nodes, b_l2)


def sobolev_rate_study(designs, degrees, s: float, radius: float,
                       sigma: float, family_size: int,
                       seed: int) -> RateStudyResult:
    """Bounds along a sequence of (design, L) pairs for a Sobolev ball.

    Slopes are least-squares fits of log argument against log n, using the
    pre-cdf arguments so saturation of the bound near 1 cannot flatten
    them; the theory predicts 1/2 - s/d for both routes."""
    designs = list(designs)
    degrees = list(degrees)
    if len(designs) != len(degrees):
        raise ConditionError("designs and degrees must pair up")
    rows = [sobolev_stage(des, L, s, radius, sigma, family_size, seed)
            for des, L in zip(designs, degrees)]
    return assemble_rate_study(rows, 0.5 - s / designs[0].dim)


def besov_family(d: int, s: float, r: float, radius: float, jmax: int,
                 family_size: int, seed: int, q: float | None = None):
    """Random members spanning band 2^jmax - 1 (the tapered region) plus
    the witness at the killed degree 2^jmax."""
    band = 2 ** jmax - 1
    family = [make_besov_function(d, s, r, radius, band, seed,
                                  profile="random", index=i, q=q)
              for i in range(family_size)]
    family.append(make_besov_function(d, s, r, radius, band, seed,
                                      profile="extremal", q=q))
    return family


def besov_stage(design: SphericalDesign, jmax: int, s: float, r: float,
                radius: float, sigma: float, family_size: int,
                seed: int) -> RateStudyRow:
    """One rate-study row for the empirical needlet smoother at level jmax."""
    d = design.dim
    family = besov_family(d, s, r, radius, jmax, family_size, seed)
    reference = reference_rule(d, 2 ** (jmax + 2))
    b_nodes = needlet_bound_from_node_residuals(design, jmax, family, sigma)
    b_l2 = needlet_bound_from_l2_error(design, jmax, family, sigma, reference)
    return _make_row(design.n, 2 ** jmax, b_nodes, b_l2)


def besov_rate_study(designs, levels, s: float, r: float, radius: float,
                     sigma: float, family_size: int,
                     seed: int) -> RateStudyResult:
    """Bounds along (design, jmax) pairs for a Besov ball under the
    empirical needlet smoother.  The predicted slope is 1/r - s/d."""
    designs = list(designs)
    levels = list(levels)
    if len(designs) != len(levels):
        raise ConditionError("designs and levels must pair up")
    rows = [besov_stage(des, jmax, s, r, radius, sigma, family_size, seed)
            for des, jmax in zip(designs, levels)]
    return assemble_rate_study(rows, 1.0 / r - s / designs[0].dim)
