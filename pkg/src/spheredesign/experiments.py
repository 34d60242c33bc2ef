"""The two observation models and the randomizations between them.

Regression: noisy values of f at the nodes of a design.  Sequence model:
the first T basis coefficients observed in white noise at scale
sigma / sqrt(n).  On a design of strength 2L the node averages of the
regression data reproduce the first dim P_L sequence coordinates with
exactly that law, which is what the transfer maps exploit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._rng import substream
from .approx import DiscreteFrame
from .designs import SphericalDesign
from .errors import ConditionError
from .harmonics import CoefficientVector, dim_poly_space
from .specialfn import std_normal_cdf


@dataclass(frozen=True)
class RegressionSample:
    """Observed values z_i = f(x_i) + noise * eps_i on a design."""

    design: SphericalDesign
    values: np.ndarray
    noise: float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.design.n,):
            raise ConditionError(f"values have shape {vals.shape}, expected "
                                 f"({self.design.n},)")
        if not self.noise > 0:
            raise ConditionError("noise level must be positive")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SequenceObservation:
    """Basis coefficients observed in independent Gaussian noise.

    Coordinates follow the degree-major basis order; noise_scale is the
    common standard deviation sigma / sqrt(n)."""

    d: int
    y: np.ndarray
    noise_scale: float

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        if y.ndim != 1 or y.size == 0:
            raise ConditionError("y must be a nonempty vector")
        if not self.noise_scale > 0:
            raise ConditionError("noise scale must be positive")
        object.__setattr__(self, "y", y)

    @property
    def size(self) -> int:
        return self.y.size


def _values_on(design: SphericalDesign, f) -> np.ndarray:
    if hasattr(f, "evaluate"):
        return np.asarray(f.evaluate(design.points), dtype=float)
    if callable(f):
        return np.asarray(f(design.points.coords), dtype=float)
    vals = np.asarray(f, dtype=float)
    if vals.shape != (design.n,):
        raise ConditionError(f"node values have shape {vals.shape}, expected "
                             f"({design.n},)")
    return vals


def simulate_regression(f, design: SphericalDesign, sigma: float,
                        seed: int) -> RegressionSample:
    """Draw one regression sample of f on the design."""
    if not sigma > 0:
        raise ConditionError("sigma must be positive")
    rng = substream(seed, "experiments.regression")
    vals = _values_on(design, f)
    return RegressionSample(design, vals + sigma * rng.standard_normal(design.n),
                            sigma)


def simulate_white_noise(theta: CoefficientVector, sigma: float, n: int,
                         seed: int, size: int | None = None) -> SequenceObservation:
    """Draw the sequence observation of theta at noise scale sigma / sqrt(n).

    size pads (or truncates) the coordinate count; it defaults to the
    dimension of polynomials of twice theta's degree, matching what a
    strength-2L design can transfer."""
    if not sigma > 0:
        raise ConditionError("sigma must be positive")
    if n <= 0:
        raise ConditionError("n must be positive")
    if size is None:
        size = dim_poly_space(theta.d, 2 * theta.max_degree)
    mean = np.zeros(size)
    m = min(size, theta.values.size)
    mean[:m] = theta.values[:m]
    rng = substream(seed, "experiments.white_noise")
    scale = sigma / np.sqrt(n)
    return SequenceObservation(theta.d, mean + scale * rng.standard_normal(size),
                               scale)


def to_white_noise(sample: RegressionSample, max_degree: int, seed: int,
                   size: int | None = None) -> SequenceObservation:
    """Map a regression sample to a sequence observation.

    The first dim P_L coordinates are the node averages (1/n) sum z_i
    Y_j(x_i); on a design of strength 2L they are exactly independent
    N(beta_j, sigma^2 / n) with beta the degree-L fit of f.  Coordinates
    past the head carry no information about the data and are drawn fresh
    at the same scale from the seed's own substream."""
    frame = DiscreteFrame(sample.design, max_degree)
    head = frame.matrix.T @ sample.values / frame.n
    if size is None:
        size = dim_poly_space(sample.design.dim, 2 * max_degree)
    if size < head.size:
        raise ConditionError(f"size {size} cannot hold the {head.size} "
                             f"informative coordinates")
    scale = sample.noise / np.sqrt(frame.n)
    y = np.empty(size)
    y[:head.size] = head
    if size > head.size:
        rng = substream(seed, "experiments.wn_tail")
        y[head.size:] = scale * rng.standard_normal(size - head.size)
    return SequenceObservation(sample.design.dim, y, scale)


def to_regression(obs: SequenceObservation, design: SphericalDesign,
                  max_degree: int, seed: int) -> RegressionSample:
    """Map a sequence observation to a regression sample on the design.

    The head coordinates give the fitted values X theta_hat at the nodes;
    the added noise sigma (I - (1/n) X X^T) g, with g standard normal, is
    exactly the complement of the variance the head already carries, so the
    output has the regression law with total noise sigma = noise_scale *
    sqrt(n) whenever f is band-limited to the head."""
    frame = DiscreteFrame(design, max_degree)
    m = frame.dim_range
    if obs.size < m:
        raise ConditionError(f"observation has {obs.size} coordinates, the "
                             f"degree-{max_degree} head needs {m}")
    if obs.d != design.dim:
        raise ConditionError("observation and design dimensions differ")
    sigma = obs.noise_scale * np.sqrt(frame.n)
    fitted = frame.matrix @ obs.y[:m]
    rng = substream(seed, "experiments.reg_noise")
    g = rng.standard_normal(frame.n)
    residual_noise = sigma * (g - frame.matrix @ (frame.matrix.T @ g) / frame.n)
    return RegressionSample(design, fitted + residual_noise, sigma)


def gaussian_tv_bound(distance: float, noise_scale: float) -> float:
    """Total variation between N(a, v I) and N(b, v I) with |a - b| =
    distance and sqrt(v) = noise_scale: 1 - 2 Phi(-distance / (2 scale))."""
    if distance < 0:
        raise ConditionError("distance must be nonnegative")
    if not noise_scale > 0:
        raise ConditionError("noise scale must be positive")
    return float(1.0 - 2.0 * std_normal_cdf(-distance / (2.0 * noise_scale)))
