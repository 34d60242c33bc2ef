"""Hyperinterpolation: least-squares recovery of band-limited coefficients
from samples on a design, which collapses to a single discrete inner product
per basis function when the design strength reaches twice the band."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .designs import CubatureRule, SphericalDesign
from .errors import ConditionError
from .harmonics import CoefficientVector, dim_poly_space, eval_basis

GRAM_TOL = 1e-8


@dataclass
class DiscreteFrame:
    """Basis values on the nodes of a design, ready for coefficient recovery.

    With strength t >= 2L all products of two basis functions are integrated
    exactly, so the Gram matrix X^T X equals n I and hyperinterpolation is
    the least-squares fit.  Constructing a frame checks both facts; pass
    least_squares=True to accept an inexact rule and fall back to a QR-based
    fit (no exactness is claimed then).
    """

    design: SphericalDesign
    max_degree: int
    least_squares: bool = False
    matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        L = self.max_degree
        if L < 0:
            raise ConditionError("max_degree must be >= 0")
        if not self.least_squares and self.design.strength < 2 * L:
            raise ConditionError(
                f"design strength {self.design.strength} < 2L = {2 * L}; "
                f"exact recovery needs products of degree 2L (pass "
                f"least_squares=True to fit anyway)")
        self.matrix = eval_basis(self.design.dim, L, self.design.points)
        n = self.n
        if not self.least_squares:
            gram_dev = np.abs(self.matrix.T @ self.matrix
                              - n * np.eye(self.matrix.shape[1])).max()
            if gram_dev > GRAM_TOL * n:
                raise ConditionError(
                    f"basis Gram deviates from n*I by {gram_dev:.3e} "
                    f"(> {GRAM_TOL:.0e} * n); the rule does not integrate "
                    f"the products exactly")

    @property
    def n(self) -> int:
        return self.design.n

    @property
    def dim_range(self) -> int:
        return self.matrix.shape[1]


def node_values(frame: DiscreteFrame, f) -> np.ndarray:
    """Values of f on the frame's nodes; accepts arrays, callables on
    coordinate arrays, and objects with .evaluate(points)."""
    if hasattr(f, "evaluate"):
        vals = np.asarray(f.evaluate(frame.design.points), dtype=float)
    elif callable(f):
        vals = np.asarray(f(frame.design.points.coords), dtype=float)
    else:
        vals = np.asarray(f, dtype=float)
    if vals.shape != (frame.n,):
        raise ConditionError(f"node values have shape {vals.shape}, expected "
                             f"({frame.n},)")
    return vals


def discrete_inner(frame: DiscreteFrame, f, g) -> float:
    """The node average (1/n) sum f(x_i) g(x_i)."""
    return float(node_values(frame, f) @ node_values(frame, g)) / frame.n


def hyperinterpolate(frame: DiscreteFrame, f) -> CoefficientVector:
    """Coefficients of the discrete least-squares fit of degree <= L.

    On a design of strength >= 2L this is beta_j = (1/n) sum f(x_i) Y_j(x_i);
    a least_squares frame solves the overdetermined system instead."""
    vals = node_values(frame, f)
    if frame.least_squares:
        coef, *_ = np.linalg.lstsq(frame.matrix, vals, rcond=None)
    else:
        coef = frame.matrix.T @ vals / frame.n
    return CoefficientVector(frame.design.dim, frame.max_degree, coef)


def fitted_node_values(frame: DiscreteFrame, coeffs: CoefficientVector) -> np.ndarray:
    if coeffs.values.size != frame.dim_range:
        raise ConditionError("coefficient length does not match the frame")
    return frame.matrix @ coeffs.values


def residual_at_nodes(frame: DiscreteFrame, f) -> float:
    """Euclidean node residual || (fit - f)(x_i) ||_2 of the degree-L fit."""
    vals = node_values(frame, f)
    fit = fitted_node_values(frame, hyperinterpolate(frame, vals))
    return float(np.linalg.norm(fit - vals))


def l2_error(frame: DiscreteFrame, f, reference: CubatureRule) -> float:
    """L2(mu) distance between f and its degree-L fit, integrated by the
    reference rule (exact when the rule covers twice the relevant band)."""
    if reference.dim != frame.design.dim:
        raise ConditionError("reference rule lives on a different sphere")
    coeffs = hyperinterpolate(frame, f)
    if hasattr(f, "evaluate"):
        f_ref = np.asarray(f.evaluate(reference.points), dtype=float)
    elif callable(f):
        f_ref = np.asarray(f(reference.points.coords), dtype=float)
    else:
        raise ConditionError("l2_error needs f as a callable or coefficient "
                             "vector, not precomputed node values")
    fit_ref = coeffs.evaluate(reference.points)
    return float(np.sqrt(reference.weights @ (f_ref - fit_ref) ** 2))
