"""
Hyperinterpolation: discrete projection onto polynomials
========================================================

On a design of strength >= 2L the discrete inner product matches the
continuous one for degree-L polynomials, so the projector has an explicit
form with no linear solve: coefficients are plain weighted sums.
"""
import numpy as np

from spheredesign.approx import (DiscreteFrame, hyperinterpolate, l2_error,
                                 residual_at_nodes)
from spheredesign.designs import load_bundled, reference_rule
from spheredesign.harmonics import CoefficientVector, dim_poly_space, eval_basis


def main():
    des = load_bundled("sf020.00222")
    L = 10
    frame = DiscreteFrame(des, L)

    # the gram matrix of the basis over the nodes is exactly n * identity
    X = eval_basis(2, L, des.points)
    G = X.T @ X
    dev = np.abs(G - des.n * np.eye(dim_poly_space(2, L))).max()
    print(f"gram identity: max |X'X - nI| = {dev:.2e} over "
          f"{dim_poly_space(2, L)} basis functions")

    # any degree-L polynomial is reproduced to rounding
    rng = np.random.default_rng(0)
    f = CoefficientVector(2, L, rng.standard_normal(dim_poly_space(2, L)))
    print(f"band-limited input:  node residual {residual_at_nodes(frame, f):.2e}")

    # a function with energy past the band leaves a residual
    g = CoefficientVector(2, L + 4,
                          rng.standard_normal(dim_poly_space(2, L + 4)))
    ref = reference_rule(2, 2 * (L + 4))
    print(f"wider-band input:    node residual {residual_at_nodes(frame, g):.2e}, "
          f"l2 error {l2_error(frame, g, ref):.3f}")

    # with strength only 2L the cross terms alias: the fit's low-degree
    # coefficients are polluted by the tail of g
    coeffs = hyperinterpolate(frame, g)
    alias = np.abs(coeffs.values - g.values[:coeffs.values.size]).max()
    print(f"aliasing on a strength-{des.strength} design: {alias:.2e}")

    # a design strong enough for the cross terms removes it entirely
    big = DiscreteFrame(load_bundled("sf048.01408"), L)
    exact = hyperinterpolate(big, g)
    kept = np.abs(exact.values - g.values[:exact.values.size]).max()
    print(f"same fit on a strength-48 design: {kept:.2e} "
          "(true projection: low degrees untouched)")


if __name__ == "__main__":
    main()
