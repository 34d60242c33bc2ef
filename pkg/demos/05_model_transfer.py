"""
Moving samples between the regression and sequence models
=========================================================

A regression sample y_i = f(x_i) + noise on a design can be repackaged as
a Gaussian sequence observation around the fitted coefficients (and back).
The head of the map is deterministic; fresh randomness fills the tail so
the output has exactly the covariance the target model prescribes.
"""
import numpy as np

from spheredesign.approx import DiscreteFrame
from spheredesign.designs import load_bundled
from spheredesign.experiments import (simulate_regression,
                                      simulate_white_noise, to_regression,
                                      to_white_noise)
from spheredesign.harmonics import CoefficientVector, dim_poly_space
from spheredesign.spaces import make_sobolev_function


def main():
    des = load_bundled("sf008.00045")
    L, sigma = 2, 0.5
    f = make_sobolev_function(2, 2.0, 1.0, 4, seed=2)

    sample = simulate_regression(f, des, sigma, seed=0)
    print(f"regression sample: {sample.values.size} node values, "
          f"sigma = {sigma}")

    obs = to_white_noise(sample, L, seed=0)
    print(f"sequence output:   {obs.y.size} coefficients, "
          f"noise scale {obs.noise_scale:.4f} = sigma/sqrt(n)")

    # the head is the discrete projection of the observed values: no
    # extra randomness enters below the band
    frame = DiscreteFrame(des, L)
    fit_of_sample = frame.matrix.T @ sample.values / des.n
    print(f"head vs manual projection of the same sample: "
          f"{np.abs(obs.y[:fit_of_sample.size] - fit_of_sample).max():.2e}")
    head = frame.matrix.T @ f.evaluate(des.points) / des.n

    # monte carlo check of the advertised first two moments
    reps = 2000
    ys = np.empty((reps, obs.y.size))
    for i in range(reps):
        s = simulate_regression(f, des, sigma, seed=100 + i)
        ys[i] = to_white_noise(s, L, seed=100 + i).y
    target = np.zeros(obs.y.size)
    target[:head.size] = head
    print(f"[{reps} reps] max mean deviation "
          f"{np.abs(ys.mean(axis=0) - target).max():.4f} "
          f"(scale/sqrt(reps) = {obs.noise_scale/np.sqrt(reps):.4f})")

    # and the reverse direction
    theta = CoefficientVector(2, L, head)
    wn = simulate_white_noise(theta, sigma, des.n, seed=1)
    back = to_regression(wn, des, L, seed=1)
    print(f"reverse direction: {back.values.size} node values around the "
          f"fitted function")


if __name__ == "__main__":
    main()
