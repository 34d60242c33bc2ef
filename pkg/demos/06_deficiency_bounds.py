"""
Distinguishability bounds between the two observation models
============================================================

For a family of candidate functions, the price of working in the wrong
model is controlled by 1 - 2 Phi(-sup/(2 scale)): sup is the worst
approximation distance across the family, scale the relevant noise level.
Band-limited families cost nothing; rough families cost more as the
radius grows.
"""
import numpy as np

from spheredesign.approx import DiscreteFrame
from spheredesign.designs import load_bundled
from spheredesign.experiments import gaussian_tv_bound
from spheredesign.harmonics import CoefficientVector, dim_poly_space
from spheredesign.lecam import (bound_from_l2_error,
                                bound_from_node_residuals, sobolev_family)
from spheredesign.spaces import make_sobolev_function

des = load_bundled("sf020.00222")
L, sigma = 9, 1.0
frame = DiscreteFrame(des, L)

# a family inside the band: both bounds vanish
rng = np.random.default_rng(3)
flat = [CoefficientVector(2, L, rng.standard_normal(dim_poly_space(2, L)))
        for _ in range(6)]
bn = bound_from_node_residuals(frame, flat, sigma)
print(f"band-limited family: sup distance {bn.sup_distance:.2e}, "
      f"bound {bn.bound:.2e}")

# the extremal member of a smoothness ball concentrates all its norm
# just past the band; the bound has a closed form there
for radius in (0.5, 1.0, 2.0, 4.0):
    worst = make_sobolev_function(2, 2.0, radius, L, seed=0,
                                  profile="extremal")
    b = bound_from_l2_error(frame, [worst], sigma)
    print(f"radius {radius:3.1f}: argument {b.argument:.4f}, "
          f"bound {b.bound:.4f}")

# a mixed family is only as bad as its worst member
fam = sobolev_family(2, 2.0, 2.0, L, family_size=8, seed=1)
b = bound_from_node_residuals(frame, fam, sigma)
print(f"\nsampled ball family ({len(fam)} members): "
      f"per-function range [{b.per_function.min():.2e}, "
      f"{b.per_function.max():.2e}], bound {b.bound:.4f}")

# the translation from distance to bound is the gaussian overlap formula
print(f"\ntv at distance 1, scale 0.5: {gaussian_tv_bound(1.0, 0.5):.6f} "
      f"= 1 - 2 Phi(-1)")
