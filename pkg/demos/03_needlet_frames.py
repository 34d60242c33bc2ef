"""
Needlet frames: localized band-pass analysis on the sphere
==========================================================

Each level j covers degrees (2^(j-1), 2^(j+1)); the filter pair satisfies
a quadratic partition of unity so analysis followed by synthesis is the
identity on band-limited functions.
"""
import numpy as np

from spheredesign.designs import reference_rule
from spheredesign.harmonics import CoefficientVector, dim_poly_space
from spheredesign.needlets import (filter_h, needlet_coeffs, needlet_eval,
                                   needlet_reconstruct, standard_system,
                                   window_low_pass)

# filter identities on a dense grid
x = np.linspace(0.5, 1.0, 2001)
print("quadratic identity   max dev",
      f"{np.abs(filter_h(x)**2 + filter_h(2*x)**2 - 1).max():.2e}")
xx = np.linspace(0.0, 2.5, 2001)
print("telescoping identity max dev",
      f"{np.abs(window_low_pass(xx) - window_low_pass(2*xx) - filter_h(xx)**2).max():.2e}")

system = standard_system(2, 4)
for j in range(5):
    print(f"level {j}: {system.level_size(j):4d} cubature nodes")

# decompose a random band-limited function and put it back together
rng = np.random.default_rng(4)
f = CoefficientVector(2, 7, rng.standard_normal(dim_poly_space(2, 7)))
coeffs = needlet_coeffs(f, system)
print("per-level coefficient l2 norms:",
      "  ".join(f"{v:.3f}" for v in coeffs.level_norms(2.0)))

rule = reference_rule(2, 32)
back = needlet_reconstruct(coeffs, system, rule.points)
print(f"reconstruction error "
      f"{np.abs(back - f.evaluate(rule.points)).max():.2e}")

# needlets two levels apart are orthogonal; neighbours are not
a = needlet_eval(system, 1, 0, rule.points)
b = needlet_eval(system, 3, 5, rule.points)
c = needlet_eval(system, 2, 3, rule.points)
print(f"<level 1, level 3> = {rule.weights @ (a*b):.2e}  (two apart: zero)")
print(f"<level 2, level 3> = {rule.weights @ (c*b):.2e}  (adjacent: overlaps)")
