"""
Sobolev and Besov balls through coefficient decay
=================================================

Smoothness is encoded spectrally: a Sobolev norm weights degree-l energy
by (1 + l(l+d-1))^s, a Besov norm takes an l_q sum over dyadic blocks.
Random members of a ball are drawn by sampling coefficients and rescaling.
"""
import numpy as np

from spheredesign.spaces import (besov_norm_from_harmonic,
                                 make_besov_function, make_sobolev_function,
                                 sobolev_norm)

s, radius = 2.0, 3.0

f = make_sobolev_function(2, s, radius, max_degree=16, seed=7)
print(f"random member: sobolev norm {sobolev_norm(f, s):.6f} "
      f"(radius {radius})")

# the energy per degree falls off once the weight bites
energies = f.degree_energies()
for l in (0, 2, 4, 8, 16):
    print(f"  degree {l:2d}: energy {energies[l]:.3e}")

# the extremal profile piles all mass on the top degree; it is the
# worst case for any fixed-band approximation scheme
g = make_sobolev_function(2, s, radius, max_degree=16, seed=0,
                          profile="extremal")
eg = g.degree_energies()
print(f"extremal member: norm {sobolev_norm(g, s):.6f}, "
      f"energy below top degree {eg[:-1].sum():.1e}, top {eg[-1]:.3e}")

h = make_besov_function(2, s, 2.0, radius, max_degree=16, seed=7)
print(f"\nbesov member (r=q=2): norm "
      f"{besov_norm_from_harmonic(h, s, 2.0):.6f}")

# smoother balls force faster decay: compare s = 1.5 and s = 3 tails
for s_cmp in (1.5, 3.0):
    u = make_sobolev_function(2, s_cmp, radius, max_degree=16, seed=7)
    tail = u.degree_energies()[12:].sum()
    print(f"s = {s_cmp}: energy above degree 11 = {tail:.2e}")
