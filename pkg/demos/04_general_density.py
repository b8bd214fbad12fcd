"""
Beyond a single traveling wave
==============================

Any deformation with a known spectrum radiates the sum of its parts.  A
narrow Gaussian around one mode should look like that mode.
"""
from radiant import DiscreteModes, EmissionQuery, Mode, angular_power_general
from radiant.radiance import gaussian_bump

mode = Mode(1e-3, (0.2, 0.0), 1.0)
q = EmissionQuery(Omega=0.5, theta=0.1, phi=0.3)
sharp = angular_power_general(DiscreteModes([mode]), q)
for sigma in (0.04, 0.02, 0.01):
    blurred = angular_power_general(gaussian_bump(mode, sigma, sigma, points_per_sigma=4), q)
    print(f"sigma={sigma}: {blurred:.6e}  (single mode {sharp:.6e})")

# two crossed waves add incoherently
both = DiscreteModes([mode, Mode(1e-3, (0.0, 0.2), 1.0)])
print(f"two modes: {angular_power_general(both, q):.6e}")
