"""
The beam near Omega -> w0
=========================

Close to the drive frequency the window shrinks to a small patch around
theta = arcsin(k0/Omega).  Print its polar bounds on a few azimuths.
"""
import math

import numpy as np

from radiant import MirrorDrive, reduce, theta_bounds, window

drive = MirrorDrive(1.0, 0.2, 1e-3)
for Omega in (0.9, 0.99, 0.999):
    p = reduce(drive, Omega)
    win = window(p)
    print(f"\nOmega={Omega}: centre {win.theta_beam:.5f} rad, half-width in phi {win.phi_support:.5f}")
    for phi in np.linspace(0, win.phi_support, 4)[:-1]:
        lo, hi = theta_bounds(p, float(phi))
        print(f"  phi={phi:.4f}  theta in ({lo:.5f}, {hi:.5f})")

print(f"\nlimit arcsin(k0/w0) = {math.asin(0.2):.5f}")
