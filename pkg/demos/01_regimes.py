"""
Where does a rippling plate radiate?
====================================

A plate deformed as d cos(k0 x - w0 t) can only emit a photon of frequency
Omega into directions where momentum and energy both fit.  Two numbers decide
the shape of that set: r = (w0 - Omega)/Omega and kappa = k0/Omega.
"""
import math

from radiant import MirrorDrive, classify, reduce, trajectory, window

drive = MirrorDrive(omega0=1.0, k0=0.6, d=1e-3)

# walk down the spectrum and watch the window change shape
for Omega in (0.1, 0.3, 0.5, 0.7, 0.9):
    p = reduce(drive, Omega)
    win = window(p)
    print(f"Omega={Omega:.1f}  r={p.r:.3f} kappa={p.kappa:.3f}  {classify(p)}  "
          f"azimuths up to {math.degrees(win.phi_support):6.1f} deg")

# the same walk, with exact regime boundaries
t = trajectory(drive)
for lo, hi, regime in t.segments:
    print(f"  ({lo:.2f}, {hi:.2f}) -> {regime}")

# slow waves (phase velocity below c) never radiate
print(trajectory(MirrorDrive(0.5, 1.0, 1e-3)).regimes)
