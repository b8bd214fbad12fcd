import math

import numpy as np
import pytest
from scipy.optimize import brentq, minimize_scalar

from radiant import MirrorDrive, admissible

# omega0 = d = 1; classes I, II, III and the k0 = 0 limit
CANONICAL_K0 = (0.6, 0.4, 0.2, 0.0)


@pytest.fixture(params=CANONICAL_K0, ids=lambda k: f"k0={k}")
def canonical_drive(request):
    return MirrorDrive(1.0, request.param, 1.0)


def margin(drive, Omega, theta, phi):
    """Left minus right side of the emission inequality (positive inside)."""
    s = math.sin(theta)
    return (drive.omega0 - Omega) ** 2 - (
        drive.k0**2 + Omega**2 * s**2 - 2 * drive.k0 * Omega * s * math.cos(phi)
    )


def drive_for(r, kappa):
    """A drive and frequency (Omega = 1) reproducing the reduced point (r, kappa)."""
    return MirrorDrive(1.0 + r, kappa, 1e-3), 1.0


def scan_polar_interval(drive, Omega, phi, n=4001):
    """Admissible polar interval at one azimuth by dense scan + bisection of the raw inequality.

    Returns None when no grid point (or margin maximum) is admissible.
    """
    thetas = np.linspace(0.0, 0.5 * math.pi, n)
    inside = admissible(drive, Omega, thetas, phi)
    if not inside.any():
        best = minimize_scalar(lambda t: -margin(drive, Omega, t, phi),
                               bounds=(0.0, 0.5 * math.pi), method="bounded",
                               options={"xatol": 1e-13})
        if margin(drive, Omega, best.x, phi) <= 0:
            return None
        centre = best.x
    else:
        centre = thetas[np.argmax([margin(drive, Omega, t, phi) for t in thetas])]
    f = lambda t: margin(drive, Omega, t, phi)
    lo = 0.0 if f(0.0) > 0 else brentq(f, 0.0, centre, xtol=1e-15)
    hi = 0.5 * math.pi if f(0.5 * math.pi) > 0 else brentq(f, centre, 0.5 * math.pi, xtol=1e-15)
    return lo, hi


def has_emission_at(drive, Omega, phi):
    best = minimize_scalar(lambda t: -margin(drive, Omega, t, phi),
                           bounds=(0.0, 0.5 * math.pi), method="bounded",
                           options={"xatol": 1e-13})
    return max(-best.fun, margin(drive, Omega, 0.0, phi), margin(drive, Omega, 0.5 * math.pi, phi)) > 0


def scan_azimuth_edge(drive, Omega, hi=math.pi):
    """Largest |phi| with any admissible direction, found by bisection on the raw inequality."""
    if has_emission_at(drive, Omega, hi):
        return hi
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if has_emission_at(drive, Omega, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
