"""Emission kinematics for a plate driven by h(x, t) = d cos(k0 x1 - omega0 t).

A photon of frequency ``Omega`` emitted in direction (theta, phi) is allowed
when

    (omega0 - Omega)**2 > k0**2 + Omega**2 sin(theta)**2
                          - 2 k0 Omega sin(theta) cos(phi)

Writing ``s = sin(theta)`` and dividing by ``Omega**2`` this is the interior of
a circle of radius ``r = (omega0 - Omega)/Omega`` centred at ``(kappa, 0)``,
``kappa = k0/Omega``, in the (s cos phi, s sin phi) disc; on the unit sphere it
is the intersection with an offset cylinder.  Everything in the window
construction below follows from the two roots

    s_pm(phi) = kappa cos(phi) +- sqrt(r**2 - kappa**2 sin(phi)**2)

of the quadratic in ``s``.  The regime labels are descriptive only.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

HALF_PI = 0.5 * math.pi

# round-off absorbed when clamping arcsin/arccos arguments
CLAMP_TOL = 1e-12


class PerturbativeWarning(UserWarning):
    """The drive amplitude is not small compared with the drive wavelength."""


@dataclass(frozen=True)
class MirrorDrive:
    """Traveling-wave deformation ``d cos(k0 x1 - omega0 t)`` in units with c = 1."""

    omega0: float
    k0: float
    d: float = 1.0

    def __post_init__(self):
        for name in ("omega0", "k0", "d"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")
        if self.k0 < 0:
            raise ValueError(f"k0 must be non-negative, got {self.k0!r}")
        if self.d <= 0:
            raise ValueError(f"d must be positive, got {self.d!r}")
        if not self.perturbative:
            warnings.warn(
                f"d*omega0 = {self.d * self.omega0:.3g} is not small; "
                "second-order results are unreliable",
                PerturbativeWarning,
                stacklevel=3,
            )

    @property
    def perturbative(self) -> bool:
        return self.d * self.omega0 < 0.1

    @property
    def radiates(self) -> bool:
        """Phase velocity omega0/k0 exceeds the speed of light."""
        return self.omega0 > self.k0

    def reduce(self, Omega: float) -> Optional["ReducedPoint"]:
        return reduce(self, Omega)


@dataclass(frozen=True)
class ReducedPoint:
    """Dimensionless cylinder radius ``r`` and offset ``kappa``."""

    r: float
    kappa: float

    def __post_init__(self):
        if not (self.r >= 0 and self.kappa >= 0):
            raise ValueError(f"r and kappa must be non-negative, got {self.r!r}, {self.kappa!r}")


class RegimeId(str, enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R7 = "R7"
    NoEmission = "NoEmission"

    def __str__(self):
        return self.value


def reduce(drive: MirrorDrive, Omega: float) -> Optional[ReducedPoint]:
    """Map a detected frequency onto the (r, kappa) plane.

    Returns ``None`` (no emission) for ``Omega > omega0``; raises ``ValueError``
    for non-positive ``Omega``.
    """
    if not Omega > 0:
        raise ValueError(f"Omega must be positive, got {Omega!r}")
    if Omega > drive.omega0:
        return None
    return ReducedPoint((drive.omega0 - Omega) / Omega, drive.k0 / Omega)


def admissible(drive: MirrorDrive, Omega: float, theta, phi):
    """Raw emission inequality; vectorises over ``theta`` and ``phi``.

    This is deliberately a literal transcription with no geometry and is used
    as the reference against which every window construction is checked.
    """
    w0, k0 = drive.omega0, drive.k0
    s = np.sin(theta)
    lhs = (w0 - Omega) ** 2
    rhs = k0**2 + Omega**2 * s**2 - 2.0 * k0 * Omega * s * np.cos(phi)
    out = (lhs > rhs) & (Omega < w0)
    if np.ndim(out) == 0:
        return bool(out)
    return out


def classify(p: Optional[ReducedPoint]) -> RegimeId:
    """Regime label of a reduced point.

    Boundaries are closed and resolved by testing R5, R4, R3, R6, R2, R7, R1
    in that order.  ``r == 0`` (Omega == omega0) and ``None`` are NoEmission.
    """
    if p is None or p.r <= 0:
        return RegimeId.NoEmission
    r, k = p.r, p.kappa
    if k >= 1 and r <= k - 1:
        return RegimeId.R5
    if r >= k + 1:
        return RegimeId.R4
    if r >= 1 - k and k <= r <= k + 1:
        return RegimeId.R3
    if k >= 1 and k - 1 <= r <= k:
        return RegimeId.R6
    if k <= 1 and 1 - k <= r <= k:
        return RegimeId.R2
    if k <= 1 and k <= r <= 1 - k:
        return RegimeId.R7
    return RegimeId.R1


def s_roots(p: ReducedPoint, phi: float) -> Optional[Tuple[float, float]]:
    """Roots ``(s_minus, s_plus)`` in sin(theta), or ``None`` when the circle misses the ray."""
    D = p.r**2 - (p.kappa * math.sin(phi)) ** 2
    if D <= 0:
        return None
    root = math.sqrt(D)
    c = p.kappa * math.cos(phi)
    return c - root, c + root


def _asin(x: float) -> float:
    return math.asin(min(1.0, max(0.0, x)))


def theta_bounds(p: ReducedPoint, phi: float) -> Optional[Tuple[float, float]]:
    """Open polar interval ``(theta_lo, theta_hi)`` admitted at azimuth ``phi``."""
    roots = s_roots(p, phi)
    if roots is None:
        return None
    s_minus, s_plus = roots
    if s_plus <= 0 or s_minus >= 1:
        return None
    lo, hi = _asin(s_minus), _asin(s_plus)
    if hi <= lo:
        return None
    return lo, hi


def _clamped_acos(x: float) -> Optional[float]:
    if x > 1 + CLAMP_TOL or x < -1 - CLAMP_TOL:
        return None
    return math.acos(min(1.0, max(-1.0, x)))


def phi_critical(p: ReducedPoint) -> Optional[float]:
    """Azimuth where the cylinder wall meets the equator of the unit sphere."""
    if p.kappa <= 0:
        return None
    return _clamped_acos((1.0 - p.r**2 + p.kappa**2) / (2.0 * p.kappa))


def phi_max(p: ReducedPoint) -> Optional[float]:
    """Tangency azimuth ``arcsin(r/kappa)``; ``None`` when the circle encloses the origin."""
    if p.kappa <= 0 or p.r > p.kappa:
        return None
    return math.asin(min(1.0, p.r / p.kappa))


def theta_beam(p: ReducedPoint) -> Optional[float]:
    if p.kappa < 1:
        return math.asin(p.kappa)
    return None


@dataclass(frozen=True)
class AzimuthPiece:
    """Azimuth range ``[phi_lo, phi_hi]`` with polar bounds from the root formula.

    Within a piece the clamping pattern of the roots (at 0 and at 1) is fixed,
    so ``lo`` and ``hi`` are smooth functions of ``phi`` there.
    """

    point: ReducedPoint
    phi_lo: float
    phi_hi: float

    def bounds(self, phi: float) -> Optional[Tuple[float, float]]:
        return theta_bounds(self.point, phi)

    def lo(self, phi: float) -> float:
        b = self.bounds(phi)
        return b[0] if b else math.nan

    def hi(self, phi: float) -> float:
        b = self.bounds(phi)
        return b[1] if b else math.nan


@dataclass(frozen=True)
class AngularWindow:
    point: Optional[ReducedPoint]
    regime: RegimeId
    pieces: Tuple[AzimuthPiece, ...] = ()
    phi_c: Optional[float] = None
    phi_max: Optional[float] = None
    theta_beam: Optional[float] = None
    # upper edge of the azimuthal support on phi >= 0; support is |phi| <= phi_support
    phi_support: float = 0.0

    @property
    def empty(self) -> bool:
        return not self.pieces

    @property
    def full_hemisphere(self) -> bool:
        return self.regime is RegimeId.R4

    def breakpoints(self) -> List[float]:
        """Azimuths in ``[0, phi_support]`` where the bound formulas change, sorted."""
        if self.empty:
            return []
        pts = {0.0, self.phi_support}
        if self.phi_c is not None and 0.0 < self.phi_c < self.phi_support:
            pts.add(self.phi_c)
        if self.phi_support == math.pi:
            # s_plus collapses towards r - kappa across phi = pi/2 when r ~ kappa
            pts.add(HALF_PI)
        return sorted(pts)

    def contains(self, theta: float, phi: float) -> bool:
        """Membership of a direction; open at root edges, closed at theta = 0."""
        if self.empty:
            return False
        phi = math.remainder(phi, 2.0 * math.pi)
        if abs(phi) > self.phi_support:
            return False
        roots = s_roots(self.point, phi)
        b = theta_bounds(self.point, phi)
        if b is None:
            return False
        lo, hi = b
        above = theta > lo or (theta == 0.0 and roots[0] < 0)
        below = theta < hi or (theta == HALF_PI and roots[1] > 1)
        return above and below


def _support_edge(p: ReducedPoint) -> float:
    """Largest |phi| with a nonempty polar interval."""
    if p.r > p.kappa:
        return math.pi
    tangent = math.asin(min(1.0, p.r / p.kappa))
    # on [0, tangent] s_minus increases from kappa - r to sqrt(kappa^2 - r^2);
    # if it passes 1 first, the window closes where s_minus == 1
    if p.kappa**2 - p.r**2 > 1.0:
        return phi_critical(p)
    return tangent


def window(p: Optional[ReducedPoint]) -> AngularWindow:
    """Emission window of a reduced point as azimuth pieces sorted over ``[-pi, pi]``."""
    regime = classify(p)
    if regime in (RegimeId.R5, RegimeId.NoEmission):
        return AngularWindow(point=p, regime=regime)
    pc, pm, tb = phi_critical(p), phi_max(p), theta_beam(p)
    edge = _support_edge(p)
    if edge is None or edge <= 0:
        return AngularWindow(point=p, regime=RegimeId.NoEmission, phi_c=pc, phi_max=pm, theta_beam=tb)
    cuts = [0.0, edge]
    if pc is not None and 0.0 < pc < edge:
        cuts.insert(1, pc)
    pieces = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        pieces.append(AzimuthPiece(p, a, b))
    # mirror onto negative azimuths; merge the two halves straddling phi = 0
    neg = [AzimuthPiece(p, -q.phi_hi, -q.phi_lo) for q in reversed(pieces)]
    centre = AzimuthPiece(p, neg[-1].phi_lo, pieces[0].phi_hi)
    ordered = tuple(neg[:-1] + [centre] + pieces[1:])
    return AngularWindow(
        point=p,
        regime=regime,
        pieces=ordered,
        phi_c=pc,
        phi_max=pm,
        theta_beam=tb,
        phi_support=edge,
    )


@dataclass(frozen=True)
class RegimeTrajectory:
    """Regime sequence met by a drive as Omega sweeps ``(0, omega0)``."""

    drive: MirrorDrive
    segments: Tuple[Tuple[float, float, RegimeId], ...]
    polyline: Tuple[Tuple[float, float], ...] = field(default=(), repr=False)

    @property
    def regimes(self) -> List[RegimeId]:
        return [seg[2] for seg in self.segments]

    @property
    def crossings(self) -> List[float]:
        return [seg[1] for seg in self.segments[:-1]]


def boundary_crossings(drive: MirrorDrive) -> List[float]:
    """Frequencies in ``(0, omega0)`` where the path (kappa, r)(Omega) meets a regime boundary.

    Along the path r = omega0/Omega - 1 and kappa = k0/Omega, so every boundary
    line is linear in 1/Omega:

        r = kappa + 1  ->  Omega = (omega0 - k0)/2
        r = kappa      ->  Omega = omega0 - k0
        r = 1 - kappa  ->  Omega = (omega0 + k0)/2
        kappa = 1      ->  Omega = k0
        r = 1          ->  Omega = omega0/2   (k0 = 0 only)

    ``r = kappa - 1`` is only met when omega0 == k0.
    """
    w0, k0 = drive.omega0, drive.k0
    cands = [(w0 - k0) / 2, w0 - k0, (w0 + k0) / 2, k0]
    if k0 == 0:
        cands.append(w0 / 2)
    return sorted({c for c in cands if 0 < c < w0})


def trajectory(drive: MirrorDrive, resolution: int = 200) -> RegimeTrajectory:
    """Tile ``(0, omega0)`` into maximal intervals of constant regime.

    ``resolution`` sets the number of (kappa, r) vertices in the plotting
    polyline; the segment boundaries are exact.
    """
    w0 = drive.omega0
    if not drive.radiates:
        return RegimeTrajectory(drive, ((0.0, w0, RegimeId.NoEmission),))
    edges = [0.0] + boundary_crossings(drive) + [w0]
    segments = []
    for a, b in zip(edges[:-1], edges[1:]):
        regime = classify(reduce(drive, 0.5 * (a + b)))
        if segments and segments[-1][2] is regime:
            segments[-1] = (segments[-1][0], b, regime)
        else:
            segments.append((a, b, regime))
    # Omega from the far end of the plane (r large) down to omega0
    omegas = np.linspace(0.0, w0, resolution + 2)[1:-1]
    poly = tuple((drive.k0 / om, (w0 - om) / om) for om in omegas)
    return RegimeTrajectory(drive, tuple(segments), poly)
