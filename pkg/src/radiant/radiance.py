"""Pointwise radiated-photon densities.

``kernel_R`` is the response of the vacuum to one Fourier component
``(q, omega)`` of the deformation, evaluated for a photon of frequency
``Omega`` leaving in direction ``(theta, phi)``.  Contracting it with the
deformation spectrum gives the number of photons per unit time, per unit
plate area, per unit frequency and per unit ``dcos(theta) dphi``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import RegularGridInterpolator

from .kinematics import HALF_PI, MirrorDrive, admissible

TWO_PI_CUBED = (2.0 * math.pi) ** 3


@dataclass(frozen=True)
class EmissionQuery:
    Omega: float
    theta: float
    phi: float

    def __post_init__(self):
        if not self.Omega > 0:
            raise ValueError(f"Omega must be positive, got {self.Omega!r}")
        if not 0.0 <= self.theta <= 0.5 * math.pi:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta!r}")

    @property
    def k(self) -> Tuple[float, float]:
        """In-plane photon wavevector."""
        st = self.Omega * math.sin(self.theta)
        return st * math.cos(self.phi), st * math.sin(self.phi)


def _normal_sq(Omega: float, theta: float) -> float:
    """``Omega**2 - k**2`` as ``Omega**2 cos(theta)**2``; exactly zero at grazing."""
    if theta >= HALF_PI:
        return 0.0
    return (Omega * math.cos(theta)) ** 2


def kernel_R(query: EmissionQuery, q: Sequence[float], omega: float) -> float:
    Om = query.Omega
    dw = omega - Om
    if dw <= 0:
        return 0.0
    kx, ky = query.k
    arg = dw * dw - (q[0] - kx) ** 2 - (q[1] - ky) ** 2
    if arg <= 0:
        return 0.0
    normal = _normal_sq(Om, query.theta)
    return Om / (2.0 * math.pi**3) * normal * math.sqrt(arg)


def angular_power_mono(drive: MirrorDrive, query: EmissionQuery) -> float:
    """Photon density for a single traveling wave, zero outside the emission window."""
    Om, th, ph = query.Omega, query.theta, query.phi
    if not admissible(drive, Om, th, ph):
        return 0.0
    w0, k0 = drive.omega0, drive.k0
    s = math.sin(th)
    arg = (w0 - Om) ** 2 - (k0**2 + Om**2 * s**2 - 2.0 * k0 * Om * s * math.cos(ph))
    return drive.d**2 * Om / (4.0 * math.pi**3) * _normal_sq(Om, th) * math.sqrt(arg)


def angular_power_mono_array(drive: MirrorDrive, Omega: float, mu, phi) -> np.ndarray:
    """Vectorised ``angular_power_mono`` in terms of ``mu = cos(theta)``."""
    mu = np.asarray(mu, dtype=float)
    phi = np.asarray(phi, dtype=float)
    w0, k0, Om = drive.omega0, drive.k0, Omega
    s = np.sqrt(np.clip(1.0 - mu * mu, 0.0, None))
    arg = (w0 - Om) ** 2 - (k0**2 + Om**2 * s**2 - 2.0 * k0 * Om * s * np.cos(phi))
    inside = admissible(drive, Om, np.arcsin(s), phi)
    val = drive.d**2 * Om / (4.0 * math.pi**3) * (Om * mu) ** 2 * np.sqrt(np.where(inside, arg, 0.0))
    return np.where(inside, val, 0.0)


@dataclass(frozen=True)
class Mode:
    amplitude: float
    q: Tuple[float, float]
    omega: float


class DiscreteModes:
    """Superposition of traveling cosines ``d_i cos(q_i . x - omega_i t)``."""

    def __init__(self, modes: Sequence[Union[Mode, tuple]]):
        parsed = []
        for m in modes:
            if not isinstance(m, Mode):
                amp, q, om = m
                m = Mode(float(amp), (float(q[0]), float(q[1])), float(om))
            if m.amplitude <= 0 or m.omega <= 0:
                raise ValueError(f"mode needs positive amplitude and frequency: {m}")
            parsed.append(m)
        keys = [(m.q, m.omega) for m in parsed]
        if len(set(keys)) != len(keys):
            raise ValueError("modes with identical (q, omega) must be merged before use")
        self.modes = tuple(parsed)

    def __len__(self):
        return len(self.modes)

    @classmethod
    def from_drive(cls, drive: MirrorDrive) -> "DiscreteModes":
        return cls([Mode(drive.d, (drive.k0, 0.0), drive.omega0)])


class GridDegeneracyError(ValueError):
    pass


class TabulatedDensity:
    """Deformation spectral density on a rectilinear ``(q1, q2, omega)`` grid.

    The density is normalised so that one cosine mode of amplitude ``d``
    contributes ``d**2/2 * (2 pi)**3 * delta(q - q_i) delta(omega - omega_i)``.
    Values between nodes are trilinear; integrals use the trapezoidal rule.
    """

    def __init__(self, q1_axis, q2_axis, omega_axis, density):
        axes = []
        for name, ax in (("q1_axis", q1_axis), ("q2_axis", q2_axis), ("omega_axis", omega_axis)):
            ax = np.array(ax, dtype=float)
            if ax.ndim != 1 or ax.size < 2:
                raise GridDegeneracyError(f"{name} needs at least 2 points")
            if not np.all(np.diff(ax) > 0):
                raise ValueError(f"{name} must be strictly increasing")
            ax.setflags(write=False)
            axes.append(ax)
        density = np.array(density, dtype=float)
        shape = tuple(a.size for a in axes)
        if density.shape != shape:
            raise ValueError(f"density has shape {density.shape}, expected {shape}")
        if not np.all(np.isfinite(density)) or np.any(density < 0):
            raise ValueError("density values must be finite and non-negative")
        density.setflags(write=False)
        self.q1_axis, self.q2_axis, self.omega_axis = axes
        self.density = density
        self._interp = RegularGridInterpolator(tuple(axes), density, bounds_error=False, fill_value=0.0)

    def __call__(self, q1, q2, omega):
        pts = np.stack(np.broadcast_arrays(q1, q2, omega), axis=-1)
        return self._interp(pts)

    def to_dict(self) -> dict:
        return {
            "q1_axis": self.q1_axis.tolist(),
            "q2_axis": self.q2_axis.tolist(),
            "omega_axis": self.omega_axis.tolist(),
            "density": self.density.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TabulatedDensity":
        expected = {"q1_axis", "q2_axis", "omega_axis", "density"}
        missing = expected - set(data)
        if missing:
            raise ValueError(f"missing fields: {sorted(missing)}")
        unknown = set(data) - expected - {"units", "schema_version"}
        if unknown:
            raise ValueError(f"unknown fields: {sorted(unknown)}")
        return cls(data["q1_axis"], data["q2_axis"], data["omega_axis"], data["density"])

    @classmethod
    def load(cls, path) -> "TabulatedDensity":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()) + "\n", encoding="utf-8")


DeformationSpectrum = Union[DiscreteModes, TabulatedDensity]


def _kernel_grid(query: EmissionQuery, q1, q2, omega) -> np.ndarray:
    Om = query.Omega
    kx, ky = query.k
    Q1, Q2, W = np.meshgrid(q1, q2, omega, indexing="ij")
    dw = W - Om
    arg = dw * dw - (Q1 - kx) ** 2 - (Q2 - ky) ** 2
    ok = (dw > 0) & (arg > 0)
    normal = _normal_sq(Om, query.theta)
    return np.where(ok, Om / (2.0 * math.pi**3) * normal * np.sqrt(np.where(ok, arg, 0.0)), 0.0)


def angular_power_general(spec: DeformationSpectrum, query: EmissionQuery) -> float:
    if isinstance(spec, DiscreteModes):
        return float(sum(0.5 * m.amplitude**2 * kernel_R(query, m.q, m.omega) for m in spec.modes))
    if isinstance(spec, TabulatedDensity):
        f = _kernel_grid(query, spec.q1_axis, spec.q2_axis, spec.omega_axis) * spec.density
        f = trapezoid(f, spec.omega_axis, axis=2)
        f = trapezoid(f, spec.q2_axis, axis=1)
        return float(trapezoid(f, spec.q1_axis)) / TWO_PI_CUBED
    raise TypeError(f"unsupported deformation spectrum {type(spec).__name__}")


def gaussian_bump(mode: Mode, sigma_q: float, sigma_omega: float, points_per_sigma: int = 8,
                  extent: float = 6.0) -> TabulatedDensity:
    """Tabulated density of a Gaussian of total weight ``d**2/2 (2 pi)**3`` around one mode."""
    def axis(c, s):
        n = int(round(2 * extent * points_per_sigma)) + 1
        return np.linspace(c - extent * s, c + extent * s, n)

    q1 = axis(mode.q[0], sigma_q)
    q2 = axis(mode.q[1], sigma_q)
    om = axis(mode.omega, sigma_omega)
    Q1, Q2, W = np.meshgrid(q1, q2, om, indexing="ij")
    norm = (2 * math.pi) ** 1.5 * sigma_q**2 * sigma_omega
    g = np.exp(-0.5 * (((Q1 - mode.q[0]) ** 2 + (Q2 - mode.q[1]) ** 2) / sigma_q**2
                       + (W - mode.omega) ** 2 / sigma_omega**2)) / norm
    return TabulatedDensity(q1, q2, om, 0.5 * mode.amplitude**2 * TWO_PI_CUBED * g)
