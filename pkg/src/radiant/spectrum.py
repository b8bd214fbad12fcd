"""Frequency spectrum, radiated energy and photon-number rates.

The deterministic path integrates the single-mode angular density over the
analytic emission window.  Working in ``s = sin(theta)`` the measure
``cos(theta)**2 dcos(theta)`` becomes ``s sqrt(1 - s**2) ds`` and the
density is

    d**2 Omega**4 / (4 pi**3) * s sqrt(1 - s**2) sqrt((s_plus - s)(s - s_minus))

so every window edge, whether a root or the equator ``s = 1``, carries a
square-root zero.  The cosine map ``s = a + (b - a)(1 - cos t)/2`` removes
both at once and leaves an analytic integrand in ``t``.

``mc_oracle`` is an independent check: uniform sampling of
``(cos(theta), phi)`` with the raw inequality deciding support.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np
from scipy import integrate

from . import kinematics as kin
from .kinematics import MirrorDrive, RegimeId
from .radiance import angular_power_mono_array

THREADS_ENV = "RADIANT_THREADS"


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-6
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    edge_substitution: bool = True

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")

    def accepts(self, value: float, error: float) -> bool:
        return error <= max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class McConfig:
    sample_count: int = 1_000_000
    seed: int = 0
    chunk: int = 1 << 16

    def __post_init__(self):
        if self.sample_count < 10_000:
            raise ValueError("sample_count must be at least 1e4")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.chunk <= 0 or self.chunk % 2:
            raise ValueError("chunk must be a positive even number")


@dataclass(frozen=True)
class SpectrumSample:
    Omega: float
    P: float
    regime: RegimeId
    error: float
    converged: bool = True


@dataclass(frozen=True)
class SpectrumCurve:
    drive: MirrorDrive
    samples: Tuple[SpectrumSample, ...]

    @property
    def Omega(self) -> np.ndarray:
        return np.array([s.Omega for s in self.samples])

    @property
    def P(self) -> np.ndarray:
        return np.array([s.P for s in self.samples])

    @property
    def errors(self) -> np.ndarray:
        return np.array([s.error for s in self.samples])

    @property
    def regimes(self) -> List[RegimeId]:
        return [s.regime for s in self.samples]

    @property
    def converged(self) -> bool:
        return all(s.converged for s in self.samples)

    def dimensionless(self) -> Tuple[np.ndarray, np.ndarray]:
        """``(Omega/omega0, P/(d**2 omega0**4))``."""
        w0, d = self.drive.omega0, self.drive.d
        return self.Omega / w0, self.P / (d**2 * w0**4)


@dataclass(frozen=True)
class EnergyReport:
    R_numeric: float
    R_closed: float
    N_numeric: float
    N_rate: float
    mean_frequency: float
    relative_mismatch: float
    error: float = 0.0
    converged: bool = True

    def as_dict(self) -> dict:
        return {
            "R_numeric": self.R_numeric,
            "R_closed": self.R_closed,
            "N_numeric": self.N_numeric,
            "N_rate": self.N_rate,
            "mean_frequency": self.mean_frequency,
            "relative_mismatch": self.relative_mismatch,
            "error": self.error,
            "converged": self.converged,
        }


def _quad(f, a, b, cfg: QuadratureConfig, points=None):
    """scipy ``quad`` returning ``(value, abserr, ok)`` without emitting warnings."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                             limit=cfg.max_subdivisions, points=points, full_output=1)
    value, err, info = out[0], out[1], out[2]
    ok = len(out) == 3
    return value, err, ok


class _Polar:
    """Inner integral over s = sin(theta) at one azimuth, in units of the prefactor."""

    def __init__(self, p: kin.ReducedPoint, cfg: QuadratureConfig):
        self.p = p
        self.cfg = cfg
        self.max_err = 0.0
        self.ok = True

    def __call__(self, phi: float) -> float:
        roots = kin.s_roots(self.p, phi)
        if roots is None:
            return 0.0
        sm, sp = roots
        a, b = max(sm, 0.0), min(sp, 1.0)
        if b <= a:
            return 0.0
        w = b - a
        if self.cfg.edge_substitution:
            def f(t):
                lo_part = w * math.sin(0.5 * t) ** 2
                hi_part = w * math.cos(0.5 * t) ** 2
                s = a + lo_part
                g = ((sp - b) + hi_part) * ((a - sm) + lo_part)
                one_minus = (1.0 - b) + hi_part
                return s * math.sqrt(one_minus * (1.0 + s)) * math.sqrt(g) * 0.5 * w * math.sin(t)
            val, err, ok = _quad(f, 0.0, math.pi, self.cfg)
        else:
            def f(s):
                g = max((sp - s) * (s - sm), 0.0)
                return s * math.sqrt(max(1.0 - s * s, 0.0)) * math.sqrt(g)
            val, err, ok = _quad(f, a, b, self.cfg)
        self.max_err = max(self.max_err, err)
        self.ok = self.ok and ok
        return val


def _window_integral(p: kin.ReducedPoint, cfg: QuadratureConfig) -> Tuple[float, float, bool]:
    win = kin.window(p)
    if win.empty:
        return 0.0, 0.0, True
    # split the budget so outer + inner estimates together still meet cfg
    outer_cfg = replace(cfg, rel_tol=0.5 * cfg.rel_tol, abs_tol=0.5 * cfg.abs_tol)
    inner = _Polar(p, replace(cfg, rel_tol=0.1 * cfg.rel_tol, abs_tol=0.1 * cfg.abs_tol))
    total, err, ok = 0.0, 0.0, True
    cuts = win.breakpoints()
    # fixed left-to-right order keeps the result bit-reproducible
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        v, e, o = _quad(inner, lo, hi, outer_cfg)
        total += v
        err += e
        ok = ok and o
    err += inner.max_err * win.phi_support
    return 2.0 * total, 2.0 * err, ok and inner.ok


def spectral_density(drive: MirrorDrive, Omega: float,
                     cfg: QuadratureConfig = QuadratureConfig()) -> Tuple[float, float]:
    """Photons per unit time, area and frequency at ``Omega``: ``(value, error estimate)``."""
    value, err, _ = _spectral_density(drive, Omega, cfg)
    return value, err


def _spectral_density(drive, Omega, cfg):
    if not Omega > 0:
        raise ValueError(f"Omega must be positive, got {Omega!r}")
    if Omega >= drive.omega0 or not drive.radiates:
        return 0.0, 0.0, True
    p = kin.reduce(drive, Omega)
    val, err, ok = _window_integral(p, cfg)
    if val == 0.0:
        return 0.0, 0.0, True
    pref = drive.d**2 * Omega**4 / (4.0 * math.pi**3)
    value, error = pref * val, pref * err
    return value, error, ok and cfg.accepts(value, error)


def _philox_uniform(seed: int, start: int, count: int) -> np.ndarray:
    """``count`` rows of two uniforms for samples ``start .. start+count-1``.

    Sample ``i`` always consumes 64-bit words ``2i`` and ``2i+1`` of the
    Philox stream keyed by ``seed``, so any chunking gives the same draws.
    """
    bitgen = np.random.Philox(key=seed)
    # one Philox counter step yields four 64-bit words, i.e. two samples
    bitgen.advance(start // 2)
    gen = np.random.Generator(bitgen)
    if start % 2:
        gen.random(2)
    return gen.random((count, 2))


def mc_oracle(drive: MirrorDrive, Omega: float, mc: McConfig = McConfig()) -> Tuple[float, float]:
    """Monte Carlo estimate of the spectral density and its standard error."""
    if not Omega > 0:
        raise ValueError(f"Omega must be positive, got {Omega!r}")
    if Omega > drive.omega0:
        return 0.0, 0.0
    n = mc.sample_count
    s1 = 0.0
    s2 = 0.0
    for start in range(0, n, mc.chunk):
        count = min(mc.chunk, n - start)
        u = _philox_uniform(mc.seed, start, count)
        mu = 1.0 - u[:, 0]  # (0, 1]
        phi = math.pi * (1.0 - 2.0 * u[:, 1])  # (-pi, pi]
        vals = 2.0 * math.pi * angular_power_mono_array(drive, Omega, mu, phi)
        s1 += float(np.sum(vals))
        s2 += float(np.sum(vals * vals))
    mean = s1 / n
    var = max(s2 / n - mean * mean, 0.0)
    return mean, math.sqrt(var / (n - 1))


def k0zero_reference(omega0: float, d: float, Omega: float, k0: float = 0.0) -> float:
    """Spectral density for a standing (k0 = 0) drive from the 1-D reduced integral.

    The window is the cap ``sin(theta) < r`` and the azimuth integrates out:

        P = d**2 Omega**4 / (2 pi**2) * int mu**2 sqrt(mu**2 - (1 - r**2)) dmu

    over ``mu`` in ``(max(0, sqrt(1 - r**2)), 1]``.
    """
    if k0 != 0:
        raise ValueError("k0zero_reference only applies to k0 = 0")
    if not Omega > 0:
        raise ValueError(f"Omega must be positive, got {Omega!r}")
    if Omega >= omega0:
        return 0.0
    r = (omega0 - Omega) / Omega
    b = 1.0 - r * r
    opts = dict(epsabs=0.0, epsrel=1e-13, limit=200)
    if b > 0:
        a = math.sqrt(b)
        # sqrt(mu - a) handled exactly by the algebraic weight
        val = integrate.quad(lambda m: m * m * math.sqrt(m + a), a, 1.0,
                             weight="alg", wvar=(0.5, 0.0), **opts)[0]
    else:
        val = integrate.quad(lambda m: m * m * math.sqrt(m * m - b), 0.0, 1.0, **opts)[0]
    return d**2 * Omega**4 / (2.0 * math.pi**2) * val


def sweep_grid(omega0: float, n_points: int) -> np.ndarray:
    """Uniform interior grid ``omega0 * i/(n+1)``, symmetric about ``omega0/2``."""
    if n_points < 3:
        raise ValueError("n_points must be at least 3")
    return omega0 * np.arange(1, n_points + 1) / (n_points + 1)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def spectrum_sweep(drive: MirrorDrive, n_points: int,
                   cfg: QuadratureConfig = QuadratureConfig(),
                   workers: Optional[int] = None) -> SpectrumCurve:
    grid = sweep_grid(drive.omega0, n_points)

    def one(Om):
        value, err, ok = _spectral_density(drive, float(Om), cfg)
        return SpectrumSample(float(Om), value, kin.classify(kin.reduce(drive, float(Om))), err, ok)

    workers = thread_count() if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(one, grid))
    else:
        samples = [one(Om) for Om in grid]
    return SpectrumCurve(drive, tuple(samples))


def closed_form_rate(drive: MirrorDrive) -> Tuple[float, float]:
    """Energy dissipation rate and photon-number rate per unit area."""
    if not drive.radiates:
        return 0.0, 0.0
    w0, k0, d = drive.omega0, drive.k0, drive.d
    core = (w0 * w0 - k0 * k0) ** 2.5
    return d * d * w0 / (720.0 * math.pi**2) * core, d * d / (360.0 * math.pi**2) * core


def energy_report(drive: MirrorDrive, cfg: QuadratureConfig = QuadratureConfig()) -> EnergyReport:
    """Integrate ``P`` and ``Omega P`` over ``(0, omega0)`` and compare with the closed forms.

    Frequencies are mapped by ``Omega = omega0 (1 - cos t)/2`` and the regime
    boundary crossings are passed as breakpoints.
    """
    R_closed, N_closed = closed_form_rate(drive)
    if not drive.radiates:
        return EnergyReport(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    w0 = drive.omega0
    half = 0.5 * w0
    flags = []

    def f(t):
        Om = half * (1.0 - math.cos(t))
        if Om <= 0.0 or Om >= w0:
            return np.zeros(2)
        P, _, ok = _spectral_density(drive, Om, cfg)
        flags.append(ok)
        jac = half * math.sin(t)
        return np.array([P * jac, Om * P * jac])

    cuts = [0.0] + [math.acos(1.0 - c / half) for c in kin.boundary_crossings(drive)] + [math.pi]
    N_num = R_num = err = 0.0
    ok = True
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            res = integrate.quad_vec(f, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                                     limit=cfg.max_subdivisions, full_output=True)
        val, e, info = res
        N_num += float(val[0])
        R_num += float(val[1])
        err += float(e)
        ok = ok and info.success
    mean = R_num / N_num if N_num > 0 else 0.0
    mismatch = abs(R_num - R_closed) / R_closed if R_closed > 0 else 0.0
    return EnergyReport(R_num, R_closed, N_num, N_closed, mean, mismatch, err, ok and all(flags))
