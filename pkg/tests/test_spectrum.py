import math

import numpy as np
import pytest

from radiant import MirrorDrive, RegimeId, trajectory
from radiant.spectrum import (
    McConfig,
    QuadratureConfig,
    _spectral_density,
    energy_report,
    k0zero_reference,
    mc_oracle,
    spectral_density,
    spectrum_sweep,
    sweep_grid,
)

# mc_oracle(MirrorDrive(1, 0.2, 1), 0.5, McConfig(10**7, seed=20240601)),
# computed before the quadrature path existed
MC_GOLDEN = 6.472585879429575e-4
MC_GOLDEN_SE = 2.7183825218991616e-7


def closed_form_cap(omega0, d, Omega):
    """k0 = 0 density from the antiderivative of mu^2 sqrt(mu^2 - b)."""
    r = (omega0 - Omega) / Omega
    b = 1 - r * r

    def F(m):
        root = math.sqrt(m * m - b)
        log_term = b * b / 8 * math.log(m + root) if b else 0.0
        return m * (2 * m * m - b) * root / 8 - log_term

    lo = math.sqrt(b) if b > 0 else 0.0
    return d * d * Omega**4 / (2 * math.pi**2) * (F(1.0) - F(lo))


class TestConfigs:
    def test_quadrature_validation(self):
        with pytest.raises(ValueError):
            QuadratureConfig(rel_tol=0)
        with pytest.raises(ValueError):
            QuadratureConfig(max_subdivisions=5)

    def test_mc_validation(self):
        with pytest.raises(ValueError):
            McConfig(sample_count=100)
        with pytest.raises(ValueError):
            McConfig(seed=-1)
        with pytest.raises(ValueError):
            McConfig(chunk=3)


class TestSpectralDensity:
    def test_above_drive_frequency(self):
        assert spectral_density(MirrorDrive(1, 0.6, 1), 1.1) == (0.0, 0.0)

    def test_forbidden_regime(self):
        assert spectral_density(MirrorDrive(0.5, 1, 1), 0.25) == (0.0, 0.0)

    def test_endpoint(self):
        assert spectral_density(MirrorDrive(1, 0.3, 1), 1.0) == (0.0, 0.0)

    def test_domain(self):
        with pytest.raises(ValueError):
            spectral_density(MirrorDrive(1, 0.3, 1), 0.0)

    def test_monte_carlo_golden(self):
        val, err = spectral_density(MirrorDrive(1, 0.2, 1), 0.5)
        assert abs(val - MC_GOLDEN) <= 3 * MC_GOLDEN_SE
        assert 0 <= err <= 1e-6 * val

    @pytest.mark.parametrize("Omega", [0.1, 0.25, 0.5, 0.6, 0.75, 0.95])
    def test_k0_zero_matches_reference(self, Omega):
        val, _ = spectral_density(MirrorDrive(1, 0.0, 1), Omega)
        assert val == pytest.approx(k0zero_reference(1, 1, Omega), rel=1e-9)

    def test_without_edge_substitution(self):
        drive = MirrorDrive(1, 0.6, 1)
        plain = QuadratureConfig(edge_substitution=False, rel_tol=1e-8)
        for Om in (0.3, 0.5, 0.7, 0.9):
            a, _ = spectral_density(drive, Om)
            b, _ = spectral_density(drive, Om, plain)
            assert a == pytest.approx(b, rel=1e-6)

    def test_tolerance_failure_is_reported(self):
        cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-30, max_subdivisions=10,
                               edge_substitution=False)
        value, err, ok = _spectral_density(MirrorDrive(1, 0.6, 1), 0.45, cfg)
        assert value > 0 and err > 0 and not ok

    def test_amplitude_scaling(self):
        a, _ = spectral_density(MirrorDrive(1, 0.4, 0.01), 0.37)
        b, _ = spectral_density(MirrorDrive(1, 0.4, 0.02), 0.37)
        assert b / a == pytest.approx(4.0, rel=1e-12)

    def test_frequency_scaling(self):
        # P / (d^2 omega0^4) depends only on Omega/omega0 and k0/omega0
        a, _ = spectral_density(MirrorDrive(1.0, 0.4, 1e-3), 0.37)
        b, _ = spectral_density(MirrorDrive(2.0, 0.8, 1e-3), 0.74)
        assert b / a == pytest.approx(16.0, rel=1e-8)


class TestMonteCarlo:
    def test_no_emission(self):
        assert mc_oracle(MirrorDrive(1, 0.2, 1), 1.3, McConfig(10**4)) == (0.0, 0.0)

    def test_k0_zero_reference(self):
        est, se = mc_oracle(MirrorDrive(1, 0.0, 1), 0.5, McConfig(10**6, seed=1))
        assert abs(est - k0zero_reference(1, 1, 0.5)) <= 3 * se

    def test_deterministic(self):
        a = mc_oracle(MirrorDrive(1, 0.4, 1), 0.6, McConfig(10**5, seed=42))
        b = mc_oracle(MirrorDrive(1, 0.4, 1), 0.6, McConfig(10**5, seed=42))
        assert a == b

    def test_chunking_does_not_change_draws(self):
        # per-sample streams: only the summation grouping changes
        a = mc_oracle(MirrorDrive(1, 0.4, 1), 0.6, McConfig(10**5, seed=42, chunk=1 << 16))
        b = mc_oracle(MirrorDrive(1, 0.4, 1), 0.6, McConfig(10**5, seed=42, chunk=1000))
        assert a[0] == pytest.approx(b[0], rel=1e-12)

    def test_seed_matters(self):
        a = mc_oracle(MirrorDrive(1, 0.4, 1), 0.6, McConfig(10**5, seed=1))
        b = mc_oracle(MirrorDrive(1, 0.4, 1), 0.6, McConfig(10**5, seed=2))
        assert a != b


class TestK0ZeroReference:
    @pytest.mark.parametrize("Omega", [0.05, 0.3, 0.5, 0.5001, 0.7, 0.99])
    def test_against_antiderivative(self, Omega):
        assert k0zero_reference(1, 1, Omega) == pytest.approx(closed_form_cap(1, 1, Omega), rel=1e-10)

    def test_endpoint(self):
        assert k0zero_reference(1, 1, 1.0) == 0.0

    def test_low_frequency_slope(self):
        om = np.geomspace(1e-4, 1e-2, 7)
        vals = [k0zero_reference(2.0, 1, o) for o in om]
        slope = np.polyfit(np.log(om), np.log(vals), 1)[0]
        assert slope == pytest.approx(3.0, abs=1e-3)
        # leading coefficient omega0 Omega^3 / (6 pi^2)
        assert vals[0] / (2.0 * om[0] ** 3 / (6 * math.pi**2)) == pytest.approx(1.0, rel=1e-3)

    def test_domain(self):
        with pytest.raises(ValueError):
            k0zero_reference(1, 1, 0.5, k0=0.1)


class TestSweep:
    def test_grid(self):
        g = sweep_grid(1.0, 101)
        assert g[50] == 0.5
        assert np.allclose(g + g[::-1], 1.0, rtol=0, atol=1e-15)
        with pytest.raises(ValueError):
            sweep_grid(1.0, 2)

    def test_peak_at_half(self):
        c = spectrum_sweep(MirrorDrive(1, 0.2, 1), 101)
        assert c.Omega[np.argmax(c.P)] == 0.5
        assert c.converged

    def test_peak_sharpens(self):
        peaks = [spectrum_sweep(MirrorDrive(1, k, 1), 11).P.max() for k in (0.6, 0.4, 0.2, 0.0)]
        assert all(a < b for a, b in zip(peaks, peaks[1:]))

    def test_no_radiation(self):
        c = spectrum_sweep(MirrorDrive(0.5, 1, 1), 11)
        assert all(s.P == 0.0 for s in c.samples)
        assert set(c.regimes) <= {RegimeId.R5, RegimeId.NoEmission}

    def test_dimensionless(self):
        c = spectrum_sweep(MirrorDrive(2.0, 0.4, 0.01), 5)
        x, y = c.dimensionless()
        assert x == pytest.approx(c.Omega / 2.0)
        assert y == pytest.approx(c.P / (1e-4 * 16.0))

    def test_regime_labels(self):
        c = spectrum_sweep(MirrorDrive(1, 0.6, 1), 9)
        assert c.regimes[0] is RegimeId.R4 and c.regimes[-1] is RegimeId.R1

    def test_threads_bit_identical(self, monkeypatch):
        drive = MirrorDrive(1, 0.4, 1)
        serial = spectrum_sweep(drive, 15, workers=1)
        monkeypatch.setenv("RADIANT_THREADS", "4")
        parallel = spectrum_sweep(drive, 15)
        assert serial == parallel

    def test_symmetry_and_endpoints(self, canonical_drive):
        c = spectrum_sweep(canonical_drive, 41)
        P = c.P
        assert np.max(np.abs(P - P[::-1])) <= 1e-3 * P.max()
        assert np.all(P >= 0) and np.all(c.errors >= 0)
        # monotone decay over the outermost five grid points each side
        assert np.all(np.diff(P[:5]) > 0)
        assert np.all(np.diff(P[-5:]) < 0)

    def test_continuity_at_crossings(self):
        drive = MirrorDrive(1, 0.6, 1)
        peak = spectral_density(drive, 0.5)[0]
        for Om in trajectory(drive).crossings:
            lo = spectral_density(drive, Om - 1e-3)[0]
            hi = spectral_density(drive, Om + 1e-3)[0]
            assert abs(hi - lo) <= 1e-2 * peak


class TestEnergy:
    def test_closed_forms(self):
        rep = energy_report(MirrorDrive(1, 0.0, 1))
        assert rep.R_closed == pytest.approx(1.4072386616991359e-4, rel=1e-14)
        assert rep.N_rate == pytest.approx(2.8144773233982717e-4, rel=1e-14)
        assert rep.R_closed == pytest.approx(1 / (720 * math.pi**2), rel=1e-15)
        rep = energy_report(MirrorDrive(1, 0.6, 1))
        assert rep.R_closed == pytest.approx(0.64**2.5 / (720 * math.pi**2), rel=1e-15)
        assert rep.R_closed == pytest.approx(4.611e-5, rel=1e-4)

    def test_no_radiation(self):
        rep = energy_report(MirrorDrive(0.5, 1, 1))
        assert all(v == 0 for v in (rep.R_numeric, rep.R_closed, rep.N_numeric, rep.N_rate,
                                    rep.mean_frequency, rep.relative_mismatch))

    def test_conservation_and_mean(self, canonical_drive):
        rep = energy_report(canonical_drive)
        assert rep.relative_mismatch <= 5e-3
        assert abs(rep.mean_frequency - 0.5) <= 1e-3
        assert abs(rep.R_numeric - 0.5 * rep.N_numeric) <= rep.error + 1e-12 * rep.R_numeric
        assert rep.converged

    def test_scaling_with_omega0(self):
        rep = energy_report(MirrorDrive(2.0, 0.5, 1e-3))
        assert rep.relative_mismatch <= 5e-3
        assert rep.mean_frequency == pytest.approx(1.0, abs=2e-3)
