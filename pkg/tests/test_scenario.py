"""Cloud geometry, presets, spectra extraction and the analytic route."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from eitlens import (
    AtomicCloud,
    CouplingBeam,
    LevelScheme,
    ProbeBeam,
    TransverseGrid,
    coupling_field,
    density,
    disk_average,
    preset,
    preset_names,
    run_image,
    run_spectrum,
    thin_cloud_transmission,
)
from eitlens.exceptions import UnknownPresetError
from eitlens.levels import GAMMA_E_D2 as GE
from eitlens.scenario import (
    SpectrumResult,
    background_level,
    scenario_from_dict,
    scenario_to_dict,
)


class TestDensity:
    def test_peak_value(self):
        cloud = AtomicCloud(n0=2e16, w_r=2.1e-3, w_z=1.1e-3)
        assert density(cloud, 0.0, 0.0) == 2e16

    def test_one_over_e_squared_radius(self):
        cloud = AtomicCloud(n0=2e16, w_r=2.1e-3, w_z=1.1e-3)
        assert density(cloud, 0.0, cloud.w_z) == pytest.approx(2e16 * np.exp(-2))
        assert density(cloud, cloud.w_r, 0.0) == pytest.approx(2e16 * np.exp(-2))

    def test_column_density_and_optical_depth(self, levels):
        # Quadrature oracle for the on-axis column density; closed form
        # n0 w_z sqrt(pi/2), giving OD ~ 2.4 for the fig3b cloud.
        cloud = AtomicCloud(n0=0.59e16, w_r=2.1e-3, w_z=1.1e-3)
        column, err = quad(lambda z: density(cloud, 0.0, z), -20e-3, 20e-3)
        assert err / column < 1e-10
        assert column == pytest.approx(
            cloud.n0 * cloud.w_z * math.sqrt(math.pi / 2.0), rel=1e-9
        )
        od = levels.sigma_0 * column
        assert od == pytest.approx(2.4, abs=0.05)

    def test_radially_uniform_flag(self):
        cloud = AtomicCloud(n0=2e16, w_r=2.1e-3, w_z=1.1e-3, radially_uniform=True)
        assert density(cloud, 5.0 * cloud.w_r, 0.0) == 2e16


class TestCouplingField:
    def test_focus_magnitude(self):
        beam = CouplingBeam(omega_c0=1.98 * GE, w_c=49e-6)
        assert abs(coupling_field(beam, 0.0, 0.0)) == pytest.approx(1.98 * GE)

    def test_waist_definition(self):
        beam = CouplingBeam(omega_c0=1.98 * GE, w_c=49e-6)
        assert abs(coupling_field(beam, beam.w_c, 0.0)) == pytest.approx(
            1.98 * GE * np.exp(-1.0)
        )

    def test_axial_falloff_at_rayleigh_length(self):
        beam = CouplingBeam(omega_c0=1.98 * GE, w_c=49e-6)
        assert abs(coupling_field(beam, 0.0, beam.rayleigh)) == pytest.approx(
            1.98 * GE / np.sqrt(2.0)
        )

    def test_magnitude_even_in_z(self):
        beam = CouplingBeam(omega_c0=1.0, w_c=40e-6)
        r = np.linspace(0, 100e-6, 7)
        up = np.abs(coupling_field(beam, r, +0.8 * beam.rayleigh))
        down = np.abs(coupling_field(beam, r, -0.8 * beam.rayleigh))
        assert np.abs(up - down).max() < 1e-12


class TestProbeBeam:
    def test_uniform_profile(self, small_grid):
        probe = ProbeBeam(omega_p0=0.16 * GE)
        values = probe.initial_values(small_grid)
        assert np.all(values == 0.16 * GE)

    def test_gaussian_profile(self, small_grid):
        probe = ProbeBeam(omega_p0=0.16 * GE, profile="gaussian", w_p=3.45e-3)
        values = probe.initial_values(small_grid)
        assert values[32, 32] == pytest.approx(0.16 * GE)
        assert np.all(np.abs(values) <= 0.16 * GE)


class TestPresets:
    def test_names(self):
        assert preset_names() == ("fig2", "fig3a", "fig3b", "fig3c", "fig4")

    def test_captioned_values(self):
        s3c = preset("fig3c")
        assert s3c.coupling.w_c == 34e-6
        assert s3c.coupling.omega_c0 == pytest.approx(3.18 * GE)
        assert s3c.cloud.n0 == 0.69e16
        s3a = preset("fig3a")
        assert s3a.delta_c == pytest.approx(0.16 * GE)
        assert s3a.cloud.w_z == 1.2e-3
        s4 = preset("fig4")
        assert s4.cloud.w_z == 55.0e-6
        assert s4.cloud.n0 == 3.30e16
        s2 = preset("fig2")
        assert s2.probe.omega_p0 == pytest.approx(0.16 * GE)
        assert s2.coupling.w_c == 49e-6

    def test_uncertainty_metadata_carried(self):
        s = preset("fig3b")
        assert s.metadata["uncertainties"]["omega_c0"] == 0.05

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError):
            preset("fig9")

    def test_window_guard(self):
        with pytest.raises(ValueError):
            preset("fig3b", window=200e-6)  # < 6 w_c


class TestSerialization:
    def test_round_trip(self):
        s = preset("fig3c", grid_points=64)
        data = scenario_to_dict(s)
        assert data["coupling"]["omega_c0_in_gamma_e"] == pytest.approx(3.18)
        back = scenario_from_dict(data)
        assert back == s or scenario_to_dict(back) == data

    def test_inconsistent_convenience_rejected(self):
        data = scenario_to_dict(preset("fig3b", grid_points=64))
        data["coupling"]["omega_c0_in_gamma_e"] = 5.0
        with pytest.raises(ValueError):
            scenario_from_dict(data)


class TestDiskAverage:
    def test_constant_field(self, small_grid):
        values = np.full((64, 64), 3.7)
        assert disk_average(values, small_grid, 30e-6) == pytest.approx(3.7)

    def test_quadratic_profile(self, small_grid):
        # <I> over a disk of radius R for I = 1 - (r/a)^2 is 1 - R^2/(2 a^2).
        a = 200e-6
        values = 1.0 - small_grid.r_squared / a**2
        radius = 40e-6
        expected = 1.0 - radius**2 / (2 * a**2)
        assert disk_average(values, small_grid, radius) == pytest.approx(
            expected, rel=1e-6
        )


class TestRunImage:
    def test_empty_cloud_gives_unity(self, levels):
        from dataclasses import replace

        s = preset("fig3b", grid_points=32, dz=200e-6)
        s = replace(s, cloud=AtomicCloud(n0=0.0, w_r=2.1e-3, w_z=1.1e-3))
        img = run_image(s, 0.0)
        assert np.abs(img.intensity - 1.0).max() < 1e-9

    def test_background_matches_coupling_free_absorption(self, levels):
        s = preset("fig3b", grid_points=128)
        dp = -0.28 * GE
        img = run_image(s, dp)
        bg = background_level(img)
        from eitlens import FieldPoint, chi_linear

        def absorption(z):
            n = density(s.cloud, 0.3 * s.grid.lx, z)
            return chi_linear(n, FieldPoint(0.0, 0.0, dp, 0.0), levels).imag

        integral, _ = quad(
            absorption, s.settings.z_start, s.settings.z_end, limit=200
        )
        expected = math.exp(-levels.k_probe * integral)
        assert bg == pytest.approx(expected, rel=0.02)


class TestRunSpectrum:
    def test_empty_cloud_all_unity(self):
        from dataclasses import replace

        s = preset("fig3b", grid_points=32, dz=200e-6)
        s = replace(s, cloud=AtomicCloud(n0=0.0, w_r=2.1e-3, w_z=1.1e-3))
        deltas = np.array([-1.0, 0.0, 1.0]) * GE
        spec = run_spectrum(s, deltas)
        assert np.abs(spec.transmission - 1.0).max() < 1e-9

    def test_sorted_detunings_required(self):
        s = preset("fig3b", grid_points=32)
        with pytest.raises(ValueError):
            run_spectrum(s, np.array([1.0, -1.0]) * GE)

    def test_parallel_matches_serial(self):
        s = preset("fig4", grid_points=64, table_points=48)
        deltas = np.array([-0.5, 0.0, 0.5]) * GE
        serial = run_spectrum(s, deltas, jobs=None)
        parallel = run_spectrum(s, deltas, jobs=2)
        assert np.array_equal(serial.transmission, parallel.transmission)

    def test_result_invariants(self):
        with pytest.raises(ValueError):
            SpectrumResult(
                delta_p=np.array([0.0, 0.0]),
                transmission=np.array([1.0, 1.0]),
                scenario="x",
                lensing=True,
            )


class TestThinCloud:
    def test_empty_cloud(self):
        from dataclasses import replace

        s = preset("fig4", grid_points=32)
        s = replace(s, cloud=AtomicCloud(n0=0.0, w_r=2.1e-3, w_z=55e-6))
        assert thin_cloud_transmission(s, 0.0, 0.0) == pytest.approx(1.0)

    def test_beer_lambert_limit(self, levels):
        from dataclasses import replace

        s = preset("fig4", grid_points=32)
        s = replace(s, coupling=CouplingBeam(omega_c0=0.0, w_c=49e-6))
        od = levels.sigma_0 * s.cloud.n0 * s.cloud.w_z * math.sqrt(math.pi / 2)
        assert thin_cloud_transmission(s, 0.0, 0.0) == pytest.approx(
            math.exp(-od), rel=1e-6
        )

    def test_autler_townes_doublet_and_passivity(self):
        s = preset("fig4", grid_points=32)
        dps = np.linspace(-2, 2, 81) * GE
        t = np.array([thin_cloud_transmission(s, 0.0, dp) for dp in dps])
        assert t.max() <= 1.0
        minima = dps[np.argsort(t)[:2]] / GE
        assert sorted(np.abs(minima)) == pytest.approx([0.99, 0.99], abs=0.1)
