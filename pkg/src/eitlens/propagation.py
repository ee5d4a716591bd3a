"""Symmetric split-step propagation of the steady-state paraxial equation.

The probe envelope obeys  d(Omega_p)/dz = (i/2k) Lap_perp Omega_p
+ i eta rho_eg(Omega_p),  with eta = n_at sigma_0 gamma_e / 2.  Each dz
step applies half a spectral diffraction step, a pointwise medium step
(2nd-order midpoint, with the steady-state coherence re-evaluated at
midfield), the second diffraction half, and a super-Gaussian edge
absorber that removes light deflected toward the periodic window
boundary.  Switching ``lensing`` off drops the transverse (diffraction)
term entirely while leaving the medium response untouched.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NonFiniteFieldError
from .grid import ComplexField2D

_ABSORBER_FLOOR = 1e-10  # mask value reached exactly at the window edge


@dataclass(frozen=True)
class PropagationSettings:
    """Discretization and mode switches for :func:`propagate`.

    ``absorber_width`` is in meters; ``None`` selects 10% of the
    smaller window extent and ``0`` disables the absorber.  When
    ``lensing`` is false all diffraction steps are skipped.
    """

    dz: float
    z_start: float
    z_end: float
    lensing: bool = True
    absorber_order: int = 8
    absorber_width: float | None = None
    medium_substeps: int = 1

    def __post_init__(self):
        if self.dz <= 0:
            raise ValueError("dz must be positive")
        if self.z_end <= self.z_start:
            raise ValueError("z_end must exceed z_start")
        if self.medium_substeps < 1:
            raise ValueError("medium_substeps must be >= 1")
        if self.absorber_order < 1:
            raise ValueError("absorber_order must be >= 1")
        if self.absorber_width is not None and self.absorber_width < 0:
            raise ValueError("absorber_width must be nonnegative")


def rayleigh_length(waist, wavelength):
    """pi w^2 / lambda for a Gaussian beam of waist w."""
    return np.pi * waist**2 / wavelength


def _axis_mask(coords, extent, width, order):
    edge = 0.5 * extent - np.abs(coords)
    u = np.clip(1.0 - edge / width, 0.0, 1.0)
    return np.exp(np.log(_ABSORBER_FLOOR) * u**order)


def absorber_mask(grid, order, width):
    """Separable super-Gaussian mask: exactly 1 interior, ~0 at the edge."""
    if width >= 0.5 * min(grid.lx, grid.ly):
        raise ValueError("absorber width must be below half the window")
    mx = _axis_mask(grid.x, grid.lx, width, order)
    my = _axis_mask(grid.y, grid.ly, width, order)
    return mx[:, None] * my[None, :]


def apply_absorber(field, order, width):
    """Attenuate the field inside the edge band of the window."""
    if width == 0:
        return field.copy()
    mask = absorber_mask(field.grid, order, width)
    return ComplexField2D(field.grid, field.values * mask, field.z)


def diffraction_kernel(grid, wavelength, dz):
    """Spectral one-step propagator exp(-i (lambda/4pi) |k_perp|^2 dz)."""
    return np.exp(-1j * (wavelength / (4.0 * np.pi)) * grid.k_perp_squared * dz)


def diffraction_step(field, dz, wavelength):
    """Advance the envelope by dz of free-space paraxial diffraction."""
    kernel = diffraction_kernel(field.grid, wavelength, dz)
    values = np.fft.ifft2(np.fft.fft2(field.values) * kernel)
    return ComplexField2D(field.grid, values, field.z + dz)


def _integrate_medium(values, medium, z, dz, substeps):
    """Explicit-midpoint integration of d(Omega_p)/dz = i eta rho_eg."""
    h = dz / substeps
    v = values
    for _ in range(substeps):
        k1 = medium.source(v, z)
        vmid = v + (0.5 * h) * k1
        v = v + h * medium.source(vmid, z + 0.5 * h)
        z += h
    return v


def medium_step(field, medium, dz, substeps=1):
    """Integrate the local medium response over [field.z, field.z + dz].

    The coherence is re-evaluated at the midpoint field and midpoint z
    per substep (2nd order).  Raises the provider's range error when a
    field magnitude exceeds a lookup table.
    """
    values = _integrate_medium(field.values, medium, field.z, dz, substeps)
    return ComplexField2D(field.grid, values, field.z + dz)


def _step_sizes(z_start, z_end, dz):
    span = z_end - z_start
    n_full = int(span / dz + 1e-9)
    remainder = span - n_full * dz
    steps = [dz] * n_full
    if remainder > 1e-9 * dz:
        steps.append(remainder)
    return steps


def propagate(field, medium, settings, *, wavelength=None, step_callback=None):
    """Run the split-step scheme from ``settings.z_start`` to ``z_end``.

    Parameters
    ----------
    field : ComplexField2D
        Input envelope at ``settings.z_start``.
    medium : provider or None
        Object with ``source(values, z) -> d(values)/dz``; ``None``
        means free space.
    settings : PropagationSettings
    wavelength : float, optional
        Probe wavelength for the diffraction kernel; defaults to the
        medium's level scheme.
    step_callback : callable, optional
        Called as ``step_callback(z, values)`` after every step.
    """
    if abs(field.z - settings.z_start) > 1e-12 * max(abs(settings.z_start), 1e-9):
        raise ValueError("input field is not at settings.z_start")
    if wavelength is None:
        if medium is None:
            raise ValueError("wavelength required for free-space propagation")
        wavelength = medium.wavelength

    grid = field.grid
    width = settings.absorber_width
    if width is None:
        width = 0.1 * min(grid.lx, grid.ly)
    mask = absorber_mask(grid, settings.absorber_order, width) if width > 0 else None

    kernels = {}
    v = field.values.copy()
    z = settings.z_start
    for h in _step_sizes(settings.z_start, settings.z_end, settings.dz):
        if settings.lensing:
            if h not in kernels:
                kernels[h] = diffraction_kernel(grid, wavelength, 0.5 * h)
            half = kernels[h]
            v = np.fft.ifft2(np.fft.fft2(v) * half)
            if medium is not None:
                v = _integrate_medium(v, medium, z, h, settings.medium_substeps)
            v = np.fft.ifft2(np.fft.fft2(v) * half)
        elif medium is not None:
            v = _integrate_medium(v, medium, z, h, settings.medium_substeps)
        if mask is not None:
            v *= mask
        z += h
        if not np.all(np.isfinite(v)):
            raise NonFiniteFieldError(f"field became non-finite at z={z:.6g} m")
        if step_callback is not None:
            step_callback(z, v)
    return ComplexField2D(grid, v, settings.z_end)


class UniformMedium:
    """Homogeneous slab: constant density and coupling field everywhere.

    Used for analytic limits (Beer-Lambert, EIT slab transparency); the
    response is solved directly per call unless a table is supplied.
    """

    def __init__(self, n_at, omega_c, delta_p, delta_c, levels, response=None):
        from .response import DirectResponse

        self.n_at = float(n_at)
        self.omega_c_mag = abs(omega_c)
        self.levels = levels
        self.eta = 0.5 * self.n_at * levels.sigma_0 * levels.gamma_e
        self._response = response or DirectResponse(delta_p, delta_c, levels)

    @property
    def wavelength(self):
        return self.levels.lambda_probe

    def source(self, values, z):
        if self.n_at == 0.0:
            return np.zeros_like(values)
        rho = self._response.rho_eg(values, self.omega_c_mag)
        return 1j * self.eta * rho
