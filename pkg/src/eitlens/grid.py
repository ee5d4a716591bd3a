"""Uniform transverse grid and complex field container."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class TransverseGrid:
    """Uniform rectangular sampling of the transverse (x, y) plane.

    The window is centered on the beam axis; coordinate arrays contain
    an exact zero so the axis is always sampled.  Powers of two for
    ``nx``/``ny`` keep the FFTs fast.
    """

    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self):
        if self.nx < 16 or self.ny < 16:
            raise ValueError("grid needs at least 16 points per axis")
        if self.lx <= 0 or self.ly <= 0:
            raise ValueError("window extents must be positive")

    @property
    def dx(self):
        return self.lx / self.nx

    @property
    def dy(self):
        return self.ly / self.ny

    @cached_property
    def x(self):
        return (np.arange(self.nx) - self.nx // 2) * self.dx

    @cached_property
    def y(self):
        return (np.arange(self.ny) - self.ny // 2) * self.dy

    @cached_property
    def r_squared(self):
        """x^2 + y^2 on the full grid, shape (nx, ny)."""
        return self.x[:, None] ** 2 + self.y[None, :] ** 2

    @cached_property
    def k_perp_squared(self):
        """|k_perp|^2 in FFT layout, shape (nx, ny), rad^2/m^2."""
        kx = 2.0 * np.pi * np.fft.fftfreq(self.nx, d=self.dx)
        ky = 2.0 * np.pi * np.fft.fftfreq(self.ny, d=self.dy)
        return kx[:, None] ** 2 + ky[None, :] ** 2


@dataclass
class ComplexField2D:
    """Transverse slice of the probe Rabi-frequency envelope.

    ``values`` holds the complex envelope (rad/s) on ``grid``; ``z`` is
    the axial position of the slice (m).
    """

    grid: TransverseGrid
    values: np.ndarray
    z: float

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.nx, self.grid.ny):
            raise ValueError("field shape does not match grid")

    def power(self):
        """Window-integrated |envelope|^2, in (rad/s)^2 m^2."""
        return float(np.sum(np.abs(self.values) ** 2)) * self.grid.dx * self.grid.dy

    def copy(self):
        return ComplexField2D(self.grid, self.values.copy(), self.z)
