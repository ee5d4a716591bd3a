"""Level scheme and atomic-state containers for the g-e-r ladder.

The three levels are the ground state ``g``, the short-lived
intermediate state ``e`` (decay rate ``gamma_e``) and the long-lived
upper state ``r`` (decay rate ``gamma_r``).  The probe couples g-e, the
coupling beam couples e-r.  All rates and Rabi frequencies are angular
frequencies in rad/s; wavelengths are in meters.
"""

import math
from dataclasses import dataclass, field

import numpy as np

# Level indices; fixed ordering used everywhere, including the
# column-major vectorization of the density matrix.
G, E, R = 0, 1, 2

GAMMA_E_D2 = 2.0 * math.pi * 6.067e6  # rad/s, |e> natural width
GAMMA_R_DEFAULT = 2.0 * math.pi * 10.0e3  # rad/s, |r> decay
LAMBDA_PROBE_DEFAULT = 780e-9  # m
LAMBDA_COUPLING_DEFAULT = 480e-9  # m
GAMMA_GR_DEFAULT = 2.0 * math.pi * 100.0e3  # rad/s, calibrated g-r coherence decay

#: Sanity cap on Rabi-frequency magnitudes (rad/s).  Far above anything
#: physical for CW beams on these transitions; guards against unit slips.
DEFAULT_RABI_CAP = 1e12


@dataclass(frozen=True)
class LevelScheme:
    """Decay/dephasing rates and wavelengths of the three-level ladder.

    Parameters
    ----------
    gamma_e : float
        Full population decay rate of ``e`` (rad/s).
    gamma_r : float
        Population decay rate of ``r`` into ``e`` (rad/s).
    gamma_p, gamma_c : float
        Probe / coupling laser linewidths (rad/s).  They enter as pure
        dephasing of the ``g`` and ``r`` projectors respectively.
    lambda_probe, lambda_coupling : float
        Vacuum wavelengths (m) of the probe and coupling transitions.
    """

    gamma_e: float = GAMMA_E_D2
    gamma_r: float = GAMMA_R_DEFAULT
    gamma_p: float = 0.0
    gamma_c: float = 2.0 * GAMMA_GR_DEFAULT - GAMMA_R_DEFAULT
    lambda_probe: float = LAMBDA_PROBE_DEFAULT
    lambda_coupling: float = LAMBDA_COUPLING_DEFAULT

    def __post_init__(self):
        for name in ("gamma_e", "gamma_r", "gamma_p", "gamma_c"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        # gamma_r < gamma_e except in the trivial all-zero scheme used
        # for algebraic checks.
        if self.gamma_e > 0 and not self.gamma_r < self.gamma_e:
            raise ValueError("gamma_r must be smaller than gamma_e")
        if self.lambda_probe <= 0 or self.lambda_coupling <= 0:
            raise ValueError("wavelengths must be positive")

    @classmethod
    def with_ground_rydberg_width(cls, gamma_gr=GAMMA_GR_DEFAULT, **kwargs):
        """Build a scheme whose g-r coherence decay equals ``gamma_gr``.

        Laser-noise and residual dephasing are folded into ``gamma_c``
        (with ``gamma_p = 0``) so that
        ``(gamma_r + gamma_p + gamma_c) / 2 == gamma_gr`` exactly.  This
        keeps ``gamma_ge == gamma_e / 2`` while exposing the single
        experimentally calibrated knob.
        """
        gamma_r = kwargs.pop("gamma_r", GAMMA_R_DEFAULT)
        gamma_c = 2.0 * gamma_gr - gamma_r
        if gamma_c < 0:
            raise ValueError("gamma_gr must be at least gamma_r / 2")
        return cls(gamma_r=gamma_r, gamma_p=0.0, gamma_c=gamma_c, **kwargs)

    @property
    def gamma_ge(self):
        """Decay rate of the g-e coherence (rad/s)."""
        return 0.5 * self.gamma_e + 0.5 * self.gamma_p

    @property
    def gamma_gr(self):
        """Decay rate of the g-r coherence (rad/s)."""
        return 0.5 * (self.gamma_r + self.gamma_p + self.gamma_c)

    @property
    def sigma_0(self):
        """Resonant scattering cross-section 3*lambda^2 / (2*pi) (m^2)."""
        return 3.0 * self.lambda_probe**2 / (2.0 * math.pi)

    @property
    def k_probe(self):
        """Probe vacuum wavenumber 2*pi / lambda (rad/m)."""
        return 2.0 * math.pi / self.lambda_probe


@dataclass(frozen=True)
class FieldPoint:
    """Local optical fields and detunings seen by one atom.

    ``delta_p`` is the probe frequency minus the g-e transition
    frequency; ``delta_c`` the coupling frequency minus the e-r
    transition frequency.  Rabi frequencies may be complex; only the
    probe phase survives into the e-g coherence (gauge invariance).
    """

    omega_p: complex
    omega_c: complex
    delta_p: float
    delta_c: float
    rabi_cap: float = field(default=DEFAULT_RABI_CAP, repr=False, compare=False)

    def __post_init__(self):
        values = (self.omega_p, self.omega_c, self.delta_p, self.delta_c)
        if not all(np.isfinite(v) for v in values):
            raise ValueError("field point components must be finite")
        if abs(self.omega_p) > self.rabi_cap or abs(self.omega_c) > self.rabi_cap:
            raise ValueError(
                f"Rabi frequency exceeds sanity cap {self.rabi_cap:g} rad/s"
            )


def check_density_matrix(rho, *, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-10):
    """Validate a 3x3 density matrix; raise ``ValueError`` on violation.

    Checks hermiticity, unit trace, diagonal range and positive
    semidefiniteness at the given tolerances and returns ``rho``.
    """
    rho = np.asarray(rho)
    if rho.shape != (3, 3):
        raise ValueError("density matrix must be 3x3")
    scale = max(1.0, float(np.abs(rho).max()))
    if np.abs(rho - rho.conj().T).max() > herm_tol * scale:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > trace_tol:
        raise ValueError("density matrix trace differs from 1")
    diag = np.real(np.diag(rho))
    if diag.min() < -psd_tol or diag.max() > 1.0 + psd_tol:
        raise ValueError("populations outside [0, 1]")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -psd_tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho
