"""Single-atom steady-state response: susceptibility, Liouvillian, cache.

All operations are pure functions of their arguments and safe for
concurrent use; :class:`ResponseTable` is immutable after construction.
"""

import numpy as np
import scipy.linalg

from . import _kernels
from ._kernels_py import (
    DIAG_VEC_INDICES,
    dissipator_sum,
    hamiltonian,
    _commutator_superop,
)
from .exceptions import (
    DegenerateDenominatorError,
    NonUniqueSteadyStateError,
    ResponseRangeError,
)
from .levels import E, G, LevelScheme

_COND_LIMIT = 1e14


def chi_linear(n_at, fp, ls):
    """Weak-probe linear susceptibility of the ladder medium.

    Parameters
    ----------
    n_at : float
        Local atomic number density (m^-3).
    fp : FieldPoint
        Local fields and detunings; ``fp.omega_p`` is unused (linear
        response) and only ``|fp.omega_c|`` enters.
    ls : LevelScheme

    Returns
    -------
    complex
        chi = i * n_at * gamma_e * sigma_0 * lambda / (4 pi D) with
        D = gamma_ge - i*delta_p + |omega_c|^2 / (4*(gamma_gr - i*(delta_c+delta_p))).

    Notes
    -----
    Sign convention: ``Im(chi) >= 0`` for a passive medium, so the
    intensity transmission of a slab is ``exp(-k * Im(chi) * L)`` and
    ``k * Im(chi)`` on bare resonance equals ``n_at * sigma_0``
    (Beer-Lambert).  Conjugated forms of the same response appear in the
    literature; this package uses the passive-absorption convention
    everywhere, which also fixes red-detuned focusing / blue-detuned
    defocusing via ``n = 1 + Re(chi)/2``.
    """
    if n_at < 0:
        raise ValueError("density must be nonnegative")
    two_photon = ls.gamma_gr - 1j * (fp.delta_c + fp.delta_p)
    oc2 = abs(fp.omega_c) ** 2
    if two_photon == 0:
        if oc2 > 0:
            # EIT term diverges: exact two-photon resonance with no
            # ground-Rydberg decoherence gives perfect transparency.
            return 0.0j
        eit = 0.0
    else:
        eit = oc2 / (4.0 * two_photon)
    denom = ls.gamma_ge - 1j * fp.delta_p + eit
    if abs(denom) < 1e-30 * max(ls.gamma_e, 1.0):
        raise DegenerateDenominatorError(
            "susceptibility denominator vanished (all rates and detunings zero?)"
        )
    return 1j * n_at * ls.gamma_e * ls.sigma_0 * ls.lambda_probe / (4.0 * np.pi * denom)


def refractive_index(chi):
    """Refractive index 1 + Re(chi)/2 of a dilute medium.

    Warns when ``|chi|`` exceeds 0.1, where the dilute expansion starts
    to lose accuracy.
    """
    if abs(chi) > 0.1:
        import warnings

        warnings.warn("refractive_index called with |chi| > 0.1", stacklevel=2)
    return 1.0 + 0.5 * np.real(chi)


def build_liouvillian(fp, ls):
    """Generator L of d(vec rho)/dt = L vec(rho) for the local fields.

    The returned 9x9 complex matrix acts on the column-major
    vectorization ``vec(rho)[row + 3*col] = rho[row, col]`` with levels
    ordered (g, e, r); units are 1/s.  It combines the coherent
    commutator with decay channels e->g (``gamma_e``), r->e
    (``gamma_r``) and projector dephasing onto g (``gamma_p``) and r
    (``gamma_c``).
    """
    scale = ls.gamma_e if ls.gamma_e > 0 else 1.0
    h = hamiltonian(
        fp.omega_p / scale,
        fp.omega_c / scale,
        fp.delta_p / scale,
        fp.delta_c / scale,
    )
    l_scaled = _commutator_superop(h) + dissipator_sum(
        ls.gamma_e / scale, ls.gamma_r / scale, ls.gamma_p / scale, ls.gamma_c / scale
    )
    return scale * l_scaled


def steady_state(liouvillian):
    """Unique steady state of a Liouvillian with nonzero dissipation.

    One row of the (internally rescaled) generator is replaced by the
    trace constraint and the resulting linear system is solved by a
    dense direct method with partial pivoting.  Raises
    :class:`NonUniqueSteadyStateError` if the constrained system has
    condition number above 1e14 (no unique steady state).
    """
    a = np.array(liouvillian, dtype=complex)
    if a.shape != (9, 9):
        raise ValueError("Liouvillian must be 9x9")
    scale = float(np.abs(a).max())
    if scale == 0.0:
        raise NonUniqueSteadyStateError("zero Liouvillian has no unique steady state")
    a /= scale
    a[0, :] = 0.0
    a[0, list(DIAG_VEC_INDICES)] = 1.0
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise NonUniqueSteadyStateError(
            f"trace-constrained system is singular (cond={cond:.3g})"
        )
    b = np.zeros(9, dtype=complex)
    b[0] = 1.0
    vec = scipy.linalg.solve(a, b)
    rho = vec.reshape(3, 3, order="F")
    # The exact solution is Hermitian; symmetrize away solver roundoff.
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.real(np.trace(rho))


def coherence_eg(rho):
    """The (e, g) density-matrix entry that sources the probe field."""
    return rho[E, G]


def _weak_probe_denominator(omega_c_mag, delta_p, delta_c, ls):
    """D(omega_c) of the linear response; used for node placement."""
    two_photon = ls.gamma_gr - 1j * (delta_c + delta_p)
    with np.errstate(divide="ignore", invalid="ignore"):
        eit = np.where(
            two_photon == 0,
            np.inf,
            np.asarray(omega_c_mag, dtype=float) ** 2 / (4.0 * two_photon),
        )
    return ls.gamma_ge - 1j * delta_p + eit


def curvature_adapted_nodes(x, f_rows, n, adapted_fraction=0.65):
    """Strictly increasing nodes on [x[0], x[-1]] equidistributing curvature.

    ``f_rows`` holds one or more profiles sampled on the uniform fine
    grid ``x``; cells are sized so local linear-interpolation error,
    ~ h^2 |f''| / 8, is roughly uniform against the sharpest profile.
    A uniform floor on the node density keeps smooth regions covered.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    x = np.asarray(x, dtype=float)
    f_rows = np.atleast_2d(np.asarray(f_rows, dtype=complex))
    f_rows = np.where(np.isfinite(f_rows), f_rows, 0.0)
    h = x[1] - x[0]
    span = x[-1] - x[0]
    curv = np.zeros(x.shape, dtype=float)
    for row in f_rows:
        scale = np.abs(row).max()
        if scale == 0:
            continue
        c = np.zeros_like(curv)
        c[1:-1] = np.abs(row[2:] - 2.0 * row[1:-1] + row[:-2]) / (h**2 * scale)
        c[0], c[-1] = c[1], c[-2]
        curv = np.maximum(curv, c)
    density = np.sqrt(curv)
    total = np.trapezoid(density, x)
    if total <= 0:
        return np.linspace(x[0], x[-1], n)
    density = adapted_fraction * density / total + (1.0 - adapted_fraction) / span
    cdf = np.concatenate(([0.0], np.cumsum(0.5 * (density[1:] + density[:-1]) * h)))
    cdf /= cdf[-1]
    nodes = np.interp(np.linspace(0.0, 1.0, n), cdf, x)
    nodes[0], nodes[-1] = x[0], x[-1]
    # Guard against ties from flat CDF stretches.
    eps = span * 1e-12
    for i in range(1, n):
        if nodes[i] <= nodes[i - 1]:
            nodes[i] = nodes[i - 1] + eps
    return nodes


def _bilinear(xg, yg, table, x, y):
    """Bilinear interpolation on a rectilinear (possibly nonuniform) grid."""
    ix = np.clip(np.searchsorted(xg, x, side="right") - 1, 0, len(xg) - 2)
    iy = np.clip(np.searchsorted(yg, y, side="right") - 1, 0, len(yg) - 2)
    tx = (x - xg[ix]) / (xg[ix + 1] - xg[ix])
    ty = (y - yg[iy]) / (yg[iy + 1] - yg[iy])
    # Flat gathers with real corner weights keep the temporaries cheap.
    ny = len(yg)
    flat = table.ravel()
    base = ix * ny + iy
    mx = 1.0 - tx
    my = 1.0 - ty
    return (
        flat[base] * (mx * my)
        + flat[base + ny] * (tx * my)
        + flat[base + 1] * (mx * ty)
        + flat[base + ny + 1] * (tx * ty)
    )


class ResponseTable:
    """Bilinear cache of the steady-state e-g coherence over field magnitudes.

    The full complex response is reconstructed from the phase-gauge
    identity ``rho_eg(O_p e^{i phi}, O_c e^{i psi}) =
    e^{i phi} rho_eg(|O_p|, |O_c|)``, so only magnitudes are tabulated.

    To keep bilinear interpolation accurate across the sharp EIT /
    Autler-Townes structure, the table stores the coherence
    preconditioned by the analytic weak-probe denominator,
    ``u = rho_eg * D(omega_c) / D(0)``; in the weak-probe limit ``u`` is
    exactly flat in the coupling direction, so interpolation error comes
    only from saturation corrections.  Queries divide the factor back
    out, which reproduces the direct solve exactly at the nodes.
    Instances are immutable after construction and safe for shared
    concurrent reads.
    """

    def __init__(self, omega_p_samples, omega_c_samples, delta_p, delta_c, levels):
        omega_p_samples = np.asarray(omega_p_samples, dtype=float)
        omega_c_samples = np.asarray(omega_c_samples, dtype=float)
        for name, grid in (("omega_p", omega_p_samples), ("omega_c", omega_c_samples)):
            if grid.ndim != 1 or grid.size < 2:
                raise ValueError(f"{name} samples must be a 1-D grid of >= 2 points")
            if not np.all(np.diff(grid) > 0):
                raise ValueError(f"{name} samples must be strictly increasing")
            if grid[0] < 0:
                raise ValueError(f"{name} samples must be nonnegative")
        self.omega_p_samples = omega_p_samples
        self.omega_c_samples = omega_c_samples
        self.delta_p = float(delta_p)
        self.delta_c = float(delta_c)
        self.levels = levels
        weights = self._weights(omega_c_samples)
        if not np.all(np.isfinite(weights)):
            # Degenerate exact-dark-state corner (gamma_gr = two-photon
            # detuning = 0): fall back to the raw coherence.
            weights = np.ones_like(omega_c_samples, dtype=complex)
        self._node_weights = weights
        pp, cc = np.meshgrid(omega_p_samples, omega_c_samples, indexing="ij")
        eg = _kernels.steady_rho_eg_batch(
            pp.ravel(), cc.ravel(), self.delta_p, self.delta_c, levels
        ).reshape(pp.shape)
        self._table = eg * weights[None, :]

    def _weights(self, omega_c_mag):
        """Weak-probe preconditioner D(omega_c)/D(0) at the given magnitudes."""
        d = _weak_probe_denominator(omega_c_mag, self.delta_p, self.delta_c, self.levels)
        d0 = self.levels.gamma_ge - 1j * self.delta_p
        return np.asarray(d / d0, dtype=complex)

    @classmethod
    def from_ranges(
        cls,
        omega_p_max,
        omega_c_max,
        delta_p,
        delta_c,
        levels,
        n_p=128,
        n_c=128,
    ):
        """Build a table over [0, max] ranges with adapted coupling nodes.

        Probe nodes are uniform (the response is nearly linear in the
        probe).  Coupling nodes follow the measured curvature of the
        response itself, pre-sampled on a fine grid at a weak, a
        mid-range and a full-strength probe slice; that concentrates
        samples around the transparency/Autler-Townes structure and the
        narrow saturated feature at small coupling.
        """
        omega_p_max = float(omega_p_max)
        omega_c_max = float(omega_c_max)
        p_nodes = np.linspace(0.0, omega_p_max, n_p)
        fine = np.linspace(0.0, omega_c_max, 1025)
        d = _weak_probe_denominator(fine, delta_p, delta_c, levels)
        d0 = levels.gamma_ge - 1j * delta_p
        weights = np.asarray(d / d0, dtype=complex)
        if not np.all(np.isfinite(weights)):
            weights = np.ones_like(fine, dtype=complex)
        slices = np.array([1e-3, 0.35, 0.7, 1.0]) * max(
            omega_p_max, 1e-6 * levels.gamma_e
        )
        rows = [
            weights
            * _kernels.steady_rho_eg_batch(
                np.full(fine.shape, op), fine, delta_p, delta_c, levels
            )
            for op in slices
        ]
        c_nodes = curvature_adapted_nodes(fine, rows, n_c, adapted_fraction=0.75)
        return cls(p_nodes, c_nodes, delta_p, delta_c, levels)

    @property
    def omega_p_max(self):
        return self.omega_p_samples[-1]

    @property
    def omega_c_max(self):
        return self.omega_c_samples[-1]

    def rho_eg(self, omega_p, omega_c_mag):
        """Complex e-g coherence for (complex) probe and coupling magnitude.

        Raises :class:`ResponseRangeError` when a magnitude exceeds the
        sampled range; the caller must rebuild with a wider grid.
        """
        omega_p = np.asarray(omega_p, dtype=complex)
        omega_c_mag = np.asarray(omega_c_mag, dtype=float)
        mag = np.abs(omega_p)
        slack = 1.0 + 1e-12
        if mag.max(initial=0.0) > self.omega_p_max * slack:
            raise ResponseRangeError(
                f"probe magnitude {mag.max():.6g} rad/s exceeds table "
                f"range {self.omega_p_max:.6g} rad/s"
            )
        if omega_c_mag.max(initial=0.0) > self.omega_c_max * slack:
            raise ResponseRangeError(
                f"coupling magnitude {omega_c_mag.max():.6g} rad/s exceeds "
                f"table range {self.omega_c_max:.6g} rad/s"
            )
        oc = np.minimum(omega_c_mag, self.omega_c_max)
        value = _bilinear(
            self.omega_p_samples,
            self.omega_c_samples,
            self._table,
            np.minimum(mag, self.omega_p_max),
            oc,
        )
        weights = self._weights(oc)
        if not np.all(np.isfinite(weights)):
            weights = np.ones_like(oc, dtype=complex)
        value = value / weights
        # rho_eg(0) = 0, so the phase at zero magnitude is immaterial.
        phase = omega_p / np.maximum(mag, 1e-300)
        return value * phase


class DirectResponse:
    """Per-point steady-state solves; the verification twin of the table.

    Same call contract as :class:`ResponseTable.rho_eg` but each query
    runs the full trace-constrained solve (no interpolation).
    """

    def __init__(self, delta_p, delta_c, levels):
        self.delta_p = float(delta_p)
        self.delta_c = float(delta_c)
        self.levels = levels

    def rho_eg(self, omega_p, omega_c_mag):
        omega_p = np.asarray(omega_p, dtype=complex)
        shape = omega_p.shape
        mag = np.abs(omega_p)
        oc = np.broadcast_to(np.asarray(omega_c_mag, dtype=float), shape)
        eg = _kernels.steady_rho_eg_batch(
            mag.ravel(), oc.ravel(), self.delta_p, self.delta_c, self.levels
        ).reshape(shape)
        phase = omega_p / np.maximum(mag, 1e-300)
        return eg * phase


def response_table(omega_p_samples, omega_c_samples, delta_p, delta_c, levels):
    """Functional alias for :class:`ResponseTable` construction."""
    return ResponseTable(omega_p_samples, omega_c_samples, delta_p, delta_c, levels)
