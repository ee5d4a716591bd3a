"""Pure-numpy steady-state kernel (fallback for the compiled extension).

The Liouvillian of the ladder system is affine in the (real) field
magnitudes once detunings and rates are fixed,

    L(x_p, x_c) = L0 + x_p * LP + x_c * LC,

so a batch of grid points shares three constant 9x9 blocks and the
per-point work is an assembly plus one dense solve.  All matrices here
are nondimensionalized by ``gamma_e`` to keep entries O(1).

Vectorization convention (fixed): the density matrix is stacked
column-major over (row, col) pairs in level order (g, e, r), i.e.
``vec(rho)[row + 3*col] = rho[row, col]``.  With that convention
``vec(A rho B) = kron(B.T, A) vec(rho)``.
"""

import numpy as np

from .levels import E, G, R

#: vec positions of the diagonal entries rho_gg, rho_ee, rho_rr.
DIAG_VEC_INDICES = (G + 3 * G, E + 3 * E, R + 3 * R)
#: vec position of the e-g coherence rho[E, G].
EG_VEC_INDEX = E + 3 * G

_EYE3 = np.eye(3)


def _dissipator(c):
    """Lindblad superoperator of collapse operator ``c`` (column-major vec)."""
    cdc = c.conj().T @ c
    return (
        np.kron(c.conj(), c)
        - 0.5 * np.kron(_EYE3, cdc)
        - 0.5 * np.kron(cdc.T, _EYE3)
    )


def _commutator_superop(h):
    """Superoperator of -i [h, .] for a (possibly complex) 3x3 matrix."""
    return -1j * (np.kron(_EYE3, h) - np.kron(h.T, _EYE3))


def hamiltonian(omega_p, omega_c, delta_p, delta_c):
    """Rotating-frame Hamiltonian over hbar (same units as its inputs)."""
    h = np.zeros((3, 3), dtype=complex)
    h[E, E] = -delta_p
    h[R, R] = -(delta_p + delta_c)
    h[E, G] = -0.5 * omega_p
    h[G, E] = -0.5 * np.conj(omega_p)
    h[R, E] = -0.5 * omega_c
    h[E, R] = -0.5 * np.conj(omega_c)
    return h


def dissipator_sum(gamma_e, gamma_r, gamma_p, gamma_c):
    """Sum of the decay and laser-dephasing Lindblad superoperators.

    Channels: population decay e->g (rate ``gamma_e``) and r->e
    (``gamma_r``), plus pure dephasing through the projectors onto g
    (``gamma_p``) and onto r (``gamma_c``).
    """
    s_e_minus = np.zeros((3, 3), dtype=complex)
    s_e_minus[G, E] = 1.0
    s_r_minus = np.zeros((3, 3), dtype=complex)
    s_r_minus[E, R] = 1.0
    proj_g = np.zeros((3, 3), dtype=complex)
    proj_g[G, G] = 1.0
    proj_r = np.zeros((3, 3), dtype=complex)
    proj_r[R, R] = 1.0

    total = np.zeros((9, 9), dtype=complex)
    for rate, op in (
        (gamma_e, s_e_minus),
        (gamma_r, s_r_minus),
        (gamma_p, proj_g),
        (gamma_c, proj_r),
    ):
        if rate != 0.0:
            total += _dissipator(np.sqrt(rate) * op)
    return total


def liouvillian_parts(delta_p, delta_c, gamma_e, gamma_r, gamma_p, gamma_c):
    """Gamma_e-scaled blocks (L0, LP, LC) of the affine Liouvillian.

    ``L0`` holds detunings and dissipation, ``LP``/``LC`` multiply the
    probe/coupling magnitudes expressed in units of ``gamma_e``.  All
    inputs are in rad/s; ``gamma_e`` must be positive.
    """
    if gamma_e <= 0:
        raise ValueError("gamma_e must be positive for the scaled kernel")
    s = gamma_e
    l0 = _commutator_superop(hamiltonian(0.0, 0.0, delta_p / s, delta_c / s))
    l0 += dissipator_sum(gamma_e / s, gamma_r / s, gamma_p / s, gamma_c / s)
    lp = _commutator_superop(hamiltonian(1.0, 0.0, 0.0, 0.0))
    lc = _commutator_superop(hamiltonian(0.0, 1.0, 0.0, 0.0))
    return np.ascontiguousarray(l0), np.ascontiguousarray(lp), np.ascontiguousarray(lc)


def solve_steady_vec(xp, xc, l0, lp, lc):
    """Solve the trace-constrained steady state for a batch of points.

    Parameters
    ----------
    xp, xc : (N,) float arrays
        Probe / coupling magnitudes in units of ``gamma_e``.
    l0, lp, lc : (9, 9) complex arrays
        Affine Liouvillian blocks from :func:`liouvillian_parts`.

    Returns
    -------
    (N, 9) complex array of column-major vectorized density matrices.
    """
    xp = np.asarray(xp, dtype=float)
    xc = np.asarray(xc, dtype=float)
    n = xp.shape[0]
    a = np.empty((n, 9, 9), dtype=complex)
    np.multiply(xp[:, None, None], lp, out=a)
    a += xc[:, None, None] * lc
    a += l0
    # Replace the rho_gg evolution row by the trace constraint.
    a[:, 0, :] = 0.0
    a[:, 0, list(DIAG_VEC_INDICES)] = 1.0
    b = np.zeros(9, dtype=complex)
    b[0] = 1.0
    # 1-D rhs broadcasts as a vector over the matrix stack.
    return np.linalg.solve(a, b)
