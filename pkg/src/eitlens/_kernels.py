"""Backend selection and batched steady-state entry points.

At import time the compiled Cython kernel is preferred; the pure-numpy
twin is used when the extension is missing or when the environment
variable ``EITLENS_PURE_PYTHON`` is set (useful for benchmarking and
for testing the fallback).  Both backends implement the same
``solve_steady_vec`` contract and agree to solver roundoff.
"""

import os
from functools import lru_cache

import numpy as np

from . import _kernels_py
from ._kernels_py import DIAG_VEC_INDICES, EG_VEC_INDEX, liouvillian_parts

if os.environ.get("EITLENS_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _steady_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

#: Chunk size for the numpy batch path; bounds the (N, 9, 9) scratch.
_CHUNK = 16384


@lru_cache(maxsize=64)
def _cached_parts(delta_p, delta_c, gamma_e, gamma_r, gamma_p, gamma_c):
    return liouvillian_parts(delta_p, delta_c, gamma_e, gamma_r, gamma_p, gamma_c)


def parts_for(levels, delta_p, delta_c):
    """Gamma_e-scaled Liouvillian blocks for a level scheme and detunings."""
    return _cached_parts(
        float(delta_p),
        float(delta_c),
        levels.gamma_e,
        levels.gamma_r,
        levels.gamma_p,
        levels.gamma_c,
    )


def steady_vec_batch(omega_p_mag, omega_c_mag, delta_p, delta_c, levels):
    """Vectorized steady states for magnitudes given in rad/s.

    Returns an (N, 9) array of column-major vectorized density matrices
    for real, nonnegative probe/coupling magnitudes.  Complex fields are
    handled by the callers through the phase-gauge identity.
    """
    l0, lp, lc = parts_for(levels, delta_p, delta_c)
    xp = np.ascontiguousarray(omega_p_mag, dtype=float) / levels.gamma_e
    xc = np.ascontiguousarray(omega_c_mag, dtype=float) / levels.gamma_e
    xp, xc = np.broadcast_arrays(xp.ravel(), xc.ravel())
    xp = np.ascontiguousarray(xp)
    xc = np.ascontiguousarray(xc)
    n = xp.shape[0]
    if _impl is _kernels_py and n > _CHUNK:
        out = np.empty((n, 9), dtype=complex)
        for lo in range(0, n, _CHUNK):
            hi = min(lo + _CHUNK, n)
            out[lo:hi] = _impl.solve_steady_vec(xp[lo:hi], xc[lo:hi], l0, lp, lc)
        return out
    return _impl.solve_steady_vec(xp, xc, l0, lp, lc)


def steady_rho_eg_batch(omega_p_mag, omega_c_mag, delta_p, delta_c, levels):
    """e-g coherence of the steady state for batches of magnitudes."""
    vec = steady_vec_batch(omega_p_mag, omega_c_mag, delta_p, delta_c, levels)
    return vec[:, EG_VEC_INDEX]


def vec_to_rho(vec):
    """Reshape column-major vectorized states (N, 9) into (N, 3, 3)."""
    vec = np.asarray(vec)
    return vec.reshape(vec.shape[:-1] + (3, 3)).swapaxes(-1, -2)
