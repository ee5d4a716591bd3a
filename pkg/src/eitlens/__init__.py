"""Steady-state Maxwell-Bloch simulation of probe lensing under ladder EIT.

A weak probe crossing a cold-atom cloud is focused or defocused by the
refractive-index profile that a tightly focused coupling beam imprints
through electromagnetically induced transparency.  The package solves
the single-atom master equation for the nonperturbative steady-state
coherence and feeds it into a symmetric split-step integration of the
steady-state paraxial wave equation, producing exit-plane images,
transmission spectra and the analytic thin-cloud comparison.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as response_backend
from .grid import ComplexField2D, TransverseGrid
from .levels import FieldPoint, LevelScheme, check_density_matrix
from .propagation import (
    PropagationSettings,
    UniformMedium,
    apply_absorber,
    diffraction_step,
    medium_step,
    propagate,
)
from .response import (
    DirectResponse,
    ResponseTable,
    build_liouvillian,
    chi_linear,
    coherence_eg,
    refractive_index,
    response_table,
    steady_state,
)
from .scenario import (
    AtomicCloud,
    CloudMedium,
    CouplingBeam,
    ImageResult,
    ProbeBeam,
    Scenario,
    SpectrumResult,
    coupling_field,
    density,
    disk_average,
    preset,
    preset_names,
    run_image,
    run_spectrum,
    thin_cloud_disk_average,
    thin_cloud_transmission,
)

__all__ = [
    "__version__",
    "response_backend",
    "ComplexField2D",
    "TransverseGrid",
    "FieldPoint",
    "LevelScheme",
    "check_density_matrix",
    "PropagationSettings",
    "UniformMedium",
    "apply_absorber",
    "diffraction_step",
    "medium_step",
    "propagate",
    "DirectResponse",
    "ResponseTable",
    "build_liouvillian",
    "chi_linear",
    "coherence_eg",
    "refractive_index",
    "response_table",
    "steady_state",
    "AtomicCloud",
    "CloudMedium",
    "CouplingBeam",
    "ImageResult",
    "ProbeBeam",
    "Scenario",
    "SpectrumResult",
    "coupling_field",
    "density",
    "disk_average",
    "preset",
    "preset_names",
    "run_image",
    "run_spectrum",
    "thin_cloud_disk_average",
    "thin_cloud_transmission",
]
