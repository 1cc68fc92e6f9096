"""Exact entanglement of the mixed spin-(1,1/2,1) Heisenberg trimer.

Library layout:

    spin_algebra   spin matrices, tensor embeddings, the fixed 2x3x3 basis
    hamiltonian    model parameters, 18x18 Hamiltonian, numerical oracle
    analytic       closed-form spectrum: all 18 labeled eigenpairs
    thermal        ground-state and Boltzmann density matrices
    negativity     partial transpose, bipartite negativities, gTN
    phases         ground-state phases, 2-D phase maps, extremum search
    scans          entanglement maps over parameter planes, contours
    units          laboratory-units conversion for real compounds
    export         CSV / JSON / SVG writers
    figures        matplotlib rendering
    cli            command-line interface
"""

from ._version import __version__
from .analytic import (
    AnalyticLevel,
    FAMILIES,
    SpectralCoefficients,
    analytic_eigensystem,
    cubic_roots,
    family_energy,
    family_vector,
    spectral_coefficients,
)
from .hamiltonian import ModelParams, Spectrum, build_hamiltonian, diagonalize, total_sz
from .negativity import NegativityReport, gtn, gtn_pure, negativity, partial_transpose
from .phases import PhaseLabel, PhaseMap, find_gtn_maximum, ground_phase, scan_phases
from .scans import (
    ContourSet,
    GridScan,
    extract_contours,
    scan_gtn_zero_T,
    scan_thermal,
    scan_thermal_physical,
    thermal_crossing_temperatures,
)
from .spin_algebra import DIMS, basis_index, basis_labels, embed, kron, spin_matrices
from .thermal import (
    DensityMatrix,
    ground_state_density_matrix,
    pure_state_density_matrix,
    thermal_density_matrix,
)
from .units import PhysicalParams, from_model_units, to_model_units

__all__ = [
    "__version__",
    "AnalyticLevel",
    "ContourSet",
    "DIMS",
    "DensityMatrix",
    "FAMILIES",
    "GridScan",
    "ModelParams",
    "NegativityReport",
    "PhaseLabel",
    "PhaseMap",
    "PhysicalParams",
    "SpectralCoefficients",
    "Spectrum",
    "analytic_eigensystem",
    "basis_index",
    "basis_labels",
    "build_hamiltonian",
    "cubic_roots",
    "diagonalize",
    "embed",
    "extract_contours",
    "family_energy",
    "family_vector",
    "find_gtn_maximum",
    "from_model_units",
    "ground_phase",
    "ground_state_density_matrix",
    "gtn",
    "gtn_pure",
    "kron",
    "negativity",
    "partial_transpose",
    "pure_state_density_matrix",
    "scan_gtn_zero_T",
    "scan_phases",
    "scan_thermal",
    "scan_thermal_physical",
    "spectral_coefficients",
    "spin_matrices",
    "thermal_crossing_temperatures",
    "thermal_density_matrix",
    "to_model_units",
    "total_sz",
]
