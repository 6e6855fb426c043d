"""Tight-binding energetics of Kekule-distorted graphene.

A honeycomb sheet with three independent hopping amplitudes per 6-atom
cell, a quadratic distortion penalty with rigidity mu, and the machinery
to minimize the resulting energy per Carbon atom: Bloch matrices,
Brillouin-zone quadrature, symmetric-polynomial reductions, the
insulating-to-metallic phase scan, and the critical-rigidity integrals.
"""

from .bloch import (
    BandSet,
    BlochMatrix,
    HoppingTriple,
    band_set,
    bloch_a,
    bloch_t,
    dispersion_m,
    folded_bands,
    hop_components,
    spectral_bounds,
)
from .energy import (
    ElasticKind,
    ElasticModel,
    EnergyBreakdown,
    generalized_critical_mu_bound,
    generalized_pristine_optimum,
    pristine_optimum,
    total_energy,
    vtr_abs_t,
)
from .errors import NumericalError
from .kagome import (
    KagomeBands,
    kagome_bands,
    kagome_bloch,
    line_graph_adjacency,
    neighbor_quadratic_bound,
)
from .lattice import BASIS, LatticeBasis, QuadratureGrid, Zone, build_basis, dirac_points, make_grid
from .minimize import (
    MinimizeOptions,
    MinimizerResult,
    Phase,
    PhasePoint,
    SymmetryClass,
    classify_symmetry,
    minimize_energy,
    phase_scan,
    transition_estimate,
)
from .perturbation import (
    IntegralEstimate,
    PerturbationIntegrand,
    c_of_k,
    convexity_lower_bound,
    hessian_coefficient,
    integrand_at,
    mu_c,
    mu_c_prime_bound,
    phase_theta,
)
from .sympoly import (
    CaseTag,
    CharPolyCoeffs,
    KekuleProjection,
    charpoly_coeffs,
    g_from_quartic,
    kekule_projection,
    w_extrema,
    w_monotonicity_floor,
    z_factor,
)

__version__ = "0.1.0"

__all__ = [
    "BASIS",
    "BandSet",
    "BlochMatrix",
    "CaseTag",
    "CharPolyCoeffs",
    "ElasticKind",
    "ElasticModel",
    "EnergyBreakdown",
    "HoppingTriple",
    "IntegralEstimate",
    "KagomeBands",
    "KekuleProjection",
    "LatticeBasis",
    "MinimizeOptions",
    "MinimizerResult",
    "NumericalError",
    "PerturbationIntegrand",
    "Phase",
    "PhasePoint",
    "QuadratureGrid",
    "SymmetryClass",
    "Zone",
    "band_set",
    "bloch_a",
    "bloch_t",
    "build_basis",
    "c_of_k",
    "charpoly_coeffs",
    "classify_symmetry",
    "convexity_lower_bound",
    "dirac_points",
    "dispersion_m",
    "folded_bands",
    "g_from_quartic",
    "generalized_critical_mu_bound",
    "generalized_pristine_optimum",
    "hessian_coefficient",
    "hop_components",
    "integrand_at",
    "kagome_bands",
    "kagome_bloch",
    "kekule_projection",
    "line_graph_adjacency",
    "make_grid",
    "minimize_energy",
    "mu_c",
    "mu_c_prime_bound",
    "neighbor_quadratic_bound",
    "phase_scan",
    "phase_theta",
    "pristine_optimum",
    "spectral_bounds",
    "total_energy",
    "transition_estimate",
    "vtr_abs_t",
    "w_extrema",
    "w_monotonicity_floor",
    "z_factor",
]
