from widgets.torus.formula import (
    TorusBundleSpec,
    b_coefficients,
    q_manifold,
    q_multiplicities,
    theorem_d,
    torus_bundle_total,
    torus_tower,
    tower_stages,
)
from widgets.torus.spectral import (
    E3Report,
    SpectralBasisElement,
    d2_matrix,
    kernel_ranks,
    spectral_basis,
    spectral_e3_poincare,
    spectral_e3_report,
)

__all__ = [
    "E3Report",
    "SpectralBasisElement",
    "TorusBundleSpec",
    "b_coefficients",
    "d2_matrix",
    "kernel_ranks",
    "q_manifold",
    "q_multiplicities",
    "spectral_basis",
    "spectral_e3_poincare",
    "spectral_e3_report",
    "theorem_d",
    "torus_bundle_total",
    "torus_tower",
    "tower_stages",
]
