from widgets.manifold.invariants import (
    atom_homology,
    cohomology,
    dim,
    euler_characteristic,
    from_poincare,
    homology,
    is_simply_connected,
    is_torsion_free,
    poincare_poly,
    suspended_homology,
    universal_coefficients,
    w2_nonzero,
    w2_status,
)
from widgets.manifold.model import (
    Atom,
    AtomKind,
    ManifoldExpr,
    canonicalize,
    connected_sum,
    expr_of,
    m_atom,
    multiple,
    projective_space,
    remove_atom,
    repeated,
    sphere,
    sphere_expr,
    sphere_product,
    sum_all,
    surface,
    symbolic_suspension,
    twisted_product,
    wu_manifold,
    x_atom,
)

__all__ = [
    "Atom",
    "AtomKind",
    "ManifoldExpr",
    "atom_homology",
    "canonicalize",
    "cohomology",
    "connected_sum",
    "dim",
    "euler_characteristic",
    "expr_of",
    "from_poincare",
    "homology",
    "is_simply_connected",
    "is_torsion_free",
    "m_atom",
    "multiple",
    "poincare_poly",
    "projective_space",
    "remove_atom",
    "repeated",
    "sphere",
    "sphere_expr",
    "sphere_product",
    "sum_all",
    "surface",
    "suspended_homology",
    "symbolic_suspension",
    "twisted_product",
    "universal_coefficients",
    "w2_nonzero",
    "w2_status",
    "wu_manifold",
    "x_atom",
]
