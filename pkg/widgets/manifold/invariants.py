"""Invariants of atoms and connected sums.

Homology of a connected sum is the sum of the atoms' homology strictly
between degrees 0 and n, with a single Z at each end.  Suspension atoms use
``suspended_homology``: reduced homology shifted up one degree plus the
homology of the punctured manifold.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Optional, Tuple

from widgets.abelian import FgAbGroup, GradedGroup, IntPolynomial, graded_sum, poincare_polynomial, shift
from widgets.errors import RealizabilityError, SuspensionError
from widgets.manifold.model import (
    FIELD_DEGREE,
    Atom,
    AtomKind,
    ManifoldExpr,
    repeated,
    sphere_expr,
    sphere_product,
    sum_all,
)

Z = FgAbGroup.free(1)


def _sphere_homology(n: int) -> GradedGroup:
    return graded_sum(GradedGroup.from_mapping({0: Z}), GradedGroup.from_mapping({n: Z}))


def _product_homology(p: int, q: int) -> GradedGroup:
    ranks: Dict[int, int] = {}
    for d in (0, p, q, p + q):
        ranks[d] = ranks.get(d, 0) + 1
    return GradedGroup.free_in_degrees(ranks)


def _torsion_five_manifold(orders) -> GradedGroup:
    return GradedGroup.from_mapping({0: Z, 2: FgAbGroup.from_orders(0, orders), 5: Z})


def suspended_homology(h: GradedGroup, n: int) -> GradedGroup:
    """``H_*`` of either suspension of a closed ``n``-manifold with homology ``h``."""
    return graded_sum(shift(h.reduced(), 1), h.without_degree(n))


# ==========================
# ❖ Atom tables            |
# ==========================
@lru_cache(maxsize=1024)
def atom_homology(atom: Atom) -> GradedGroup:
    kind, p = atom.kind, atom.params
    if kind is AtomKind.SPHERE:
        return _sphere_homology(p[0])
    if kind is AtomKind.SPHERE_PRODUCT:
        return _product_homology(p[0], p[1])
    if kind is AtomKind.TWISTED_PRODUCT:
        return _product_homology(2, p[0])
    if kind is AtomKind.PROJECTIVE_SPACE:
        step = FIELD_DEGREE[atom.field]
        return GradedGroup.free_in_degrees({step * j: 1 for j in range(p[0] + 1)})
    if kind is AtomKind.WU:
        return _torsion_five_manifold([2])
    if kind is AtomKind.M:
        return _torsion_five_manifold([p[0], p[0]])
    if kind is AtomKind.X:
        return _torsion_five_manifold([2 ** p[0], 2 ** p[0]])
    if kind is AtomKind.SURFACE:
        return GradedGroup.from_mapping({0: Z, 1: FgAbGroup.free(2 * p[0]), 2: Z})
    return suspended_homology(homology(atom.inner), atom.inner.dim)


def atom_w2_nonzero(atom: Atom) -> bool:
    kind = atom.kind
    if kind in (AtomKind.TWISTED_PRODUCT, AtomKind.WU, AtomKind.X):
        return True
    if kind is AtomKind.PROJECTIVE_SPACE:
        return atom.field == "C" and atom.params[0] % 2 == 0
    if kind is AtomKind.SUSPENSION:
        if atom.inner.dim < 4:
            raise SuspensionError(
                f"restriction isomorphism unavailable: w2 of {atom.to_dsl()} needs an inner manifold of dimension >= 4"
            )
        return w2_nonzero(atom.inner)
    return False


def atom_simply_connected(atom: Atom) -> bool:
    kind, p = atom.kind, atom.params
    if kind is AtomKind.SPHERE:
        return p[0] >= 2
    if kind is AtomKind.SPHERE_PRODUCT:
        return p[0] >= 2
    if kind is AtomKind.SURFACE:
        return p[0] == 0
    if kind is AtomKind.SUSPENSION:
        return is_simply_connected(atom.inner)
    return True


def atom_euler_characteristic(atom: Atom) -> int:
    return poincare_polynomial(atom_homology(atom)).alternating_sum()


# ==========================
# ❖ Expression invariants  |
# ==========================
def dim(m: ManifoldExpr) -> int:
    return m.dim


@lru_cache(maxsize=4096)
def homology(m: ManifoldExpr) -> GradedGroup:
    n = m.dim
    middle = GradedGroup()
    for atom, count in m.terms:
        if atom.kind is AtomKind.SPHERE:
            continue
        h = atom_homology(atom).as_dict()
        inner = GradedGroup.from_mapping({d: g for d, g in h.items() if 0 < d < n})
        middle = graded_sum(middle, inner.times(count))
    return graded_sum(_sphere_homology(n), middle)


def universal_coefficients(h: GradedGroup, n: int) -> GradedGroup:
    """Integral cohomology from homology: ``H^i = free(H_i) + tors(H_{i-1})``."""
    groups: Dict[int, FgAbGroup] = {}
    for d in range(n + 1):
        torsion = h.at(d - 1).torsion if d > 0 else ()
        groups[d] = FgAbGroup(free_rank=h.at(d).free_rank, torsion=torsion)
    return GradedGroup.from_mapping(groups)


def cohomology(m: ManifoldExpr) -> GradedGroup:
    return universal_coefficients(homology(m), m.dim)


def poincare_poly(m: ManifoldExpr) -> IntPolynomial:
    return poincare_polynomial(homology(m))


def w2_nonzero(m: ManifoldExpr) -> bool:
    return any(atom_w2_nonzero(a) for a in m.atoms)


def w2_status(m: ManifoldExpr) -> Tuple[Optional[bool], Optional[str]]:
    """``(w2_nonzero(m), None)``, or ``(None, reason)`` when w2 of a suspension summand is not determined."""
    try:
        return w2_nonzero(m), None
    except SuspensionError as e:
        return None, str(e)


def is_simply_connected(m: ManifoldExpr) -> bool:
    if m.dim == 1:
        return False
    return all(atom_simply_connected(a) for a in m.atoms)


def euler_characteristic(m: ManifoldExpr) -> int:
    """``chi(#M_i) = sum chi(M_i) - (count - 1) chi(S^n)``."""
    sphere_chi = 1 + (-1) ** m.dim
    if not m.terms:
        return sphere_chi
    total = sum(count * atom_euler_characteristic(a) for a, count in m.terms)
    return total - (m.summand_count - 1) * sphere_chi


def is_torsion_free(m: ManifoldExpr) -> bool:
    return all(g.is_free for _, g in homology(m).parts)


# ==========================
# ❖ Sphere-product decoding|
# ==========================
def from_poincare(poly: IntPolynomial, n: int) -> ManifoldExpr:
    """The unique sum of sphere products ``S^p x S^(n-p)`` with Poincaré polynomial ``poly``."""
    if n < 1:
        raise RealizabilityError(f"dimension must be >= 1, got {n}")
    if poly.degree > n or poly.coefficient(0) != 1 or poly.coefficient(n) != 1:
        raise RealizabilityError(f"{poly} is not the Poincaré polynomial of a closed {n}-manifold")
    if any(c < 0 for c in poly.coefficients) or not poly.is_palindromic(n):
        raise RealizabilityError(f"{poly} is not a palindromic polynomial of degree {n}")
    parts = []
    for p in range(1, n // 2 + 1):
        count = poly.coefficient(p)
        if 2 * p == n:
            if count % 2:
                raise RealizabilityError(f"middle coefficient {count} of {poly} is odd")
            count //= 2
        parts.append(repeated(sphere_product(p, n - p), count))
    return sum_all(parts, n) if parts else sphere_expr(n)
