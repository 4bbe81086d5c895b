"""Rewrite engine for the suspension operations Sig0 / Sig1.

Rules fire in a fixed order on the canonical input:

* ``R1`` a sphere suspends to the next sphere;
* ``R2`` a 1-connected sum of at least two atoms in dimension >= 4 is
  suspended summand by summand;
* ``R3`` ``Sig(S^p x S^q) = S^p x S^(q+1) # S^(p+1) x S^q`` (always for
  Sig0, for Sig1 once ``R4`` has moved a stable product to index 0);
* ``R5`` ``Sig0`` of a genus ``g`` surface is ``2g`` copies of ``S^1 x S^2``;
* ``R4`` Sig-stable inputs are suspended with index 0.

Anything else becomes a ``SymbolicSuspension`` atom (suspending one of
those nests another).
"""
from __future__ import annotations

import logging
from enum import IntEnum
from typing import List, Tuple, Union

from pydantic import BaseModel, ConfigDict

from widgets.abelian import FgAbGroup, GradedGroup
from widgets.errors import SuspensionError
from widgets.manifold import (
    Atom,
    AtomKind,
    ManifoldExpr,
    canonicalize,
    expr_of,
    homology,
    is_simply_connected,
    multiple,
    repeated,
    sphere_expr,
    sphere_product,
    sum_all,
    suspended_homology,
    symbolic_suspension,
    universal_coefficients,
    w2_nonzero,
)

logger = logging.getLogger(__name__)


class FramingIndex(IntEnum):
    """Gluing map of the surgery: 0 is the identity, 1 the twist."""

    IDENTITY = 0
    TWIST = 1


IndexLike = Union[FramingIndex, int]


class SuspensionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    expr: ManifoldExpr
    rules: Tuple[str, ...] = ()


# ==========================
# ❖ Stability flags        |
# ==========================
def is_sigma_stable(atom: Atom) -> bool:
    if atom.kind is AtomKind.SPHERE:
        return True
    if atom.kind is AtomKind.SPHERE_PRODUCT:
        return max(atom.params) >= 3
    return False


def as_index(i: IndexLike) -> FramingIndex:
    try:
        return FramingIndex(int(i))
    except ValueError as exc:
        raise SuspensionError(f"suspension index must be 0 or 1, got {i!r}") from exc


def _require_dimension(n: ManifoldExpr) -> None:
    if n.dim < 2:
        raise SuspensionError(f"dimension too small: cannot suspend a {n.dim}-manifold")


# ==========================
# ❖ Rewriting              |
# ==========================
def _suspend(m: ManifoldExpr, i: FramingIndex, fired: List[str]) -> ManifoldExpr:
    m = canonicalize(m)
    n = m.dim
    label = f"Sig{int(i)}({m.to_dsl()})"

    if not m.atoms:
        fired.append(f"R1: {label} = S({n + 1})")
        return sphere_expr(n + 1)

    if m.summand_count > 1:
        if n >= 4 and is_simply_connected(m):
            fired.append(f"R2: {label} distributed over {m.summand_count} summands")
            return sum_all((multiple(_suspend(expr_of(a), i, fired), c) for a, c in m.terms), n + 1)
        fired.append(f"symbolic: {label}")
        return expr_of(symbolic_suspension(int(i), m))

    atom = m.atoms[0]
    if atom.kind is AtomKind.SPHERE_PRODUCT:
        if i is FramingIndex.TWIST and is_sigma_stable(atom):
            fired.append(f"R4: {atom.to_dsl()} is Sig-stable, Sig1 = Sig0")
            i = FramingIndex.IDENTITY
        if i is FramingIndex.IDENTITY:
            p, q = atom.params
            result = expr_of(sphere_product(p, q + 1), sphere_product(p + 1, q))
            fired.append(f"R3: Sig0({atom.to_dsl()}) = {result.to_dsl()}")
            return result

    if atom.kind is AtomKind.SURFACE and i is FramingIndex.IDENTITY:
        result = repeated(sphere_product(1, 2), 2 * atom.params[0])
        fired.append(f"R5: {label} = {result.to_dsl()}")
        return result

    fired.append(f"symbolic: {label}")
    return expr_of(symbolic_suspension(int(i), m))


def suspend_traced(n: ManifoldExpr, i: IndexLike) -> SuspensionResult:
    _require_dimension(n)
    fired: List[str] = []
    expr = _suspend(n, as_index(i), fired)
    for line in fired:
        logger.debug(line)
    return SuspensionResult(expr=expr, rules=tuple(fired))


def suspend(n: ManifoldExpr, i: IndexLike) -> ManifoldExpr:
    return suspend_traced(n, i).expr


# ==========================
# ❖ Homology formulas      |
# ==========================
def suspension_homology(n: ManifoldExpr, i: IndexLike = FramingIndex.IDENTITY) -> GradedGroup:
    """Reduced homology of the suspension shifted by one, plus the punctured manifold; index-free."""
    _require_dimension(n)
    as_index(i)
    return suspended_homology(homology(n), n.dim)


def suspension_cohomology(n: ManifoldExpr, i: IndexLike = FramingIndex.IDENTITY) -> GradedGroup:
    return universal_coefficients(suspension_homology(n, i), n.dim + 1)


def suspension_w2(n: ManifoldExpr) -> bool:
    if n.dim < 4:
        raise SuspensionError(
            f"restriction isomorphism unavailable: w2 of a suspended {n.dim}-manifold needs dimension >= 4"
        )
    return w2_nonzero(n)


def _sphere_groups(n: int) -> GradedGroup:
    return GradedGroup.from_mapping({0: FgAbGroup.free(1)}) + GradedGroup.from_mapping({n: FgAbGroup.free(1)})


def is_homology_sphere_graded(g: GradedGroup, n: int) -> bool:
    return g == _sphere_groups(n)


def is_homology_sphere(n: ManifoldExpr) -> bool:
    return is_homology_sphere_graded(homology(n), n.dim)
