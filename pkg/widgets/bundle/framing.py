"""Framing bits of circles in circle bundles, tunnel sums and pullbacks.

The framed-circle data that matters downstream is two bits: ``epsilon`` for
a fibre circle in the total space and ``delta`` for ``S^1 x {x0}`` in
``S^1 x N``.  Gluing along circles with equal bits gives ``M # Sig0 N``,
otherwise ``M # Sig1 N``.
"""
from __future__ import annotations

import logging
from enum import IntEnum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from widgets.errors import BundleHypothesisError
from widgets.manifold import (
    ManifoldExpr,
    connected_sum,
    expr_of,
    is_simply_connected,
    projective_space,
    sphere,
    sphere_product,
    twisted_product,
    w2_nonzero,
)
from widgets.suspension import FramingIndex, suspend

logger = logging.getLogger(__name__)


class FramingBit(IntEnum):
    ZERO = 0
    ONE = 1


# ==========================
# ❖ Bit calculus           |
# ==========================
def epsilon_of_base(base: ManifoldExpr) -> FramingBit:
    """Bit of a fibre circle: 0 when ``w2(base) != 0``, 1 otherwise."""
    return FramingBit.ZERO if w2_nonzero(base) else FramingBit.ONE


def flip(bit: FramingBit, w2_nonzero: bool) -> FramingBit:
    """Bit of the same circle after twisting its frame by the generator of pi_1(SO)."""
    if bit is FramingBit.ONE:
        return FramingBit.ZERO
    return FramingBit.ZERO if w2_nonzero else FramingBit.ONE


def flip_delta(bit: FramingBit) -> FramingBit:
    """Twisted frame of ``S^1 x {x0}``; only the 1 -> 0 direction is known."""
    if bit is FramingBit.ONE:
        return FramingBit.ZERO
    raise BundleHypothesisError("twisting a delta = 0 frame has no known effect")


def tunnel_index(m: ManifoldExpr, eps: FramingBit, delta: FramingBit) -> Tuple[FramingIndex, str]:
    """Suspension index chosen by a tunnel sum, with a one-line reason."""
    eps, delta = FramingBit(eps), FramingBit(delta)
    if eps is FramingBit.ONE and delta is FramingBit.ONE:
        eps, delta = flip(eps, w2_nonzero(m)), flip_delta(delta)
    if w2_nonzero(m):
        return FramingIndex.IDENTITY, "w2(M) != 0: both suspensions agree, index normalized to 0"
    if eps is delta:
        return FramingIndex.IDENTITY, "epsilon = delta"
    return FramingIndex.TWIST, "epsilon != delta"


def _tunnel_hypotheses(m: ManifoldExpr, n: ManifoldExpr) -> List[str]:
    failed = []
    if not is_simply_connected(m):
        failed.append("M is not simply connected")
    if m.dim < 5:
        failed.append(f"dim M = {m.dim} < 5")
    if n.dim != m.dim - 1:
        failed.append(f"dim N = {n.dim} != dim M - 1 = {m.dim - 1}")
    return failed


def tunnel_sum(m: ManifoldExpr, eps: FramingBit, n: ManifoldExpr, delta: FramingBit) -> ManifoldExpr:
    failed = _tunnel_hypotheses(m, n)
    if failed:
        raise BundleHypothesisError(f"tunnel sum hypothesis violated: {'; '.join(failed)}")
    index, reason = tunnel_index(m, eps, delta)
    logger.debug("tunnel sum %s o %s: Sig%d (%s)", m, n, int(index), reason)
    return connected_sum(m, suspend(n, index))


# ==========================
# ❖ Pullbacks              |
# ==========================
def _pullback_hypotheses(total: ManifoldExpr, base: ManifoldExpr, n: ManifoldExpr) -> List[str]:
    failed = []
    if not is_simply_connected(total):
        failed.append("E is not simply connected")
    if total.dim != base.dim + 1:
        failed.append(f"dim E = {total.dim} != dim B + 1 = {base.dim + 1}")
    if total.dim < 5:
        failed.append(f"dim E = {total.dim} < 5")
    if n.dim != base.dim:
        failed.append(f"dim N = {n.dim} != dim B = {base.dim}")
    return failed


def pullback_index(total: ManifoldExpr, base: ManifoldExpr) -> Tuple[FramingIndex, str]:
    """``Sig0`` when ``w2(B) != 0``; ``Sig1`` when ``w2(B) = 0`` unless ``w2(E) != 0``."""
    return tunnel_index(total, epsilon_of_base(base), FramingBit.ZERO)


def pullback_total(total: ManifoldExpr, base: ManifoldExpr, n: ManifoldExpr) -> ManifoldExpr:
    """Total space of the bundle pulled back to ``B # N``: ``E # Sig_i N``."""
    failed = _pullback_hypotheses(total, base, n)
    if failed:
        raise BundleHypothesisError(f"circle bundle hypothesis violated: {'; '.join(failed)}")
    return tunnel_sum(total, epsilon_of_base(base), n, FramingBit.ZERO)


# ==========================
# ❖ Circle bundles         |
# ==========================
class CircleBundle(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = ""
    base: ManifoldExpr
    total: ManifoldExpr
    euler_primitive: bool = True
    euler_equals_w2_mod2: bool = False

    @model_validator(mode="after")
    def _consistent(self):
        if self.total.dim != self.base.dim + 1:
            raise ValueError(f"dimension mismatch {self.total.dim} vs {self.base.dim + 1}")
        if is_simply_connected(self.total) and not self.euler_primitive:
            raise ValueError("a simply connected total space forces a primitive Euler class")
        return self


def known_circle_bundles(n: int) -> List[CircleBundle]:
    """Standard bundles over ``n``-dimensional bases.

    Hopf ``S^(n+1) -> CP^(n/2)`` for even ``n``, and for ``n >= 4`` the bundles
    ``S^3 x S^(n-2)`` over ``S^2 x S^(n-2)`` and ``S^2 x~ S^(n-2)`` whose Euler
    class is the generator of the ``S^2`` factor.
    """
    bundles: List[CircleBundle] = []
    if n >= 2 and n % 2 == 0:
        m = n // 2
        bundles.append(
            CircleBundle(
                name=f"Hopf S^{n + 1} -> CP^{m}",
                base=expr_of(projective_space("C", m)),
                total=expr_of(sphere(n + 1)),
                euler_equals_w2_mod2=(m % 2 == 0),
            )
        )
    if n >= 4:
        total = expr_of(sphere_product(3, n - 2))
        bundles.append(
            CircleBundle(
                name=f"S^3 x S^{n - 2} -> S^2 x S^{n - 2}",
                base=expr_of(sphere_product(2, n - 2)),
                total=total,
            )
        )
        bundles.append(
            CircleBundle(
                name=f"S^3 x S^{n - 2} -> S^2 x~ S^{n - 2}",
                base=expr_of(twisted_product(n - 2)),
                total=total,
                euler_equals_w2_mod2=True,
            )
        )
    return bundles


def pullback_bundle(bundle: CircleBundle, n: ManifoldExpr) -> CircleBundle:
    """The bundle over ``B # N`` pulled back along the collapse ``B # N -> B``."""
    total = pullback_total(bundle.total, bundle.base, n)
    return CircleBundle(
        name=f"{bundle.name} # {n}" if bundle.name else "",
        base=connected_sum(bundle.base, n),
        total=total,
        euler_primitive=bundle.euler_primitive,
        euler_equals_w2_mod2=bundle.euler_equals_w2_mod2 and not w2_nonzero(n),
    )
