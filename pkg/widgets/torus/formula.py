"""Closed form of the total space of the full torus bundle over a 1-connected 4-manifold.

For second Betti number ``k`` the total space is the ``(k+4)``-manifold
``Q_k = #_{c_1} S^3 x S^(k+1) # #_{c_2} S^4 x S^k # ...``.  ``torus_tower``
recomputes it by adding one circle factor at a time.
"""
from __future__ import annotations

import logging
from math import comb
from typing import List

from pydantic import BaseModel, ConfigDict, Field

from widgets.errors import CalculatorError, FormulaConsistencyError
from widgets.manifold import (
    ManifoldExpr,
    connected_sum,
    expr_of,
    multiple,
    remove_atom,
    repeated,
    sphere_expr,
    sphere_product,
    sum_all,
)
from widgets.suspension import FramingIndex, suspend

logger = logging.getLogger(__name__)


class TorusBundleSpec(BaseModel):
    """Input of the torus-bundle computation: ``k`` is the second Betti number of the base."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)


def _binom(n: int, j: int) -> int:
    return comb(n, j) if 0 <= j <= n else 0


def _require_k(k: int, least: int = 1) -> None:
    if k < least:
        raise CalculatorError(f"k must be >= {least}, got {k}")


def b_coefficients(k: int) -> List[int]:
    _require_k(k)
    m = k - 1
    return [
        m * _binom(m, i) - _binom(m, i + 1) + m * _binom(m, i - 1) - _binom(m, i - 2)
        for i in range(1, k // 2 + 1)
    ]


def q_multiplicities(k: int) -> List[int]:
    """``c_i`` for ``i = 1..k//2``; the middle coefficient is halved when ``k`` is even."""
    c = b_coefficients(k)
    if k % 2 == 0 and c:
        if c[-1] % 2:
            raise FormulaConsistencyError(f"middle coefficient b_{k // 2} = {c[-1]} is odd for even k = {k}")
        c[-1] //= 2
    return c


def q_manifold(k: int) -> ManifoldExpr:
    c = q_multiplicities(k)
    parts = [repeated(sphere_product(i + 2, k - i + 2), count) for i, count in enumerate(c, start=1)]
    return sum_all(parts, k + 4)


def torus_bundle_total(spec: TorusBundleSpec) -> ManifoldExpr:
    """Total space of the torus bundle; depends on the base only through ``k``."""
    return q_manifold(spec.k)


theorem_d = torus_bundle_total


# ==========================
# ❖ Circle-by-circle tower |
# ==========================
def _tower_step(m: ManifoldExpr) -> ManifoldExpr:
    n = m.dim
    host = sphere_product(2, n - 2)
    if host not in m.atoms:
        raise FormulaConsistencyError(f"no S^2 x S^{n - 2} summand of {m} can host the Euler class")
    others = remove_atom(m, host)
    lifted = [multiple(suspend(expr_of(atom), FramingIndex.TWIST), count) for atom, count in others.terms]
    return connected_sum(expr_of(sphere_product(3, n - 2)), sum_all(lifted, n + 1))


def tower_stages(k: int) -> List[ManifoldExpr]:
    """``#_(k-1) S^2 x S^3`` followed by the total space after each added circle."""
    _require_k(k)
    stage = repeated(sphere_product(2, 3), k - 1) if k > 1 else sphere_expr(5)
    stages = [stage]
    for step in range(k - 1):
        stage = _tower_step(stage)
        logger.debug("tower k=%d step %d: %s", k, step + 1, stage)
        stages.append(stage)
    return stages


def torus_tower(k: int) -> ManifoldExpr:
    return tower_stages(k)[-1]

