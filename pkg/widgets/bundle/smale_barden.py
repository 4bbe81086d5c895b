"""Simply connected 5-manifolds from ``(H_2, w_2)`` and 6-manifolds with free circle actions.

Decomposition choices when ``w2`` is set:

* one unpaired ``Z/2`` left over -> ``W``;
* torsion fully paired and a free generator available -> ``S^2 x~ S^3``;
* torsion fully paired, no free part -> ``X(i)`` for the smallest 2-power pair.
"""
from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

from widgets.abelian import FgAbGroup
from widgets.abelian.groups import invariant_factors
from widgets.errors import RealizabilityError
from widgets.manifold import (
    Atom,
    AtomKind,
    ManifoldExpr,
    connected_sum,
    expr_of,
    m_atom,
    remove_atom,
    sphere_product,
    twisted_product,
    wu_manifold,
    x_atom,
)
from widgets.suspension import FramingIndex, suspend

logger = logging.getLogger(__name__)

NOT_REALIZABLE = "not realizable as 1-connected 5-manifold data"


def _split_pairs(primary: Dict[int, List[int]]) -> Tuple[Dict[int, List[int]], Dict[int, List[int]]]:
    """Split prime-power exponents into half of each matched pair and the unmatched rest."""
    halves: Dict[int, List[int]] = {}
    leftover: Dict[int, List[int]] = {}
    for p, exponents in primary.items():
        counts = Counter(exponents)
        halves[p] = sorted((e for e, c in counts.items() for _ in range(c // 2)), reverse=True)
        rest = [e for e, c in counts.items() if c % 2]
        if rest:
            leftover[p] = rest
    return halves, leftover


def _m_atoms(halves: Dict[int, List[int]]) -> List[Atom]:
    return [m_atom(k) for k in invariant_factors(halves)]


def smale_barden_decompose(h2: FgAbGroup, w2: bool) -> ManifoldExpr:
    """``#_r S^2 x S^3 # M(k_1) # ... [# H]`` with second homology ``h2``."""
    halves, leftover = _split_pairs(h2.primary_parts())
    r = h2.free_rank
    extra: Optional[Atom] = None

    if not w2:
        if leftover:
            raise RealizabilityError(f"{NOT_REALIZABLE}: torsion of {h2} is not of the form T + T")
    elif leftover:
        if leftover != {2: [1]}:
            raise RealizabilityError(f"{NOT_REALIZABLE}: unpaired torsion of {h2} is not a single Z/2")
        extra = wu_manifold()
        logger.debug("residual Z/2 absorbed by W")
    elif r >= 1:
        extra = twisted_product(3)
        r -= 1
        logger.debug("w2 carried by a free generator: S^2 x~ S^3")
    else:
        twos = halves.get(2, [])
        if not twos:
            raise RealizabilityError(f"{NOT_REALIZABLE}: w2 != 0 needs free rank, a Z/2 or a 2-power pair in {h2}")
        smallest = min(twos)
        twos.remove(smallest)
        extra = x_atom(smallest)
        logger.debug("w2 carried by X(%d)", smallest)

    atoms = [sphere_product(2, 3)] * r + _m_atoms(halves)
    if extra is not None:
        atoms.append(extra)
    return expr_of(*atoms, dim=5)


def classify_6mfd(quotient_h2: FgAbGroup, quotient_w2: bool, euler_equals_w2: bool) -> ManifoldExpr:
    """Simply connected 6-manifold with a free circle action, from the quotient's data."""
    quotient = smale_barden_decompose(quotient_h2, quotient_w2)
    if quotient_h2.free_rank == 0:
        raise RealizabilityError("Euler class cannot be primitive: H2 of the quotient has no free part")
    if euler_equals_w2:
        if not quotient_w2:
            raise RealizabilityError("a primitive Euler class cannot reduce to w2 = 0")
        carrier = twisted_product(3)
        index = FramingIndex.IDENTITY
    else:
        carrier = sphere_product(2, 3)
        index = FramingIndex.TWIST
    if carrier not in quotient.atoms:
        raise RealizabilityError(f"no {carrier.to_dsl()} summand of {quotient} can carry the Euler class")
    rest = remove_atom(quotient, carrier)
    logger.debug("quotient %s = %s # %s, suspension index %d", quotient, carrier, rest, int(index))
    return connected_sum(expr_of(sphere_product(3, 3)), suspend(rest, index))


def in_circle_action_grammar(m: ManifoldExpr) -> bool:
    """Atoms drawn from ``S^3 x S^3``, ``S^2 x S^4``, ``Sig_i M(k)`` and ``Sig1 H``."""
    allowed = {sphere_product(3, 3), sphere_product(2, 4)}
    for atom in m.atoms:
        if atom in allowed:
            continue
        if atom.kind is not AtomKind.SUSPENSION or atom.inner.summand_count != 1:
            return False
        inner = atom.inner.atoms[0]
        if inner.kind is AtomKind.M:
            continue
        if inner.kind in (AtomKind.TWISTED_PRODUCT, AtomKind.WU, AtomKind.X) and atom.index == 1:
            continue
        return False
    return m.dim == 6

