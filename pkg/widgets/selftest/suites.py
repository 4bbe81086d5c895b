"""Acceptance suites run by ``selftest`` (CLI) and the Self-test page.

Every suite returns ``(label, ok)`` pairs; ``run_selftest`` times them and
collects the outcome in a DataFrame.
"""
from __future__ import annotations

import logging
import random
import time
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict

from widgets.abelian import FgAbGroup, IntMatrix, smith_normal_form
from widgets.bundle import (
    FramingBit,
    classify_6mfd,
    flip,
    in_circle_action_grammar,
    known_circle_bundles,
    pullback_index,
    pullback_total,
    tunnel_sum,
)
from widgets.config import Settings, load_settings
from widgets.errors import CalculatorError
from widgets.manifold import (
    ManifoldExpr,
    connected_sum,
    euler_characteristic,
    expr_of,
    homology,
    m_atom,
    poincare_poly,
    projective_space,
    sphere_expr,
    sphere_product,
    suspended_homology,
    twisted_product,
    w2_nonzero,
    wu_manifold,
    x_atom,
)
from widgets.suspension import (
    FramingIndex,
    abelianize,
    is_homology_sphere,
    suspend,
    suspension_homology,
    surface_pi1,
)
from widgets.torus import q_manifold, spectral_e3_report, torus_tower

logger = logging.getLogger(__name__)

Case = Tuple[str, bool]


class SelfTestContext(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_k: int
    tower_max_k: int
    samples: int
    snf_samples: int
    seed: int

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 1000 + salt)


def _check(label: str, test: Callable[[], bool]) -> Case:
    try:
        return label, bool(test())
    except CalculatorError as e:
        logger.debug("case %s raised %s", label, e)
        return label, False


@lru_cache(maxsize=16)
def _report(k: int):
    return spectral_e3_report(k)


# ==========================
# ❖ Random generators      |
# ==========================
ONE_CONNECTED_POOL = {
    4: [sphere_product(2, 2), projective_space("C", 2), projective_space("H", 1)],
    5: [sphere_product(2, 3), twisted_product(3), wu_manifold(), m_atom(3), x_atom(1)],
    6: [sphere_product(2, 4), sphere_product(3, 3), projective_space("C", 3), twisted_product(4)],
    7: [sphere_product(2, 5), sphere_product(3, 4), twisted_product(5)],
    8: [sphere_product(2, 6), sphere_product(3, 5), sphere_product(4, 4), projective_space("H", 2)],
}


def random_one_connected_sum(rng: random.Random, n: int, most: int = 5) -> ManifoldExpr:
    pool = [a for a in ONE_CONNECTED_POOL[n] if a.dim == n]
    return expr_of(*(rng.choice(pool) for _ in range(rng.randint(1, most))), dim=n)


def random_classifiable(rng: random.Random) -> Tuple[FgAbGroup, bool, bool]:
    """Random quotient data accepted by ``classify_6mfd``."""
    orders: List[int] = []
    for _ in range(rng.randint(0, 3)):
        k = rng.randint(2, 12)
        orders += [k, k]
    w2 = rng.random() < 0.5
    rank = rng.randint(1, 4)
    euler_eq = False
    if w2:
        if rng.random() < 0.5:
            orders = [o for o in orders if o % 2] + [2]  # single unpaired Z/2
        else:
            euler_eq = rng.random() < 0.5
            if not euler_eq:
                rank = max(rank, 2)
    return FgAbGroup.from_orders(rank, orders), w2, euler_eq


# ==========================
# ❖ Suites                 |
# ==========================
def suite_oracle(ctx: SelfTestContext) -> List[Case]:
    cases = []
    for k in range(2, ctx.max_k + 1):
        cases.append(_check(f"E3(k={k}) = P(Q_{k})", lambda k=k: _report(k).poincare == poincare_poly(q_manifold(k))))
        cases.append(_check(f"E3(k={k}) bookkeeping", lambda k=k: _report(k).passed))
    return cases


def suite_tower(ctx: SelfTestContext) -> List[Case]:
    return [
        _check(f"tower(k={k}) = Q_{k}", lambda k=k: torus_tower(k) == q_manifold(k))
        for k in range(1, ctx.tower_max_k + 1)
    ]


SPOT_VALUES = {
    1: "S(5)",
    2: "SxS(3,3)",
    3: "5*SxS(3,4)",
    4: "9*SxS(3,5) # 8*SxS(4,4)",
}


def suite_spot_values(ctx: SelfTestContext) -> List[Case]:
    cases = [_check(f"Q_{k} = {text}", lambda k=k, text=text: q_manifold(k).to_dsl() == text) for k, text in SPOT_VALUES.items()]
    for k in range(1, ctx.max_k + 1):
        cases.append(_check(f"chi(Q_{k}) = 0", lambda k=k: euler_characteristic(q_manifold(k)) == 0))
        cases.append(_check(f"P(Q_{k}) palindromic", lambda k=k: poincare_poly(q_manifold(k)).is_palindromic(k + 4)))
    return cases


def suite_suspension(ctx: SelfTestContext) -> List[Case]:
    cases = []
    for p in range(1, 7):
        for q in range(max(p, 3), 7):
            n = expr_of(sphere_product(p, q))
            expected = expr_of(sphere_product(p, q + 1), sphere_product(p + 1, q))
            for i in (0, 1):
                cases.append(_check(f"Sig{i}(SxS({p},{q}))", lambda n=n, i=i, e=expected: suspend(n, i) == e))
                cases.append(
                    _check(
                        f"H(Sig{i}(SxS({p},{q})))",
                        lambda n=n, i=i: homology(suspend(n, i)) == suspension_homology(n, i),
                    )
                )
    rng = ctx.rng(4)
    for j in range(ctx.samples):
        n = rng.randint(4, 8)
        a, b = random_one_connected_sum(rng, n), random_one_connected_sum(rng, n)
        i = rng.randint(0, 1)
        cases.append(
            _check(
                f"distributivity #{j}",
                lambda a=a, b=b, i=i: suspend(connected_sum(a, b), i) == connected_sum(suspend(a, i), suspend(b, i)),
            )
        )
    return cases


def suite_pullback(ctx: SelfTestContext) -> List[Case]:
    cases = []
    for n in (6, 8):
        for bundle in known_circle_bundles(n):
            if bundle.total.dim < 5:
                continue
            index, _ = pullback_index(bundle.total, bundle.base)
            expected = FramingIndex.IDENTITY if w2_nonzero(bundle.base) or w2_nonzero(bundle.total) else FramingIndex.TWIST
            cases.append(_check(f"branch {bundle.name}", lambda index=index, expected=expected: index is expected))
            fibre = random_one_connected_sum(ctx.rng(5), n, most=3)
            cases.append(
                _check(
                    f"total {bundle.name} # N",
                    lambda b=bundle, f=fibre, i=expected: pullback_total(b.total, b.base, f)
                    == connected_sum(b.total, suspend(f, i)),
                )
            )
    return cases


def suite_framing(ctx: SelfTestContext) -> List[Case]:
    cases = [
        _check("flip(1, *) = 0", lambda: flip(FramingBit.ONE, True) is FramingBit.ZERO and flip(FramingBit.ONE, False) is FramingBit.ZERO),
        _check("flip(0, w2=0) = 1", lambda: flip(FramingBit.ZERO, False) is FramingBit.ONE),
        _check("flip(0, w2!=0) = 0", lambda: flip(FramingBit.ZERO, True) is FramingBit.ZERO),
    ]
    rng = ctx.rng(6)
    for j in range(ctx.samples):
        n = rng.choice([5, 6, 7])
        m = random_one_connected_sum(rng, n, most=3)
        fibre = random_one_connected_sum(rng, n - 1, most=3)
        cases.append(
            _check(
                f"double flip #{j}",
                lambda m=m, f=fibre: tunnel_sum(m, FramingBit.ONE, f, FramingBit.ONE)
                == tunnel_sum(m, FramingBit.ZERO, f, FramingBit.ZERO),
            )
        )
    return cases


def _classification_ok(h2: FgAbGroup, w2: bool, euler_eq: bool) -> bool:
    result = classify_6mfd(h2, w2, euler_eq)
    return (
        in_circle_action_grammar(result)
        and homology(result).at(2).free_rank + 1 == h2.free_rank
        and euler_characteristic(result) == 0
    )


def suite_classification(ctx: SelfTestContext) -> List[Case]:
    rng = ctx.rng(7)
    cases = []
    for j in range(ctx.samples):
        h2, w2, euler_eq = random_classifiable(rng)
        cases.append(_check(f"classify6({h2}, w2={int(w2)}, e={int(euler_eq)})", lambda a=(h2, w2, euler_eq): _classification_ok(*a)))
    return cases


def suite_homology(ctx: SelfTestContext) -> List[Case]:
    cases = []
    for n, pool in ONE_CONNECTED_POOL.items():
        for atom in pool:
            m = expr_of(atom)
            cases.append(
                _check(f"H(Sig0 {atom}) = H(Sig1 {atom})", lambda m=m: homology(suspend(m, 0)) == homology(suspend(m, 1)))
            )
    for n in range(2, 13):
        for i in (0, 1):
            cases.append(_check(f"Sig{i} S^{n} is a homology sphere", lambda n=n, i=i: is_homology_sphere(suspend(sphere_expr(n), i))))
    rng = ctx.rng(8)
    for j in range(ctx.samples):
        n = rng.randint(4, 8)
        m, i = random_one_connected_sum(rng, n), rng.randint(0, 1)
        cases.append(
            _check(f"H(Sig{i}) formula #{j}", lambda m=m, i=i: homology(suspend(m, i)) == suspended_homology(homology(m), m.dim))
        )
    for g in range(1, 6):
        cases.append(_check(f"pi1(Sig1 M_{g})^ab = Z^{2 * g}", lambda g=g: abelianize(surface_pi1(g, 1)) == FgAbGroup.free(2 * g)))
        cases.append(_check(f"pi1(Sig0 M_{g}) free of rank {2 * g}", lambda g=g: abelianize(surface_pi1(g, 0)) == FgAbGroup.free(2 * g)))
    return cases


def suite_algebra(ctx: SelfTestContext) -> List[Case]:
    rng = ctx.rng(9)
    cases = []
    for j in range(ctx.snf_samples):
        rows, cols = rng.randint(0, 40), rng.randint(0, 40)
        a = IntMatrix.from_rows([[rng.randint(-50, 50) for _ in range(cols)] for _ in range(rows)], cols=cols)

        def reconstructs(a=a) -> bool:
            d, u, v = smith_normal_form(a)
            return u @ a @ v == d and d.is_diagonal()

        cases.append(_check(f"SNF {rows}x{cols} #{j}", reconstructs))
    for k in range(2, ctx.max_k + 1):
        cases.append(_check(f"d2^2 = 0 (k={k})", lambda k=k: _report(k).d2_squared_zero))
        cases.append(_check(f"E3 torsion-free (k={k})", lambda k=k: _report(k).torsion_free))
    return cases


SUITES: Dict[str, Callable[[SelfTestContext], List[Case]]] = {
    "1 oracle equality": suite_oracle,
    "2 tower equality": suite_tower,
    "3 spot values": suite_spot_values,
    "4 suspension identities": suite_suspension,
    "5 pullback branches": suite_pullback,
    "6 framing bits": suite_framing,
    "7 6-manifold grammar": suite_classification,
    "8 homology formulas": suite_homology,
    "9 algebra kernel": suite_algebra,
}


def context_from_settings(settings: Optional[Settings] = None, max_k: Optional[int] = None) -> SelfTestContext:
    s = (settings or load_settings()).selftest
    return SelfTestContext(
        max_k=max_k if max_k is not None else s.max_k,
        tower_max_k=s.tower_max_k,
        samples=s.random_samples,
        snf_samples=s.snf_samples,
        seed=s.seed,
    )


def run_selftest(max_k: Optional[int] = None, settings: Optional[Settings] = None) -> pd.DataFrame:
    ctx = context_from_settings(settings, max_k)
    rows = []
    for name, suite in SUITES.items():
        logger.info("suite %s started", name)
        started = time.perf_counter()
        cases = suite(ctx)
        seconds = time.perf_counter() - started
        failed = [label for label, ok in cases if not ok]
        logger.info("suite %s finished: %d/%d in %.2fs", name, len(cases) - len(failed), len(cases), seconds)
        rows.append(
            {
                "suite": name,
                "cases": len(cases),
                "passed": len(cases) - len(failed),
                "status": "PASS" if not failed else "FAIL",
                "seconds": round(seconds, 3),
                "first failures": "; ".join(failed[:3]),
            }
        )
    return pd.DataFrame(rows)
