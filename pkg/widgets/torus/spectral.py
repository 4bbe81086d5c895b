"""Brute-force E2 -> E3 page of the torus bundle over ``#_(k-1) S^2 x S^3``.

``E2 = H*(N) (x) Lambda(t_1..t_(k-1))`` with ``H*(N)`` spanned by ``1``,
``omega_i`` (deg 2), ``y_i`` (deg 3) and ``z`` (deg 5), ``omega_i y_j =
delta_ij z``.  The differential is assembled degree by degree from the
basis and its ranks are computed by exact elimination, so the resulting
Poincaré polynomial is independent of the closed form in ``formula``.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict

from widgets.abelian import IntMatrix, IntPolynomial, elementary_divisors, kernel_rank
from widgets.config import load_settings
from widgets.errors import CalculatorError, FormulaConsistencyError

logger = logging.getLogger(__name__)

BASE_DEGREE = {"one": 0, "omega": 2, "y": 3, "z": 5}
BLOCKS = ("B1", "B2", "B3", "B4")
# basis size grows like k * 2^k
ORACLE_MAX_K = 14


class SpectralBasisElement(NamedTuple):
    block: str
    base_class: str
    index: Optional[int]
    multi_index: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return BASE_DEGREE[self.base_class] + len(self.multi_index)

    def label(self) -> str:
        base = self.base_class if self.index is None else f"{self.base_class}_{self.index}"
        return f"{base} (x) t{{{','.join(map(str, self.multi_index))}}}"


def element(base_class: str, index: Optional[int], multi_index: Tuple[int, ...]) -> SpectralBasisElement:
    if base_class == "one":
        block = "B1" if multi_index else "B2"
    else:
        block = {"omega": "B2", "y": "B3", "z": "B4"}[base_class]
    return SpectralBasisElement(block, base_class, index, multi_index)


def multi_indices(k: int) -> List[Tuple[int, ...]]:
    """Subsets of ``{1..k-1}`` in binary-counter order."""
    m = k - 1
    return [tuple(j + 1 for j in range(m) if mask >> j & 1) for mask in range(1 << m)]


@lru_cache(maxsize=16)
def spectral_basis(k: int) -> Tuple[SpectralBasisElement, ...]:
    if k < 2:
        raise CalculatorError(f"the spectral oracle needs k >= 2, got {k}")
    subsets = multi_indices(k)
    gens = range(1, k)
    basis: List[SpectralBasisElement] = [element("one", None, I) for I in subsets if I]
    basis.append(element("one", None, ()))
    basis += [element("omega", i, I) for I in subsets for i in gens]
    basis += [element("y", i, I) for I in subsets for i in gens]
    basis += [element("z", None, I) for I in subsets]
    return tuple(basis)


@lru_cache(maxsize=16)
def basis_by_degree(k: int) -> Dict[int, Tuple[SpectralBasisElement, ...]]:
    grouped: Dict[int, List[SpectralBasisElement]] = defaultdict(list)
    for e in spectral_basis(k):
        grouped[e.degree].append(e)
    return {d: tuple(es) for d, es in sorted(grouped.items())}


def d2(e: SpectralBasisElement) -> List[Tuple[SpectralBasisElement, int]]:
    """Image of a basis element as ``[(target, coefficient), ...]``."""
    I = e.multi_index
    if e.base_class == "one" and I:
        return [
            (element("omega", i, I[: s - 1] + I[s:]), (-1) ** (s - 1))
            for s, i in enumerate(I, start=1)
        ]
    if e.base_class == "y" and e.index in I:
        s = I.index(e.index) + 1
        return [(element("z", None, I[: s - 1] + I[s:]), (-1) ** (s - 1))]
    return []


def d2_matrix(k: int, degree: int, source_blocks: Optional[Sequence[str]] = None) -> IntMatrix:
    """Matrix of ``d2`` from degree ``degree`` to ``degree + 1`` (targets x sources)."""
    by_degree = basis_by_degree(k)
    sources = [e for e in by_degree.get(degree, ()) if source_blocks is None or e.block in source_blocks]
    targets = by_degree.get(degree + 1, ())
    row_of = {e: r for r, e in enumerate(targets)}
    entries: Dict[Tuple[int, int], int] = {}
    for col, e in enumerate(sources):
        for target, coefficient in d2(e):
            entries[(row_of[target], col)] = coefficient
    return IntMatrix(len(targets), len(sources), entries)


def block_polynomial(k: int, block: str) -> IntPolynomial:
    """Per-degree count of the basis of one block."""
    terms: Dict[int, int] = defaultdict(int)
    for e in spectral_basis(k):
        if e.block == block:
            terms[e.degree] += 1
    return IntPolynomial.from_terms(terms)


def expected_block_polynomial(k: int, block: str) -> IntPolynomial:
    m = k - 1
    if block == "B1":
        return IntPolynomial.from_terms({i: comb(m, i) for i in range(1, m + 1)})
    if block == "B2":
        return IntPolynomial.from_terms({0: 1}) + IntPolynomial.from_terms({i + 2: m * comb(m, i) for i in range(m + 1)})
    if block == "B3":
        return IntPolynomial.from_terms({i + 3: m * comb(m, i) for i in range(m + 1)})
    return IntPolynomial.from_terms({i + 5: comb(m, i) for i in range(m + 1)})


# ==========================
# ❖ E3 report              |
# ==========================
class DegreeRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    degree: int
    dimension: int
    d2_rank: int
    nonunit_divisors: Tuple[int, ...] = ()
    e3_rank: int = 0


class E3Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    rows: Tuple[DegreeRow, ...]
    poincare: IntPolynomial
    torsion_free: bool
    d2_squared_zero: bool
    blocks_match: bool
    top_class_only: bool

    @property
    def passed(self) -> bool:
        return self.torsion_free and self.d2_squared_zero and self.blocks_match and self.top_class_only

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "degree": r.degree,
                    "dimension": r.dimension,
                    "d2 rank": r.d2_rank,
                    "E3 rank": r.e3_rank,
                    "non-unit divisors": ", ".join(map(str, r.nonunit_divisors)) or "-",
                }
                for r in self.rows
            ]
        )

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "poincare": str(self.poincare),
            "e3_ranks": {str(r.degree): r.e3_rank for r in self.rows},
            "d2_ranks": {str(r.degree): r.d2_rank for r in self.rows},
            "torsion_free": self.torsion_free,
            "d2_squared_zero": self.d2_squared_zero,
            "blocks_match": self.blocks_match,
            "top_class_only": self.top_class_only,
        }


def _divisors_per_degree(matrices: List[IntMatrix], workers: int) -> List[List[int]]:
    if workers > 1 and len(matrices) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(elementary_divisors, matrices))
    return [elementary_divisors(a) for a in matrices]


def _top_class_only(k: int) -> bool:
    """``B4 / d2(B3)`` is a single class, sitting in degree ``k + 4``."""
    by_degree = basis_by_degree(k)
    for d, es in by_degree.items():
        b4 = sum(1 for e in es if e.block == "B4")
        if not b4:
            continue
        image = len(elementary_divisors(d2_matrix(k, d - 1, source_blocks=("B3",))))
        if b4 - image != (1 if d == k + 4 else 0):
            return False
    return True


def spectral_e3_report(k: int, workers: Optional[int] = None) -> E3Report:
    if k < 2:
        raise CalculatorError(f"the spectral oracle needs k >= 2, got {k}")
    if k > ORACLE_MAX_K:
        raise CalculatorError(f"the spectral oracle is limited to k <= {ORACLE_MAX_K}, got {k}")
    workers = workers if workers is not None else load_settings().oracle.workers
    top = k + 4
    degrees = list(range(top + 1))
    matrices = [d2_matrix(k, d) for d in degrees]
    divisors = _divisors_per_degree(matrices, workers)
    ranks = [len(ds) for ds in divisors]
    by_degree = basis_by_degree(k)

    rows = []
    for d in degrees:
        dimension = len(by_degree.get(d, ()))
        e3 = dimension - ranks[d] - (ranks[d - 1] if d > 0 else 0)
        rows.append(
            DegreeRow(
                degree=d,
                dimension=dimension,
                d2_rank=ranks[d],
                nonunit_divisors=tuple(x for x in divisors[d] if x != 1),
                e3_rank=e3,
            )
        )
        logger.debug("k=%d degree %d: %s, rank %d, E3 rank %d", k, d, matrices[d].shape, ranks[d], e3)

    squared_zero = all((matrices[d + 1] @ matrices[d]).is_zero() for d in degrees[:-1])
    return E3Report(
        k=k,
        rows=tuple(rows),
        poincare=IntPolynomial.from_terms({r.degree: r.e3_rank for r in rows}),
        torsion_free=all(not r.nonunit_divisors for r in rows),
        d2_squared_zero=squared_zero,
        blocks_match=all(block_polynomial(k, b) == expected_block_polynomial(k, b) for b in BLOCKS),
        top_class_only=_top_class_only(k),
    )


def spectral_e3_poincare(k: int, workers: Optional[int] = None) -> IntPolynomial:
    report = spectral_e3_report(k, workers)
    if not report.torsion_free:
        raise FormulaConsistencyError(f"E3 page for k={k} has torsion")
    if not report.d2_squared_zero:
        raise FormulaConsistencyError(f"d2 o d2 != 0 for k={k}")
    return report.poincare


def kernel_ranks(k: int, block: str, degrees: Iterable[int]) -> Dict[int, int]:
    """Kernel rank of ``d2`` restricted to one block, per degree."""
    return {d: kernel_rank(d2_matrix(k, d, source_blocks=(block,))) for d in degrees}
