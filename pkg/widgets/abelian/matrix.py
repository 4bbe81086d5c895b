"""Exact integer matrices and Smith normal form.

``smith_normal_form`` keeps the transforming matrices and works on dense
``numpy`` object arrays (Python integers, no overflow).  The invariant-only
queries (``elementary_divisors``, ``rank``, ``cokernel``) first clear every
unit pivot on a sparse column map, which is all the spectral-sequence
matrices need, and hand whatever is left to the dense routine.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from widgets.abelian.groups import FgAbGroup
from widgets.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

Entry = Tuple[int, int]


# ==========================
# ❖ IntMatrix              |
# ==========================
@dataclass(frozen=True, eq=False)
class IntMatrix:
    """Immutable ``rows x cols`` integer matrix stored as ``{(i, j): value}`` (zeros omitted)."""

    rows: int
    cols: int
    entries: Mapping[Entry, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")
        clean: Dict[Entry, int] = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            value = int(value)
            if value:
                clean[(int(i), int(j))] = value
        object.__setattr__(self, "entries", clean)

    # ---- constructors
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        width = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        entries = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), width, entries)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntMatrix":
        m, n = array.shape
        return cls(m, n, {(i, j): array[i, j] for i in range(m) for j in range(n) if array[i, j]})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = rows if cols is None else cols
        return cls(rows, cols, {(i, i): v for i, v in enumerate(values)})

    # ---- views
    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: Entry) -> int:
        return self.entries.get(key, 0)

    def to_array(self) -> np.ndarray:
        array = np.zeros((self.rows, self.cols), dtype=object)
        for (i, j), v in self.entries.items():
            array[i, j] = v
        return array

    def to_rows(self) -> List[List[int]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def diagonal_entries(self) -> List[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(self.cols, other.rows)
        by_row: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
        for (k, j), b in other.entries.items():
            by_row[k].append((j, b))
        product: Dict[Entry, int] = defaultdict(int)
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                product[(i, j)] += a * b
        return IntMatrix(self.rows, other.cols, product)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


# ==========================
# ❖ Dense Smith form       |
# ==========================
def _swap_rows(array: Optional[np.ndarray], a: int, b: int) -> None:
    if array is not None and a != b:
        array[[a, b], :] = array[[b, a], :]


def _swap_cols(array: Optional[np.ndarray], a: int, b: int) -> None:
    if array is not None and a != b:
        array[:, [a, b]] = array[:, [b, a]]


def _smallest_nonzero(candidates: List[Tuple[int, int, int]]) -> Optional[Tuple[int, int]]:
    best = None
    for value, i, j in candidates:
        if value and (best is None or abs(value) < best[0]):
            best = (abs(value), i, j)
    return None if best is None else (best[1], best[2])


def _bring_to_pivot(d, u, v, t: int, i: int, j: int) -> None:
    _swap_rows(d, t, i)
    _swap_rows(u, t, i)
    _swap_cols(d, t, j)
    _swap_cols(v, t, j)


def _diagonalize(d: np.ndarray, u: Optional[np.ndarray] = None, v: Optional[np.ndarray] = None) -> None:
    """In-place Smith reduction of ``d``; ``u``/``v`` accumulate row/column operations."""
    m, n = d.shape
    for t in range(min(m, n)):
        block = d[t:, t:]
        pos = _smallest_nonzero([(block[i, j], i, j) for i, j in np.argwhere(block != 0)])
        if pos is None:
            return
        _bring_to_pivot(d, u, v, t, t + pos[0], t + pos[1])
        while True:
            p = d[t, t]
            dirty = False
            for i in range(t + 1, m):
                if d[i, t]:
                    q = d[i, t] // p
                    d[i, :] -= q * d[t, :]
                    if u is not None:
                        u[i, :] -= q * u[t, :]
                    dirty = dirty or bool(d[i, t])
            for j in range(t + 1, n):
                if d[t, j]:
                    q = d[t, j] // p
                    d[:, j] -= q * d[:, t]
                    if v is not None:
                        v[:, j] -= q * v[:, t]
                    dirty = dirty or bool(d[t, j])
            if dirty:
                cross = [(d[i, t], i, t) for i in range(t, m)] + [(d[t, j], t, j) for j in range(t + 1, n)]
                i, j = _smallest_nonzero(cross)
                _bring_to_pivot(d, u, v, t, i, j)
                continue
            rest = d[t + 1:, t + 1:]
            offenders = np.argwhere(rest % p != 0) if rest.size else []
            if len(offenders) == 0:
                break
            row = t + 1 + int(offenders[0][0])
            d[t, :] += d[row, :]
            if u is not None:
                u[t, :] += u[row, :]
        if d[t, t] < 0:
            d[t, :] *= -1
            if u is not None:
                u[t, :] *= -1


def _eye(n: int) -> np.ndarray:
    array = np.zeros((n, n), dtype=object)
    for i in range(n):
        array[i, i] = 1
    return array


def smith_normal_form(a: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``D = U @ A @ V`` diagonal, ``d1 | d2 | ...`` and ``U``, ``V`` unimodular."""
    d = a.to_array()
    u = _eye(a.rows)
    v = _eye(a.cols)
    _diagonalize(d, u, v)
    return IntMatrix.from_array(d), IntMatrix.from_array(u), IntMatrix.from_array(v)


# ==========================
# ❖ Sparse unit pivots     |
# ==========================
def _eliminate_unit_pivots(cols: Dict[int, Dict[int, int]], rows: Dict[int, Set[int]]) -> int:
    """Clear ±1 pivots by column operations, dropping each pivot row and column.

    Pivots are taken column by column (shortest first), choosing the unit entry
    whose row is shortest to keep fill-in small.
    """
    eliminated = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda key: len(cols[key])):
            col = cols.get(c)
            if not col:
                cols.pop(c, None)
                continue
            units = [r for r, value in col.items() if abs(value) == 1]
            if not units:
                continue
            r = min(units, key=lambda key: len(rows[key]))
            sign = col[r]
            for other in list(rows[r]):
                if other == c:
                    continue
                target = cols[other]
                factor = target[r] * sign
                for rr, value in col.items():
                    new = target.get(rr, 0) - factor * value
                    if new:
                        if rr not in target:
                            rows[rr].add(other)
                        target[rr] = new
                    elif rr in target:
                        del target[rr]
                        rows[rr].discard(other)
                if not target:
                    del cols[other]
            for rr in col:
                rows[rr].discard(c)
            rows.pop(r, None)
            del cols[c]
            eliminated += 1
            progress = True
    return eliminated


def elementary_divisors(a: IntMatrix) -> List[int]:
    """Nonzero Smith diagonal of ``a`` in divisibility order."""
    cols: Dict[int, Dict[int, int]] = defaultdict(dict)
    rows: Dict[int, Set[int]] = defaultdict(set)
    for (i, j), value in a.entries.items():
        cols[j][i] = value
        rows[i].add(j)
    units = _eliminate_unit_pivots(cols, rows)

    remaining = [(i, j, value) for j, col in cols.items() for i, value in col.items()]
    divisors: List[int] = []
    if remaining:
        row_ids = {i: k for k, i in enumerate(sorted({i for i, _, _ in remaining}))}
        col_ids = {j: k for k, j in enumerate(sorted({j for _, j, _ in remaining}))}
        dense = np.zeros((len(row_ids), len(col_ids)), dtype=object)
        for i, j, value in remaining:
            dense[row_ids[i], col_ids[j]] = value
        _diagonalize(dense)
        divisors = [abs(x) for x in (dense[t, t] for t in range(min(dense.shape))) if x]
    logger.debug("elementary divisors of %dx%d: %d unit pivots, %d dense", a.rows, a.cols, units, len(divisors))
    return [1] * units + divisors


def rank(a: IntMatrix) -> int:
    return len(elementary_divisors(a))


def kernel_rank(a: IntMatrix) -> int:
    return a.cols - rank(a)


def cokernel(a: IntMatrix) -> FgAbGroup:
    """``Z^rows / im(a)`` in canonical form."""
    divisors = elementary_divisors(a)
    return FgAbGroup(free_rank=a.rows - len(divisors), torsion=tuple(d for d in divisors if d > 1))
