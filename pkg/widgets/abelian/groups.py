"""Finitely generated abelian groups, graded groups and Poincaré polynomials.

Torsion is always stored as invariant factors ``d1 | d2 | ...`` so that two
groups are equal exactly when their fields are equal.
"""
from __future__ import annotations

import re
from collections import defaultdict
from math import prod
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import factorint

from widgets.errors import CalculatorError, NegativeDegreeError

_TERM_RE = re.compile(r"^Z(?:\^(\d+))?$|^Z/(\d+)$|^0$")


# ==========================
# ❖ FgAbGroup              |
# ==========================
class FgAbGroup(BaseModel):
    """``Z^free_rank ⊕ Z/d1 ⊕ Z/d2 ⊕ ...`` with ``d1 | d2 | ...``."""

    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(0, ge=0)
    torsion: Tuple[int, ...] = ()

    @field_validator("torsion")
    @classmethod
    def _divisibility_chain(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        for d in value:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} must be >= 2")
        for a, b in zip(value, value[1:]):
            if b % a:
                raise ValueError(f"torsion {list(value)} is not a divisibility chain")
        return value

    # ---- constructors
    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(free_rank=rank)

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "FgAbGroup":
        """Canonicalize ``Z^free_rank ⊕ ⊕ Z/orders`` (orders of 0 count as Z, 1 is dropped)."""
        extra_free = 0
        powers: Dict[int, List[int]] = defaultdict(list)
        for n in orders:
            n = abs(int(n))
            if n == 0:
                extra_free += 1
                continue
            for p, e in factorint(n).items():
                powers[p].append(e)
        return cls(free_rank=free_rank + extra_free, torsion=invariant_factors(powers))

    @classmethod
    def from_text(cls, text: str) -> "FgAbGroup":
        """Parse ``Z^r + Z/d1 + Z/d2 + ...`` (also ``Z``, ``0``)."""
        free_rank = 0
        orders: List[int] = []
        for raw in text.split("+"):
            term = raw.strip().replace(" ", "")
            m = _TERM_RE.match(term)
            if not m:
                raise CalculatorError(f"cannot read group term {raw.strip()!r}")
            if term == "0":
                continue
            if m.group(2) is not None:
                orders.append(int(m.group(2)))
            else:
                free_rank += int(m.group(1)) if m.group(1) else 1
        return cls.from_orders(free_rank, orders)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FgAbGroup":
        return cls.from_orders(int(data.get("rank", 0)), data.get("torsion", []))

    # ---- queries
    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def order_of_torsion(self) -> int:
        return prod(self.torsion)

    def primary_parts(self) -> Dict[int, List[int]]:
        """Elementary divisors grouped by prime: ``{p: [e1 >= e2 >= ...]}``."""
        parts: Dict[int, List[int]] = defaultdict(list)
        for d in self.torsion:
            for p, e in factorint(d).items():
                parts[p].append(e)
        return {p: sorted(es, reverse=True) for p, es in sorted(parts.items())}

    def to_json_dict(self) -> Dict[str, object]:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def times(self, n: int) -> "FgAbGroup":
        """Direct sum of ``n`` copies."""
        if n < 0:
            raise ValueError(f"multiplicity must be >= 0, got {n}")
        return FgAbGroup(free_rank=self.free_rank * n, torsion=tuple(d for d in self.torsion for _ in range(n)))

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return direct_sum(self, other)

    def __str__(self) -> str:
        terms: List[str] = []
        if self.free_rank == 1:
            terms.append("Z")
        elif self.free_rank > 1:
            terms.append(f"Z^{self.free_rank}")
        terms.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(terms) if terms else "0"


def invariant_factors(powers: Mapping[int, List[int]]) -> Tuple[int, ...]:
    # largest invariant factor takes the largest power of every prime, and so on
    columns = {p: sorted(es, reverse=True) for p, es in powers.items() if es}
    length = max((len(es) for es in columns.values()), default=0)
    factors = []
    for i in range(length):
        factors.append(prod(p ** es[i] for p, es in columns.items() if i < len(es)))
    return tuple(reversed(factors))


def direct_sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    if not b.torsion:
        return FgAbGroup(free_rank=a.free_rank + b.free_rank, torsion=a.torsion)
    if not a.torsion:
        return FgAbGroup(free_rank=a.free_rank + b.free_rank, torsion=b.torsion)
    return FgAbGroup.from_orders(a.free_rank + b.free_rank, a.torsion + b.torsion)


# ==========================
# ❖ IntPolynomial          |
# ==========================
class IntPolynomial(BaseModel):
    """Integer polynomial in ``t``; ``coefficients[i]`` is the coefficient of ``t^i``."""

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _trim(cls, data):
        if isinstance(data, dict) and "coefficients" in data:
            coeffs = list(data["coefficients"])
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            data = {**data, "coefficients": tuple(coeffs)}
        return data

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "IntPolynomial":
        if not terms:
            return cls()
        top = max(terms)
        coeffs = [0] * (top + 1)
        for d, c in terms.items():
            if d < 0:
                raise NegativeDegreeError(f"negative degree {d}")
            coeffs[d] += c
        return cls(coefficients=coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def evaluate(self, t: int) -> int:
        return sum(c * t ** i for i, c in enumerate(self.coefficients))

    def alternating_sum(self) -> int:
        return self.evaluate(-1)

    def is_palindromic(self, n: Optional[int] = None) -> bool:
        n = self.degree if n is None else n
        return all(self.coefficient(i) == self.coefficient(n - i) for i in range(n + 1))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(coefficients=[self.coefficient(i) + other.coefficient(i) for i in range(size)])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(coefficients=[self.coefficient(i) - other.coefficient(i) for i in range(size)])

    def __str__(self) -> str:
        out = ""
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else ("+" if out else "")
            out += sign + body
        return out or "0"


# ==========================
# ❖ GradedGroup            |
# ==========================
class GradedGroup(BaseModel):
    """Degreewise abelian groups with finite support; zero groups are not stored."""

    model_config = ConfigDict(frozen=True)

    parts: Tuple[Tuple[int, FgAbGroup], ...] = ()

    @field_validator("parts")
    @classmethod
    def _sparse_sorted(cls, value):
        cleaned = {}
        for degree, group in value:
            if degree < 0:
                raise NegativeDegreeError(f"negative degree {degree}")
            if degree in cleaned:
                raise ValueError(f"degree {degree} listed twice")
            cleaned[degree] = group
        return tuple((d, g) for d, g in sorted(cleaned.items()) if not g.is_trivial)

    @classmethod
    def from_mapping(cls, groups: Mapping[int, FgAbGroup]) -> "GradedGroup":
        return cls(parts=tuple(groups.items()))

    @classmethod
    def free_in_degrees(cls, ranks: Mapping[int, int]) -> "GradedGroup":
        return cls.from_mapping({d: FgAbGroup.free(r) for d, r in ranks.items() if r})

    def as_dict(self) -> Dict[int, FgAbGroup]:
        return dict(self.parts)

    def at(self, degree: int) -> FgAbGroup:
        return self.as_dict().get(degree, FgAbGroup())

    def degrees(self) -> List[int]:
        return [d for d, _ in self.parts]

    @property
    def top_degree(self) -> int:
        return self.parts[-1][0] if self.parts else 0

    def reduced(self) -> "GradedGroup":
        """Drop one free generator in degree 0 (reduced homology)."""
        groups = self.as_dict()
        g0 = groups.get(0, FgAbGroup())
        if g0.free_rank:
            groups[0] = FgAbGroup(free_rank=g0.free_rank - 1, torsion=g0.torsion)
        return GradedGroup.from_mapping(groups)

    def without_degree(self, degree: int) -> "GradedGroup":
        return GradedGroup.from_mapping({d: g for d, g in self.parts if d != degree})

    def to_json_dict(self) -> Dict[str, object]:
        return {str(d): g.to_json_dict() for d, g in self.parts}

    def times(self, n: int) -> "GradedGroup":
        return GradedGroup.from_mapping({d: g.times(n) for d, g in self.parts})

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        return graded_sum(self, other)


def graded_sum(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    groups = a.as_dict()
    for d, g in b.parts:
        groups[d] = direct_sum(groups[d], g) if d in groups else g
    return GradedGroup.from_mapping(groups)


def shift(g: GradedGroup, d: int) -> GradedGroup:
    if g.parts and g.parts[0][0] + d < 0:
        raise NegativeDegreeError(f"negative degree {g.parts[0][0] + d} after shift by {d}")
    return GradedGroup.from_mapping({degree + d: group for degree, group in g.parts})


def poincare_polynomial(g: GradedGroup) -> IntPolynomial:
    return IntPolynomial.from_terms({d: group.free_rank for d, group in g.parts})
