"""Atoms and formal connected sums.

A ``ManifoldExpr`` holds a multiset of equal-dimensional atoms as
``(atom, count)`` terms; ``canonicalize`` (and every constructor in this module)
merges equal atoms, sorts them by ``Atom.sort_key``, absorbs spheres and adds
up the genera of surface summands, so canonical expressions compare
structurally.
"""
from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from widgets.errors import DimensionMismatchError, InvalidAtomError


# =======================
# ❖ Atom kinds          |
# =======================
class AtomKind(str, Enum):
    SPHERE = "Sphere"
    SPHERE_PRODUCT = "SphereProduct"
    TWISTED_PRODUCT = "TwistedProduct"
    PROJECTIVE_SPACE = "ProjectiveSpace"
    WU = "WuManifold"
    M = "M"
    X = "X"
    SURFACE = "Surface"
    SUSPENSION = "SymbolicSuspension"


KIND_ORDER: Dict[AtomKind, int] = {kind: rank for rank, kind in enumerate(AtomKind)}
FIELD_ORDER = {None: 0, "C": 1, "H": 2}
FIELD_DEGREE = {"C": 2, "H": 4}

# kind -> number of integer params
ARITY: Dict[AtomKind, int] = {
    AtomKind.SPHERE: 1,
    AtomKind.SPHERE_PRODUCT: 2,
    AtomKind.TWISTED_PRODUCT: 1,
    AtomKind.PROJECTIVE_SPACE: 1,
    AtomKind.WU: 0,
    AtomKind.M: 1,
    AtomKind.X: 1,
    AtomKind.SURFACE: 1,
    AtomKind.SUSPENSION: 1,
}


def _check_atom(kind: AtomKind, params: Tuple[int, ...], field: Optional[str], inner) -> None:
    if len(params) != ARITY[kind]:
        raise InvalidAtomError(f"{kind.value} takes {ARITY[kind]} parameter(s), got {len(params)}")
    if (field is not None) != (kind is AtomKind.PROJECTIVE_SPACE):
        raise InvalidAtomError(f"field is only meaningful for ProjectiveSpace, got {field!r}")
    if (inner is not None) != (kind is AtomKind.SUSPENSION):
        raise InvalidAtomError("only SymbolicSuspension carries an inner expression")
    if kind is AtomKind.SPHERE and params[0] < 1:
        raise InvalidAtomError(f"sphere dimension must be >= 1, got {params[0]}")
    if kind is AtomKind.SPHERE_PRODUCT and not 1 <= params[0] <= params[1]:
        raise InvalidAtomError(f"sphere product needs 1 <= p <= q, got {params}")
    if kind is AtomKind.TWISTED_PRODUCT and params[0] < 2:
        raise InvalidAtomError(f"twisted product fibre dimension must be >= 2, got {params[0]}")
    if kind is AtomKind.PROJECTIVE_SPACE:
        if field not in FIELD_DEGREE:
            raise InvalidAtomError(f"projective space field must be C or H, got {field!r}")
        if params[0] < 1:
            raise InvalidAtomError(f"projective space dimension must be >= 1, got {params[0]}")
    if kind is AtomKind.M and params[0] < 2:
        raise InvalidAtomError(f"M(k) needs k >= 2, got {params[0]}")
    if kind is AtomKind.X and params[0] < 1:
        raise InvalidAtomError(f"X(i) needs i >= 1, got {params[0]}")
    if kind is AtomKind.SURFACE and params[0] < 0:
        raise InvalidAtomError(f"genus must be >= 0, got {params[0]}")
    if kind is AtomKind.SUSPENSION:
        if params[0] not in (0, 1):
            raise InvalidAtomError(f"suspension index must be 0 or 1, got {params[0]}")
        if inner.dim < 2:
            raise InvalidAtomError(f"cannot suspend a {inner.dim}-manifold")


# =======================
# ❖ Atom                |
# =======================
class Atom(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: AtomKind
    params: Tuple[int, ...] = ()
    field: Optional[str] = None
    inner: Optional["ManifoldExpr"] = None

    @model_validator(mode="after")
    def _valid(self):
        _check_atom(self.kind, self.params, self.field, self.inner)
        return self

    @property
    def dim(self) -> int:
        kind, p = self.kind, self.params
        if kind is AtomKind.SPHERE:
            return p[0]
        if kind is AtomKind.SPHERE_PRODUCT:
            return p[0] + p[1]
        if kind is AtomKind.TWISTED_PRODUCT:
            return p[0] + 2
        if kind is AtomKind.PROJECTIVE_SPACE:
            return FIELD_DEGREE[self.field] * p[0]
        if kind in (AtomKind.WU, AtomKind.M, AtomKind.X):
            return 5
        if kind is AtomKind.SURFACE:
            return 2
        return self.inner.dim + 1

    @property
    def index(self) -> Optional[int]:
        return self.params[0] if self.kind is AtomKind.SUSPENSION else None

    def sort_key(self) -> Tuple:
        inner_key = self.inner.sort_key() if self.inner is not None else ()
        return KIND_ORDER[self.kind], FIELD_ORDER[self.field], self.params, inner_key

    def to_dsl(self) -> str:
        kind, p = self.kind, self.params
        if kind is AtomKind.SPHERE:
            return f"S({p[0]})"
        if kind is AtomKind.SPHERE_PRODUCT:
            return f"SxS({p[0]},{p[1]})"
        if kind is AtomKind.TWISTED_PRODUCT:
            return f"TwS({p[0]})"
        if kind is AtomKind.PROJECTIVE_SPACE:
            return f"{self.field}P({p[0]})"
        if kind is AtomKind.WU:
            return "W"
        if kind is AtomKind.M:
            return f"M({p[0]})"
        if kind is AtomKind.X:
            return f"X({p[0]})"
        if kind is AtomKind.SURFACE:
            return f"Surf({p[0]})"
        return f"Sig{p[0]}({self.inner.to_dsl()})"

    def to_json_dict(self) -> Dict[str, Any]:
        params: List[Any] = list(self.params)
        if self.field is not None:
            params = [self.field, *params]
        out: Dict[str, Any] = {"kind": self.kind.value, "params": params}
        if self.inner is not None:
            out["inner"] = self.inner.to_json_dict()
        return out

    def __str__(self) -> str:
        return self.to_dsl()


# =======================
# ❖ ManifoldExpr        |
# =======================
class ManifoldExpr(BaseModel):
    """Formal connected sum in dimension ``dim``: ``terms`` pairs each atom with its multiplicity.

    No terms means ``S^dim``.
    """

    model_config = ConfigDict(frozen=True)

    dim: int
    terms: Tuple[Tuple[Atom, int], ...] = ()

    @model_validator(mode="after")
    def _same_dimension(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        for atom, count in self.terms:
            if count < 1:
                raise ValueError(f"multiplicity of {atom.to_dsl()} must be >= 1, got {count}")
            if atom.dim != self.dim:
                raise ValueError(f"dimension mismatch {self.dim} vs {atom.dim}")
        return self

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        """Distinct atoms, in term order."""
        return tuple(atom for atom, _ in self.terms)

    @property
    def summand_count(self) -> int:
        return sum(count for _, count in self.terms)

    def count(self, atom: Atom) -> int:
        return sum(c for a, c in self.terms if a == atom)

    @property
    def is_sphere(self) -> bool:
        return all(a.kind is AtomKind.SPHERE for a, _ in self.terms)

    @property
    def is_canonical(self) -> bool:
        return canonicalize(self) == self

    def multiplicities(self) -> List[Tuple[Atom, int]]:
        counts: Dict[Atom, int] = {}
        for atom, count in self.terms:
            counts[atom] = counts.get(atom, 0) + count
        return sorted(counts.items(), key=lambda item: item[0].sort_key())

    def sort_key(self) -> Tuple:
        return self.dim, tuple((a.sort_key(), c) for a, c in self.terms)

    def to_dsl(self) -> str:
        if self.is_sphere:
            return f"S({self.dim})"
        terms = []
        for atom, count in self.multiplicities():
            if atom.kind is AtomKind.SPHERE:
                continue
            text = atom.to_dsl()
            terms.append(text if count == 1 else f"{count}*{text}")
        return " # ".join(terms)

    def to_json_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "atoms": [{**a.to_json_dict(), "count": c} for a, c in self.terms]}

    def __str__(self) -> str:
        return self.to_dsl()


Atom.model_rebuild()


# =======================
# ❖ Atom constructors   |
# =======================
def sphere(n: int) -> Atom:
    if n < 1:
        raise InvalidAtomError(f"sphere dimension must be >= 1, got {n}")
    return Atom(kind=AtomKind.SPHERE, params=(n,))


def sphere_product(p: int, q: int) -> Atom:
    if p > q:
        p, q = q, p
    if p < 1:
        raise InvalidAtomError(f"sphere product factors must have dimension >= 1, got {p}")
    return Atom(kind=AtomKind.SPHERE_PRODUCT, params=(p, q))


def twisted_product(q: int) -> Atom:
    if q < 2:
        raise InvalidAtomError(f"twisted product fibre dimension must be >= 2, got {q}")
    return Atom(kind=AtomKind.TWISTED_PRODUCT, params=(q,))


def projective_space(field: str, n: int) -> Atom:
    if field not in FIELD_DEGREE:
        raise InvalidAtomError(f"projective space field must be C or H, got {field!r}")
    if n < 1:
        raise InvalidAtomError(f"projective space dimension must be >= 1, got {n}")
    if n == 1:
        return sphere(FIELD_DEGREE[field])
    return Atom(kind=AtomKind.PROJECTIVE_SPACE, params=(n,), field=field)


def wu_manifold() -> Atom:
    return Atom(kind=AtomKind.WU)


def m_atom(k: int) -> Atom:
    if k < 2:
        raise InvalidAtomError(f"M(k) needs k >= 2, got {k}")
    return Atom(kind=AtomKind.M, params=(k,))


def x_atom(i: int) -> Atom:
    if i < 1:
        raise InvalidAtomError(f"X(i) needs i >= 1, got {i}")
    return Atom(kind=AtomKind.X, params=(i,))


def surface(g: int) -> Atom:
    if g < 0:
        raise InvalidAtomError(f"genus must be >= 0, got {g}")
    if g == 0:
        return sphere(2)
    if g == 1:
        return sphere_product(1, 1)
    return Atom(kind=AtomKind.SURFACE, params=(g,))


def symbolic_suspension(i: int, inner: ManifoldExpr) -> Atom:
    if i not in (0, 1):
        raise InvalidAtomError(f"suspension index must be 0 or 1, got {i}")
    if inner.dim < 2:
        raise InvalidAtomError(f"cannot suspend a {inner.dim}-manifold")
    return Atom(kind=AtomKind.SUSPENSION, params=(i,), inner=canonicalize(inner))


# =======================
# ❖ Sums                |
# =======================
def _genus(atom: Atom) -> Optional[int]:
    if atom.kind is AtomKind.SURFACE:
        return atom.params[0]
    if atom == sphere_product(1, 1):
        return 1
    return None


def _merge(dim: int, pairs: Iterable[Tuple[Atom, int]]) -> ManifoldExpr:
    counts: Dict[Atom, int] = {}
    for atom, count in pairs:
        if count and atom.kind is not AtomKind.SPHERE:
            counts[atom] = counts.get(atom, 0) + count
    counts = {atom: count for atom, count in counts.items() if count > 0}
    if dim == 2 and counts:
        # surfaces add genera
        genera = [_genus(atom) for atom in counts]
        if None not in genera:
            total = sum(g * c for g, c in zip(genera, counts.values()))
            counts = {surface(total): 1}
    terms = sorted(counts.items(), key=lambda item: item[0].sort_key())
    return ManifoldExpr(dim=dim, terms=tuple(terms))


def canonicalize(m: ManifoldExpr) -> ManifoldExpr:
    return _merge(m.dim, m.terms)


def expr_of(*atoms: Atom, dim: Optional[int] = None) -> ManifoldExpr:
    """Canonical connected sum of ``atoms`` (``dim`` is required when ``atoms`` is empty)."""
    if dim is None:
        if not atoms:
            raise ValueError("dimension of an empty sum must be given")
        dim = atoms[0].dim
    for atom in atoms:
        if atom.dim != dim:
            raise DimensionMismatchError(dim, atom.dim)
    return _merge(dim, ((atom, 1) for atom in atoms))


def sphere_expr(n: int) -> ManifoldExpr:
    return ManifoldExpr(dim=n)


def repeated(atom: Atom, count: int) -> ManifoldExpr:
    if count < 0:
        raise ValueError(f"multiplicity must be >= 0, got {count}")
    return _merge(atom.dim, ((atom, count),))


def multiple(m: ManifoldExpr, count: int) -> ManifoldExpr:
    """``count``-fold connected sum of ``m`` with itself."""
    if count < 0:
        raise ValueError(f"multiplicity must be >= 0, got {count}")
    return _merge(m.dim, ((atom, c * count) for atom, c in m.terms))


def connected_sum(a: ManifoldExpr, b: ManifoldExpr) -> ManifoldExpr:
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)
    return _merge(a.dim, a.terms + b.terms)


def sum_all(parts: Iterable[ManifoldExpr], dim: int) -> ManifoldExpr:
    pairs: List[Tuple[Atom, int]] = []
    for part in parts:
        if part.dim != dim:
            raise DimensionMismatchError(dim, part.dim)
        pairs.extend(part.terms)
    return _merge(dim, pairs)


def remove_atom(m: ManifoldExpr, atom: Atom) -> ManifoldExpr:
    """``m`` with one copy of ``atom`` split off; raises ``ValueError`` if absent."""
    if m.count(atom) < 1:
        raise ValueError(f"{atom.to_dsl()} is not a summand of {m.to_dsl()}")
    return _merge(m.dim, [*m.terms, (atom, -1)])
