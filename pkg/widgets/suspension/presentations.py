"""Group presentations for fundamental groups of suspended surfaces."""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from widgets.abelian import FgAbGroup, IntMatrix, cokernel
from widgets.errors import InvalidAtomError
from widgets.suspension.rules import FramingIndex, IndexLike, as_index

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


def free_reduce(word: Sequence[Letter]) -> Word:
    out: List[Letter] = []
    for gen, exp in word:
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


def commutator(x: str, y: str) -> Word:
    return ((x, 1), (y, 1), (x, -1), (y, -1))


class GroupPresentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: Tuple[str, ...] = ()
    relators: Tuple[Word, ...] = ()

    @model_validator(mode="after")
    def _relators_use_generators(self):
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError("duplicate generator names")
        for word in self.relators:
            for gen, exp in word:
                if gen not in known:
                    raise ValueError(f"relator uses undeclared generator {gen!r}")
                if exp not in (1, -1):
                    raise ValueError(f"letter exponent must be +1 or -1, got {exp}")
            if free_reduce(word) != tuple(word):
                raise ValueError("relators must be freely reduced")
        return self

    @staticmethod
    def word_text(word: Word) -> str:
        return "*".join(gen if exp == 1 else f"{gen}^-1" for gen, exp in word) or "1"

    def to_text(self) -> str:
        return f"<{','.join(self.generators)} | {', '.join(self.word_text(w) for w in self.relators)}>"

    def to_json_dict(self) -> Dict[str, List[str]]:
        return {"generators": list(self.generators), "relators": [self.word_text(w) for w in self.relators]}

    def __str__(self) -> str:
        return self.to_text()


def surface_pi1(g: int, i: IndexLike) -> GroupPresentation:
    """Fundamental group of the suspension of the genus ``g`` surface."""
    if g < 0:
        raise InvalidAtomError(f"genus must be >= 0, got {g}")
    index = as_index(i)
    if g == 0:
        return GroupPresentation()
    gens = [name for j in range(1, g + 1) for name in (f"a{j}", f"b{j}")]
    if index is FramingIndex.IDENTITY:
        return GroupPresentation(generators=tuple(gens))
    relators: List[Word] = [commutator(x, "z") for x in gens]
    product: List[Letter] = [("z", 1)]
    for j in range(1, g + 1):
        product.extend(commutator(f"a{j}", f"b{j}"))
    relators.append(free_reduce(product))
    return GroupPresentation(generators=tuple(gens) + ("z",), relators=tuple(relators))


def abelianize(p: GroupPresentation) -> FgAbGroup:
    """Exponent-sum matrix of the relators (generators x relators), then its cokernel."""
    position = {gen: row for row, gen in enumerate(p.generators)}
    entries: Dict[Tuple[int, int], int] = {}
    for col, word in enumerate(p.relators):
        for gen, exp in word:
            key = (position[gen], col)
            entries[key] = entries.get(key, 0) + exp
    return cokernel(IntMatrix(len(p.generators), len(p.relators), entries))
