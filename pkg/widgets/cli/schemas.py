"""Typed ``--json`` output of every subcommand.

Handlers fill these models and dump them by alias; ``output_schema`` publishes
``model_json_schema()`` of each, which the ``schema`` subcommand prints.
"""
from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Type, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from widgets.abelian import FgAbGroup, GradedGroup
from widgets.errors import CalculatorError
from widgets.manifold import ManifoldExpr


class _Schema(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    def dump(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)


# ==========================
# ❖ Shared values          |
# ==========================
class GroupJson(_Schema):
    rank: int = Field(..., ge=0)
    torsion: List[int]

    @classmethod
    def of(cls, g: FgAbGroup) -> "GroupJson":
        return cls.model_validate(g.to_json_dict())


GradedJson = Dict[str, GroupJson]


def graded_json(g: GradedGroup) -> GradedJson:
    return {d: GroupJson.model_validate(v) for d, v in g.to_json_dict().items()}


class AtomJson(_Schema):
    kind: str
    params: List[Union[int, str]]
    count: int = Field(..., ge=1)
    inner: Optional["ExprJson"] = None


class ExprJson(_Schema):
    dim: int = Field(..., ge=1)
    atoms: List[AtomJson]

    @classmethod
    def of(cls, m: ManifoldExpr) -> "ExprJson":
        return cls.model_validate(m.to_json_dict())


AtomJson.model_rebuild()
ExprJson.model_rebuild()


# ==========================
# ❖ Per-command output     |
# ==========================
class EvalOutput(_Schema):
    dsl: str
    expr: ExprJson


class HomologyOutput(_Schema):
    dsl: str
    homology: GradedJson
    cohomology: GradedJson
    poincare: str
    euler_characteristic: int
    w2_nonzero: Optional[bool] = Field(..., description="null when w2 of a suspension summand is not determined")
    w2_unavailable: Optional[str] = None
    simply_connected: bool


class SuspendOutput(_Schema):
    input: str
    index: int = Field(..., ge=0, le=1)
    dsl: str
    expr: ExprJson
    rules: List[str]


class PullbackOutput(_Schema):
    dsl: str
    expr: ExprJson
    index: int = Field(..., ge=0, le=1)
    reason: str


class Classify6Output(_Schema):
    quotient: str
    dsl: str
    expr: ExprJson
    h2: GroupJson


class OracleJson(_Schema):
    k: int
    poincare: str
    e3_ranks: Dict[str, int]
    d2_ranks: Dict[str, int]
    torsion_free: bool
    d2_squared_zero: bool
    blocks_match: bool
    top_class_only: bool
    passed: bool = Field(..., alias="pass")


class TowerJson(_Schema):
    dsl: str
    passed: bool = Field(..., alias="pass")


class QkOutput(_Schema):
    k: int = Field(..., ge=1)
    dsl: str
    expr: ExprJson
    poincare: str
    oracle: Optional[OracleJson] = None
    tower: Optional[TowerJson] = None


class PresentationJson(_Schema):
    generators: List[str]
    relators: List[str]


class Pi1SurfaceOutput(_Schema):
    presentation: PresentationJson
    abelianization: GroupJson


class SuiteRow(_Schema):
    suite: str
    cases: int = Field(..., ge=0)
    passed: int = Field(..., ge=0)
    status: Literal["PASS", "FAIL"]
    seconds: float
    first_failures: str = Field(..., alias="first failures")


class SelfTestOutput(_Schema):
    suites: List[SuiteRow]
    passed: bool = Field(..., alias="pass")

    @classmethod
    def of(cls, table: pd.DataFrame) -> "SelfTestOutput":
        rows = [
            SuiteRow(
                suite=str(r["suite"]),
                cases=int(r["cases"]),
                passed=int(r["passed"]),
                status=str(r["status"]),
                seconds=float(r["seconds"]),
                first_failures=str(r["first failures"]),
            )
            for r in table.to_dict(orient="records")
        ]
        return cls(suites=rows, passed=all(r.status == "PASS" for r in rows))


OUTPUT_MODELS: Dict[str, Type[_Schema]] = {
    "eval": EvalOutput,
    "homology": HomologyOutput,
    "suspend": SuspendOutput,
    "pullback": PullbackOutput,
    "classify6": Classify6Output,
    "qk": QkOutput,
    "pi1-surface": Pi1SurfaceOutput,
    "selftest": SelfTestOutput,
}


def output_schema(command: Optional[str] = None) -> Dict[str, Any]:
    """JSON schema of one subcommand's ``--json`` output, or of all of them keyed by name."""
    if command is None:
        return {name: model.model_json_schema() for name, model in OUTPUT_MODELS.items()}
    if command not in OUTPUT_MODELS:
        raise CalculatorError(f"no JSON output schema for {command!r}; known: {', '.join(OUTPUT_MODELS)}")
    return OUTPUT_MODELS[command].model_json_schema()
