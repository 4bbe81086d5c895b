"""Command records and their execution.

``run`` never raises for bad input: it maps every failure to the exit code
of the command-line contract and returns the text destined for stdout and
stderr, so the click layer and the tests share one code path.
"""
from __future__ import annotations

import json
import logging
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from widgets.abelian import FgAbGroup
from widgets.bundle import classify_6mfd, pullback_index, pullback_total, smale_barden_decompose
from widgets.cli.parser import parse_expr
from widgets.cli.schemas import (
    Classify6Output,
    EvalOutput,
    ExprJson,
    GroupJson,
    HomologyOutput,
    OracleJson,
    Pi1SurfaceOutput,
    PresentationJson,
    PullbackOutput,
    QkOutput,
    SelfTestOutput,
    SuspendOutput,
    TowerJson,
    graded_json,
    output_schema,
)
from widgets.config import Settings, load_settings
from widgets.errors import CalculatorError, DslSyntaxError
from widgets.manifold import (
    ManifoldExpr,
    cohomology,
    euler_characteristic,
    homology,
    is_simply_connected,
    poincare_poly,
    w2_status,
)
from widgets.selftest.suites import run_selftest
from widgets.suspension import abelianize, as_index, surface_pi1, suspend_traced
from widgets.torus import q_manifold, spectral_e3_report, torus_tower

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_SYNTAX = 2


# ==========================
# ❖ Commands               |
# ==========================
class _Command(BaseModel):
    model_config = ConfigDict(frozen=True)


class Eval(_Command):
    expr: str


class Homology(_Command):
    expr: str


class Suspend(_Command):
    expr: str
    index: int = Field(0, ge=0, le=1)
    trace: bool = False


class Pullback(_Command):
    total: str
    base: str
    fibre: str


class Classify6(_Command):
    h2: str
    w2: bool
    euler_eq_w2: bool


class Qk(_Command):
    k: int = Field(..., ge=1)
    oracle: bool = False
    tower: bool = False


class Pi1Surface(_Command):
    g: int = Field(..., ge=0)
    index: int = Field(0, ge=0, le=1)


class SelfTest(_Command):
    max_k: Optional[int] = Field(None, ge=2, le=12)


class Schema(_Command):
    command: Optional[str] = None


Command = Union[Eval, Homology, Suspend, Pullback, Classify6, Qk, Pi1Surface, SelfTest, Schema]


class CommandResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    exit_code: int = EXIT_OK
    stdout: str = ""
    stderr: str = ""


class _Output(BaseModel):
    text: List[str]
    data: Dict[str, Any]
    exit_code: int = EXIT_OK


# ==========================
# ❖ Handlers               |
# ==========================
def homology_frame(m: ManifoldExpr) -> pd.DataFrame:
    """One row per degree: homology, cohomology and Betti number."""
    h, c = homology(m), cohomology(m)
    return pd.DataFrame(
        [{"degree": d, "H_d": str(h.at(d)), "H^d": str(c.at(d)), "b_d": h.at(d).free_rank} for d in range(m.dim + 1)]
    )


def _eval(cmd: Eval, settings: Settings) -> _Output:
    m = parse_expr(cmd.expr)
    return _Output(text=[m.to_dsl()], data=EvalOutput(dsl=m.to_dsl(), expr=ExprJson.of(m)).dump())


def _homology(cmd: Homology, settings: Settings) -> _Output:
    m = parse_expr(cmd.expr)
    table = homology_frame(m)
    poly = poincare_poly(m)
    chi = euler_characteristic(m)
    w2, w2_reason = w2_status(m)
    text = [
        m.to_dsl(),
        table.to_string(index=False),
        f"P_t = {poly}",
        f"chi = {chi}",
        f"w2 unavailable ({w2_reason})" if w2 is None else f"w2 {'!= 0' if w2 else '= 0'}",
        f"simply connected: {'yes' if is_simply_connected(m) else 'no'}",
    ]
    data = HomologyOutput(
        dsl=m.to_dsl(),
        homology=graded_json(homology(m)),
        cohomology=graded_json(cohomology(m)),
        poincare=str(poly),
        euler_characteristic=chi,
        w2_nonzero=w2,
        w2_unavailable=w2_reason,
        simply_connected=is_simply_connected(m),
    )
    return _Output(text=text, data=data.dump())


def _suspend(cmd: Suspend, settings: Settings) -> _Output:
    m = parse_expr(cmd.expr)
    result = suspend_traced(m, cmd.index)
    text = [f"  {rule}" for rule in result.rules] if cmd.trace else []
    text.append(result.expr.to_dsl())
    data = SuspendOutput(
        input=m.to_dsl(),
        index=int(as_index(cmd.index)),
        dsl=result.expr.to_dsl(),
        expr=ExprJson.of(result.expr),
        rules=list(result.rules),
    )
    return _Output(text=text, data=data.dump())


def _pullback(cmd: Pullback, settings: Settings) -> _Output:
    total, base, fibre = parse_expr(cmd.total), parse_expr(cmd.base), parse_expr(cmd.fibre)
    result = pullback_total(total, base, fibre)
    index, reason = pullback_index(total, base)
    text = [result.to_dsl(), f"Sig{int(index)}: {reason}"]
    data = PullbackOutput(dsl=result.to_dsl(), expr=ExprJson.of(result), index=int(index), reason=reason)
    return _Output(text=text, data=data.dump())


def _classify6(cmd: Classify6, settings: Settings) -> _Output:
    h2 = FgAbGroup.from_text(cmd.h2)
    quotient = smale_barden_decompose(h2, cmd.w2)
    result = classify_6mfd(h2, cmd.w2, cmd.euler_eq_w2)
    data = Classify6Output(quotient=quotient.to_dsl(), dsl=result.to_dsl(), expr=ExprJson.of(result), h2=GroupJson.of(h2))
    return _Output(text=[result.to_dsl()], data=data.dump())


def _qk(cmd: Qk, settings: Settings) -> _Output:
    m = q_manifold(cmd.k)
    poly = poincare_poly(m)
    text = [f"Q_{cmd.k} = {m.to_dsl()}", f"P_t = {poly}"]
    oracle: Optional[OracleJson] = None
    tower_json: Optional[TowerJson] = None
    passed = True
    if cmd.oracle:
        report = spectral_e3_report(cmd.k, settings.oracle.workers)
        ok = report.passed and report.poincare == poly
        passed &= ok
        text.append(f"oracle: {'PASS' if ok else 'FAIL'} (E3 P_t = {report.poincare})")
        oracle = OracleJson.model_validate({**report.to_json_dict(), "pass": ok})
    if cmd.tower:
        tower = torus_tower(cmd.k)
        ok = tower == m
        passed &= ok
        text.append(f"tower: {'PASS' if ok else 'FAIL'} ({tower.to_dsl()})")
        tower_json = TowerJson(dsl=tower.to_dsl(), passed=ok)
    data = QkOutput(k=cmd.k, dsl=m.to_dsl(), expr=ExprJson.of(m), poincare=str(poly), oracle=oracle, tower=tower_json)
    return _Output(text=text, data=data.dump(), exit_code=EXIT_OK if passed else EXIT_DOMAIN)


def _pi1_surface(cmd: Pi1Surface, settings: Settings) -> _Output:
    presentation = surface_pi1(cmd.g, cmd.index)
    ab = abelianize(presentation)
    text = [presentation.to_text(), f"abelianization: {ab}"]
    data = Pi1SurfaceOutput(
        presentation=PresentationJson.model_validate(presentation.to_json_dict()),
        abelianization=GroupJson.of(ab),
    )
    return _Output(text=text, data=data.dump())


def _selftest(cmd: SelfTest, settings: Settings) -> _Output:
    table = run_selftest(cmd.max_k, settings)
    data = SelfTestOutput.of(table)
    return _Output(
        text=[table.to_string(index=False)],
        data=data.dump(),
        exit_code=EXIT_OK if data.passed else EXIT_DOMAIN,
    )


def _schema(cmd: Schema, settings: Settings) -> _Output:
    schema = output_schema(cmd.command)
    return _Output(text=[json.dumps(schema, indent=2)], data=schema)


HANDLERS = {
    Eval: _eval,
    Homology: _homology,
    Suspend: _suspend,
    Pullback: _pullback,
    Classify6: _classify6,
    Qk: _qk,
    Pi1Surface: _pi1_surface,
    SelfTest: _selftest,
    Schema: _schema,
}


def run(cmd: Command, as_json: bool = False, settings: Optional[Settings] = None) -> CommandResult:
    settings = settings or load_settings()
    try:
        out = HANDLERS[type(cmd)](cmd, settings)
    except DslSyntaxError as e:
        return CommandResult(exit_code=EXIT_SYNTAX, stderr=f"syntax error: {e}")
    except ValidationError as e:
        return CommandResult(exit_code=EXIT_DOMAIN, stderr=f"error: {e}")
    except CalculatorError as e:
        logger.debug("%s failed: %s", type(cmd).__name__, e)
        return CommandResult(exit_code=EXIT_DOMAIN, stderr=f"error: {e}")
    if as_json:
        body = json.dumps(out.data, indent=settings.output.json_indent or None)
    else:
        body = "\n".join(out.text)
    return CommandResult(exit_code=out.exit_code, stdout=body + "\n")
