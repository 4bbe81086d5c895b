from __future__ import annotations

from pathlib import Path
from typing import Optional

import click
from pydantic import ValidationError

from widgets.cli.commands import (
    EXIT_DOMAIN,
    Classify6,
    Eval,
    Homology,
    Pi1Surface,
    Pullback,
    Qk,
    Schema,
    SelfTest,
    Suspend,
    run,
)
from widgets.cli.schemas import OUTPUT_MODELS
from widgets.config import Settings, configure_logging, load_settings

BIT = click.IntRange(0, 1)


def _emit(ctx: click.Context, command_type, **fields) -> None:
    settings: Settings = ctx.obj["settings"]
    try:
        cmd = command_type(**fields)
    except ValidationError as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(EXIT_DOMAIN)
    result = run(cmd, as_json=ctx.obj["json"], settings=settings)
    if result.stdout:
        click.echo(result.stdout, nl=False)
    if result.stderr:
        click.echo(result.stderr, err=True)
    ctx.exit(result.exit_code)


# ==========================
# ❖ Group                  |
# ==========================
@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
@click.option("--quiet", is_flag=True, help="Only log errors.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Settings file (defaults to settings.yaml at the repository root).",
)
@click.pass_context
def main(ctx: click.Context, as_json: bool, quiet: bool, config_path: Optional[Path]) -> None:
    """Exact calculator for suspensions, circle bundles and torus bundles."""
    try:
        settings = load_settings(config_path)
    except ValidationError as e:
        click.echo(f"error: invalid settings: {e}", err=True)
        ctx.exit(EXIT_DOMAIN)
    configure_logging("ERROR" if quiet else settings.log_level)
    ctx.obj = {"json": as_json, "settings": settings}


# ==========================
# ❖ Subcommands            |
# ==========================
@main.command("eval")
@click.argument("expr")
@click.pass_context
def eval_command(ctx: click.Context, expr: str) -> None:
    """Print the canonical form of EXPR."""
    _emit(ctx, Eval, expr=expr)


@main.command()
@click.argument("expr")
@click.pass_context
def homology(ctx: click.Context, expr: str) -> None:
    """Homology table, Poincaré polynomial and basic invariants of EXPR."""
    _emit(ctx, Homology, expr=expr)


@main.command()
@click.argument("expr")
@click.option("--i", "index", type=BIT, default=0, show_default=True, help="Framing index of the suspension.")
@click.option("--trace", is_flag=True, help="Print the rewrite rules that fired.")
@click.pass_context
def suspend(ctx: click.Context, expr: str, index: int, trace: bool) -> None:
    """Suspend EXPR with Sig0 or Sig1."""
    _emit(ctx, Suspend, expr=expr, index=index, trace=trace)


@main.command()
@click.option("--total", required=True, help="Total space E of the circle bundle.")
@click.option("--base", required=True, help="Base B of the circle bundle.")
@click.argument("fibre")
@click.pass_context
def pullback(ctx: click.Context, total: str, base: str, fibre: str) -> None:
    """Total space of the bundle pulled back to B # FIBRE."""
    _emit(ctx, Pullback, total=total, base=base, fibre=fibre)


@main.command()
@click.option("--h2", required=True, help='Second homology of the quotient, e.g. "Z^2 + Z/3 + Z/3".')
@click.option("--w2", type=BIT, required=True)
@click.option("--euler-eq-w2", type=BIT, required=True, help="1 if the Euler class reduces to w2 mod 2.")
@click.pass_context
def classify6(ctx: click.Context, h2: str, w2: int, euler_eq_w2: int) -> None:
    """Normal form of a 1-connected 6-manifold with a free circle action."""
    _emit(ctx, Classify6, h2=h2, w2=bool(w2), euler_eq_w2=bool(euler_eq_w2))


@main.command()
@click.option("--k", "k", type=int, required=True, help="Second Betti number of the base 4-manifold.")
@click.option("--oracle", is_flag=True, help="Cross-check against the E3 page.")
@click.option("--tower", is_flag=True, help="Cross-check against the circle-by-circle tower.")
@click.pass_context
def qk(ctx: click.Context, k: int, oracle: bool, tower: bool) -> None:
    """Total space of the full torus bundle over a 1-connected 4-manifold."""
    _emit(ctx, Qk, k=k, oracle=oracle, tower=tower)


@main.command("pi1-surface")
@click.option("--g", "g", type=int, required=True, help="Genus.")
@click.option("--i", "index", type=BIT, default=0, show_default=True)
@click.pass_context
def pi1_surface(ctx: click.Context, g: int, index: int) -> None:
    """Presentation of pi_1 of a suspended surface."""
    _emit(ctx, Pi1Surface, g=g, index=index)


@main.command()
@click.option("--max-k", type=int, default=None, help="Largest k for the torus-bundle suites.")
@click.pass_context
def selftest(ctx: click.Context, max_k: Optional[int]) -> None:
    """Run the acceptance suites and print a pass/fail table."""
    _emit(ctx, SelfTest, max_k=max_k)


@main.command()
@click.argument("command", type=click.Choice(list(OUTPUT_MODELS)), required=False)
@click.pass_context
def schema(ctx: click.Context, command: Optional[str]) -> None:
    """JSON schema of the --json output of COMMAND (of every subcommand if omitted)."""
    _emit(ctx, Schema, command=command)


if __name__ == "__main__":
    main()
