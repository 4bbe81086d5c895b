from widgets.cli.commands import CommandResult, homology_frame, run
from widgets.cli.parser import format_expr, parse_expr, tokenize
from widgets.cli.schemas import OUTPUT_MODELS, output_schema

__all__ = [
    "OUTPUT_MODELS",
    "CommandResult",
    "format_expr",
    "homology_frame",
    "output_schema",
    "parse_expr",
    "run",
    "tokenize",
]
