from __future__ import annotations

import logging
import sys
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field

# =======================
# ❖ Config / Constants  |
# =======================
SETTINGS_PATH = Path(__file__).resolve().parent.parent / "settings.yaml"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class OracleSettings(BaseModel):
    workers: int = Field(1, ge=1, le=64)


class SelfTestSettings(BaseModel):
    max_k: int = Field(12, ge=2, le=12)
    tower_max_k: int = Field(8, ge=1, le=8)
    random_samples: int = Field(200, ge=1)
    snf_samples: int = Field(1000, ge=1)
    seed: int = 20240607


class OutputSettings(BaseModel):
    json_indent: int = Field(2, ge=0)


class Settings(BaseModel):
    log_level: str = Field("WARNING", pattern="^(DEBUG|INFO|WARNING|ERROR)$")
    oracle: OracleSettings = OracleSettings()
    selftest: SelfTestSettings = SelfTestSettings()
    output: OutputSettings = OutputSettings()


def read_settings_file(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        return yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError:
        return {}


@lru_cache(maxsize=8)
def load_settings(path: Optional[Path] = None) -> Settings:
    """Read and validate ``settings.yaml``; absent keys fall back to defaults."""
    return Settings.model_validate(read_settings_file(path or SETTINGS_PATH))


def configure_logging(level: str = "WARNING") -> None:
    root = logging.getLogger("widgets")
    root.setLevel(level)
    for h in root.handlers:
        if getattr(h, "_calc_handler", False):
            h.setStream(sys.stderr)
            return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._calc_handler = True  # type: ignore[attr-defined]
    root.addHandler(handler)
