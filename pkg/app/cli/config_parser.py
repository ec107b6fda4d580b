"""
Experiment configuration loading: JSON file, then flag overrides, then
validation into the command's model
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type

from pydantic import BaseModel, ValidationError

from app.errors import ConfigError
from app.models.experiment import (
    CoeffsConfig,
    ConvergenceConfig,
    MLConfig,
    ScanConfig,
    SolveConfig,
)

logger = logging.getLogger(__name__)

CONFIG_MODELS: Dict[str, Type[BaseModel]] = {
    "solve": SolveConfig,
    "scan-stability": ScanConfig,
    "coeffs": CoeffsConfig,
    "ml": MLConfig,
    "convergence": ConvergenceConfig,
}


def load_config_file(path: str) -> Dict[str, Any]:
    try:
        with Path(path).open() as handle:
            data = json.load(handle)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}", key="config") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}", key="config") from e
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", key="config")
    return data


def parse_config(
    command: str,
    path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> BaseModel:
    """
    Build the validated config for command. Flag values that are not None
    replace file values key by key.

    Raises:
        ConfigError: unknown command or key, missing key or invalid value;
            the error names the offending key
    """
    model = CONFIG_MODELS.get(command)
    if model is None:
        raise ConfigError(f"unknown command {command!r}", key="command")
    data = load_config_file(path) if path else {}
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(data.get(key), str):
            # "ic": "mode" in the file plus --ic-n on the command line
            value = {"kind": data[key], **value}
        elif isinstance(value, dict) and isinstance(data.get(key), dict):
            value = {**data[key], **value}
        data[key] = value
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigError(first["msg"], key=key) from e
