"""YAML configuration loading and run-manifest serialization.

Parse errors are converted to ConfigError with a line/field diagnostic so the
CLI can report them and exit with the dedicated status code.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any

import yaml
from pydantic import ValidationError

from .errors import ConfigError
from .schemas import IndexModelIn, RunRequest, RunResponse


def load_yaml(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ConfigError(
                f"invalid YAML in {path} at line {mark.line + 1}, "
                f"column {mark.column + 1}: {exc}"
            ) from exc
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def _format_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{loc}: {err['msg']}")
    return "invalid configuration: " + "; ".join(parts)


def load_run_request(path: str) -> RunRequest:
    data = load_yaml(path)
    try:
        return RunRequest.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc


def load_index_model(path: str) -> IndexModelIn:
    data = load_yaml(path)
    try:
        return IndexModelIn.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc


def build_manifest(response: RunResponse, outputs: dict[str, str]) -> dict[str, Any]:
    return {
        "name": response.name,
        "kind": response.kind,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "grid_points": response.grid_points,
        "classical_fidelity_limit": response.classical_fidelity_limit,
        "request": response.request.model_dump(mode="json"),
        "outputs": outputs,
    }


def write_manifest(manifest: dict[str, Any], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
