"""Command line client for the simulation service.

By default requests are executed in-process against the bundled app, so no
server needs to be running.  Pass --server to talk to a remote instance.
Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import asyncio
import csv
import os
import sys
from typing import Any

import click
import httpx

from .config import (
    build_manifest,
    load_index_model,
    load_run_request,
    write_manifest,
)
from .errors import ConfigError
from .schemas import RunRequest, RunResponse

TELEPORTATION_COLUMNS = [
    "scenario",
    "input_state",
    "outcome",
    "probability",
    "fidelity_pre_noise",
    "fidelity_final",
    "abs_lambda",
    "concurrence",
    "chsh_max",
]
SWEEP_COLUMNS = ["sweep", "target", "side", "x_lambda0", "fidelity", "classical_limit"]

OUTPUT_DIR_ENV = "TELESIM_OUT"
DEFAULT_OUTPUT_DIR = "telesim-results"

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _call(server: str | None, method: str, path: str, payload: Any = None) -> httpx.Response:
    if server is not None:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.request(method, path, json=payload)

    from .service import app

    async def _dispatch() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://telesim", timeout=600.0
        ) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(_dispatch())


def _cell(value: Any) -> str:
    # repr() keeps full float precision so reruns are byte-identical
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: str, columns: list[str], rows: list[dict[str, Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[col]) for col in columns])


@click.group()
def main() -> None:
    """Simulate noise-restored teleportation and purification sweeps."""


@main.command()
@click.argument("target")
@click.option(
    "--out",
    "out_dir",
    default=None,
    help=f"Output directory (default: ${OUTPUT_DIR_ENV} or {DEFAULT_OUTPUT_DIR}/).",
)
@click.option(
    "--grid-points",
    type=int,
    default=None,
    help="Override the frequency grid resolution for every scenario.",
)
@click.option(
    "--dispersion",
    "dispersion_path",
    default=None,
    help="YAML file with refractive index polynomials to attach to noise elements.",
)
@click.option("--server", default=None, help="Base URL of a running service instance.")
def run(
    target: str,
    out_dir: str | None,
    grid_points: int | None,
    dispersion_path: str | None,
    server: str | None,
) -> None:
    """Run a named preset or a YAML scenario/sweep file and write result tables."""
    try:
        if os.path.exists(target):
            request = load_run_request(target)
        else:
            request = RunRequest(preset=target)
        updates: dict[str, Any] = {}
        if grid_points is not None:
            updates["grid_points"] = grid_points
        if dispersion_path is not None:
            updates["dispersion"] = load_index_model(dispersion_path)
        if updates:
            request = request.model_copy(update=updates)
    except ConfigError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_CONFIG)

    response = _call(server, "POST", "/run", request.model_dump(mode="json"))
    if response.status_code == 422:
        detail = response.json().get("detail", response.text)
        click.echo(f"configuration error: {detail}", err=True)
        sys.exit(EXIT_CONFIG)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        click.echo(f"run failed: {detail}", err=True)
        sys.exit(EXIT_NUMERICAL)

    result = RunResponse.model_validate(response.json())
    out_dir = out_dir or os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR
    os.makedirs(out_dir, exist_ok=True)

    outputs: dict[str, str] = {}
    if result.kind == "teleportation":
        table_path = os.path.join(out_dir, "results.csv")
        _write_csv(
            table_path,
            TELEPORTATION_COLUMNS,
            [row.model_dump() for row in result.teleportation_rows],
        )
        outputs["results"] = table_path
    else:
        table_path = os.path.join(out_dir, "sweep.csv")
        _write_csv(
            table_path,
            SWEEP_COLUMNS,
            [row.model_dump() for row in result.sweep_rows],
        )
        outputs["sweep"] = table_path

    manifest_path = os.path.join(out_dir, "manifest.json")
    write_manifest(build_manifest(result, outputs), manifest_path)
    outputs["manifest"] = manifest_path

    click.echo(f"{result.name} ({result.kind}): wrote {table_path} and {manifest_path}")


@main.command("list-presets")
@click.option("--server", default=None, help="Base URL of a running service instance.")
def list_presets(server: str | None) -> None:
    """Show the bundled presets and their physical parameters."""
    response = _call(server, "GET", "/presets")
    if response.status_code != 200:
        click.echo(f"request failed: {response.text}", err=True)
        sys.exit(EXIT_NUMERICAL)
    for entry in response.json():
        click.echo(f"{entry['name']} ({entry['kind']}): {entry['description']}")
        for key in sorted(entry["parameters"]):
            click.echo(f"    {key} = {entry['parameters'][key]}")


@main.command()
@click.option("--host", default="127.0.0.1", help="Interface to bind.")
@click.option("--port", default=8000, type=int, help="Port to bind.")
def serve(host: str, port: int) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
