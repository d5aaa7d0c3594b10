"""HTTP service exposing presets and simulation runs.

Thin wrapper over the core package: request schemas are converted to domain
configs, executed, and flattened into tabular rows.  Validation and domain
errors map to 422, unexpected numerical failures to 500.
"""

from __future__ import annotations

from dataclasses import replace

from fastapi import FastAPI, HTTPException

from . import __version__
from .constants import SPEED_OF_LIGHT
from .errors import ConfigError, DomainError
from .optics import BirefringentElement, IndexModel, SlmModel, element_preset
from .presets import build_preset, preset_info, preset_names
from .protocol import (
    CLASSICAL_FIDELITY_LIMIT,
    InputQubit,
    ScenarioConfig,
    ScenarioResult,
    SideSettings,
    SweepConfig,
    input_preset,
    purification_sweep,
    run_teleportation,
)
from .schemas import (
    ElementIn,
    HealthOut,
    IndexModelIn,
    PresetOut,
    QubitIn,
    RunRequest,
    RunResponse,
    ScenarioIn,
    SideIn,
    SpectrumIn,
    SweepIn,
    SweepRow,
    TeleportationRow,
)
from .spectra import GaussianComponent, GaussianMixtureSpec

app = FastAPI(title="telesim", version=__version__)


def _index_model(model_in: IndexModelIn) -> IndexModel:
    return IndexModel(tuple(model_in.n_h_coeffs), tuple(model_in.n_v_coeffs))


def _spectrum(spec_in: SpectrumIn) -> GaussianMixtureSpec:
    return GaussianMixtureSpec(
        tuple(
            GaussianComponent.from_nm(c.weight, c.center_nm, c.fwhm_nm)
            for c in spec_in.components
        )
    )


def _element(
    elem_in: ElementIn | None,
    lambda0: float,
    dispersion: IndexModelIn | None,
) -> BirefringentElement | None:
    if elem_in is None:
        return None
    if elem_in.preset is not None:
        elem = element_preset(elem_in.preset)
    else:
        elem = BirefringentElement(elem_in.x_lambda0, lambda0)
    model_in = dispersion or elem_in.index_model
    if model_in is not None:
        elem = replace(elem, index_model=_index_model(model_in))
    return elem


def _side(
    side_in: SideIn, lambda0: float, dispersion: IndexModelIn | None
) -> SideSettings:
    slm = None
    if side_in.slm is not None:
        center_hz = SPEED_OF_LIGHT / lambda0
        bandwidth_hz = SPEED_OF_LIGHT * (side_in.slm.window_nm * 1e-9) / lambda0**2
        slm = SlmModel(
            n_pixels=side_in.slm.n_pixels,
            covered_bandwidth_hz=bandwidth_hz,
            center_frequency_hz=center_hz,
            phase_levels=side_in.slm.phase_levels,
        )
    return SideSettings(
        use_slm=side_in.use_slm,
        slope_lambda0=side_in.slope_lambda0,
        noise=_element(side_in.noise, lambda0, dispersion),
        slm=slm,
    )


def _qubit(field: str | QubitIn) -> tuple[str, InputQubit]:
    if isinstance(field, str):
        return field, input_preset(field)
    qubit = InputQubit(
        complex(field.alpha_re, field.alpha_im),
        complex(field.beta_re, field.beta_im),
    )
    return "custom", qubit


def _scenario(
    s: ScenarioIn, override: int | None, dispersion: IndexModelIn | None
) -> ScenarioConfig:
    lambda0 = s.lambda0_nm * 1e-9
    input_name, qubit = _qubit(s.input)
    return ScenarioConfig(
        name=s.name,
        input_name=input_name,
        qubit=qubit,
        spectrum_a=_spectrum(s.spectrum_a),
        spectrum_b=_spectrum(s.spectrum_b),
        side_a=_side(s.side_a, lambda0, dispersion),
        side_b=_side(s.side_b, lambda0, dispersion),
        grid_points=override or s.grid_points,
        span_sigmas=s.span_sigmas,
        lambda0=lambda0,
    )


def _sweep(
    s: SweepIn, override: int | None, dispersion: IndexModelIn | None
) -> SweepConfig:
    lambda0 = s.lambda0_nm * 1e-9
    n_steps = int((s.x_stop_lambda0 - s.x_start_lambda0) / s.x_step_lambda0 + 1e-9)
    x_values = tuple(
        s.x_start_lambda0 + i * s.x_step_lambda0 for i in range(n_steps + 1)
    )
    model_in = dispersion
    return SweepConfig(
        name=s.name,
        target=s.target,
        side=s.side,
        vary=s.vary,
        x_values=x_values,
        spectrum_a=_spectrum(s.spectrum_a),
        spectrum_b=_spectrum(s.spectrum_b),
        fixed_element=_element(s.fixed_element, lambda0, dispersion),
        fixed_slope_lambda0=s.fixed_slope_lambda0,
        index_model=_index_model(model_in) if model_in is not None else None,
        grid_points=override or s.grid_points,
        span_sigmas=s.span_sigmas,
        lambda0=lambda0,
    )


def _build_configs(request: RunRequest) -> tuple[str, str, list]:
    """Resolve a request into (kind, run name, domain configs)."""
    if request.preset is not None:
        model = (
            _index_model(request.dispersion) if request.dispersion is not None else None
        )
        kind, configs = build_preset(
            request.preset, grid_points=request.grid_points, index_model=model
        )
        return kind, request.preset, configs
    if request.scenarios is not None:
        configs = [
            _scenario(s, request.grid_points, request.dispersion)
            for s in request.scenarios
        ]
        name = configs[0].name if len(configs) == 1 else "custom"
        return "teleportation", name, configs
    configs = [_sweep(s, request.grid_points, request.dispersion) for s in request.sweeps]
    name = configs[0].name if len(configs) == 1 else "custom"
    return "sweep", name, configs


def _teleportation_rows(result: ScenarioResult) -> list[TeleportationRow]:
    shared = {
        "scenario": result.config.name,
        "input_state": result.config.input_name,
        "abs_lambda": abs(result.coherence_final),
        "concurrence": result.pair_concurrence,
        "chsh_max": result.pair_chsh,
    }
    rows = [
        TeleportationRow(
            outcome=o.outcome,
            probability=o.probability,
            fidelity_pre_noise=o.fidelity_pre_noise,
            fidelity_final=o.fidelity_final,
            **shared,
        )
        for o in result.outcomes
    ]
    rows.append(
        TeleportationRow(
            outcome="average",
            probability=1.0,
            fidelity_pre_noise=result.average_fidelity_pre_noise,
            fidelity_final=result.average_fidelity,
            **shared,
        )
    )
    return rows


@app.get("/health", response_model=HealthOut)
def health() -> HealthOut:
    return HealthOut(status="ok", version=__version__)


@app.get("/presets", response_model=list[PresetOut])
def presets() -> list[PresetOut]:
    out = []
    for name in preset_names():
        info = preset_info(name)
        out.append(
            PresetOut(
                name=info.name,
                kind=info.kind,
                description=info.description,
                parameters=dict(info.parameters),
            )
        )
    return out


@app.post("/run", response_model=RunResponse)
def run(request: RunRequest) -> RunResponse:
    try:
        kind, name, configs = _build_configs(request)
        if kind == "teleportation":
            teleportation_rows: list[TeleportationRow] = []
            for cfg in configs:
                teleportation_rows.extend(_teleportation_rows(run_teleportation(cfg)))
            sweep_rows: list[SweepRow] = []
        else:
            teleportation_rows = []
            sweep_rows = [
                SweepRow(
                    sweep=cfg.name,
                    target=cfg.target,
                    side=cfg.side,
                    x_lambda0=point.x_lambda0,
                    fidelity=point.fidelity,
                    classical_limit=CLASSICAL_FIDELITY_LIMIT,
                )
                for cfg in configs
                for point in purification_sweep(cfg).points
            ]
    except (ConfigError, DomainError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except Exception as exc:  # numerical failure surfaced as a server error
        raise HTTPException(
            status_code=500, detail=f"numerical failure: {exc}"
        ) from exc

    grid_values = {cfg.grid_points for cfg in configs}
    grid_points = request.grid_points or (
        grid_values.pop() if len(grid_values) == 1 else max(grid_values)
    )
    return RunResponse(
        kind=kind,
        name=name,
        grid_points=grid_points,
        classical_fidelity_limit=CLASSICAL_FIDELITY_LIMIT,
        request=request,
        teleportation_rows=teleportation_rows,
        sweep_rows=sweep_rows,
    )
