"""Request and response bodies for the simulation service.

The same shapes double as the on-disk YAML configuration format: a run
request either names a built-in preset or carries inline scenario / sweep
definitions.  All physical quantities carry their unit in the field name
(center_nm, slope_lambda0, x_lambda0).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GaussianComponentIn(StrictModel):
    weight: float = Field(1.0, gt=0)
    center_nm: float = Field(gt=0)
    fwhm_nm: float = Field(gt=0)


class SpectrumIn(StrictModel):
    components: list[GaussianComponentIn] = Field(min_length=1)


class IndexModelIn(StrictModel):
    """Polynomial refractive indices in absolute frequency, lowest degree first."""

    n_h_coeffs: list[float] = Field(min_length=1)
    n_v_coeffs: list[float] = Field(min_length=1)


class ElementIn(StrictModel):
    """A dephasing element: a named preset or an explicit effective path."""

    preset: str | None = None
    x_lambda0: float | None = Field(None, ge=0)
    index_model: IndexModelIn | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.preset is None) == (self.x_lambda0 is None):
            raise ValueError("element needs exactly one of 'preset' or 'x_lambda0'")
        return self


class SlmIn(StrictModel):
    """Pixelation model; omit for an ideal (continuous) phase profile."""

    n_pixels: int = Field(150, ge=1)
    window_nm: float = Field(3.5, gt=0)
    phase_levels: int | None = Field(None, ge=2)


class QubitIn(StrictModel):
    alpha_re: float = 0.0
    alpha_im: float = 0.0
    beta_re: float = 0.0
    beta_im: float = 0.0


class SideIn(StrictModel):
    use_slm: bool = False
    slope_lambda0: float = 0.0
    noise: ElementIn | None = None
    slm: SlmIn | None = None


class ScenarioIn(StrictModel):
    name: str
    input: str | QubitIn = "plus"
    spectrum_a: SpectrumIn
    spectrum_b: SpectrumIn
    side_a: SideIn = SideIn()
    side_b: SideIn = SideIn()
    grid_points: int = Field(512, ge=2)
    span_sigmas: float = Field(4.0, gt=0)
    lambda0_nm: float = Field(780.0, gt=0)


class SweepIn(StrictModel):
    name: str
    target: Literal["phi_plus", "phi_minus", "psi_plus", "psi_minus"] = "psi_plus"
    side: Literal["a", "b"] = "a"
    vary: Literal["slope", "thickness"] = "slope"
    x_start_lambda0: float = 0.0
    x_stop_lambda0: float = 600.0
    x_step_lambda0: float = Field(5.0, gt=0)
    spectrum_a: SpectrumIn
    spectrum_b: SpectrumIn
    fixed_element: ElementIn | None = None
    fixed_slope_lambda0: float = 0.0
    grid_points: int = Field(512, ge=2)
    span_sigmas: float = Field(4.0, gt=0)
    lambda0_nm: float = Field(780.0, gt=0)

    @model_validator(mode="after")
    def _consistent(self):
        if self.x_stop_lambda0 < self.x_start_lambda0:
            raise ValueError("x_stop_lambda0 must not be below x_start_lambda0")
        if self.vary == "slope" and self.fixed_element is None:
            raise ValueError("a slope sweep needs 'fixed_element'")
        return self


class RunRequest(StrictModel):
    """One run: a named preset, or inline scenarios, or inline sweeps."""

    preset: str | None = None
    scenarios: list[ScenarioIn] | None = Field(None, min_length=1)
    sweeps: list[SweepIn] | None = Field(None, min_length=1)
    grid_points: int | None = Field(None, ge=2)
    dispersion: IndexModelIn | None = None

    @model_validator(mode="after")
    def _one_source(self):
        sources = [
            s for s in (self.preset, self.scenarios, self.sweeps) if s is not None
        ]
        if len(sources) != 1:
            raise ValueError(
                "request needs exactly one of 'preset', 'scenarios' or 'sweeps'"
            )
        return self


class TeleportationRow(BaseModel):
    scenario: str
    input_state: str
    outcome: str
    probability: float
    fidelity_pre_noise: float
    fidelity_final: float
    abs_lambda: float
    concurrence: float
    chsh_max: float


class SweepRow(BaseModel):
    sweep: str
    target: str
    side: str
    x_lambda0: float
    fidelity: float
    classical_limit: float


class RunResponse(BaseModel):
    kind: Literal["teleportation", "sweep"]
    name: str
    grid_points: int
    classical_fidelity_limit: float
    request: RunRequest
    teleportation_rows: list[TeleportationRow] = []
    sweep_rows: list[SweepRow] = []


class PresetOut(BaseModel):
    name: str
    kind: str
    description: str
    parameters: dict[str, float]


class HealthOut(BaseModel):
    status: str
    version: str
