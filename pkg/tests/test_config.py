"""YAML loading diagnostics and manifest round-trips."""

import json

import pytest

from telesim.config import (
    build_manifest,
    load_index_model,
    load_run_request,
    load_yaml,
    write_manifest,
)
from telesim.errors import ConfigError
from telesim.schemas import RunRequest, RunResponse

SCENARIO_YAML = """\
scenarios:
  - name: demo
    input: plus
    spectrum_a:
      components:
        - {center_nm: 780.0, fwhm_nm: 2.0}
    spectrum_b:
      components:
        - {center_nm: 780.0, fwhm_nm: 3.0}
    side_a:
      use_slm: true
      slope_lambda0: 446.0
      noise: {preset: yvo4_400}
    side_b:
      use_slm: true
      slope_lambda0: 429.0
      noise: {preset: quartz_411}
    grid_points: 64
"""


def test_load_valid_scenario_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(SCENARIO_YAML)
    request = load_run_request(str(path))
    assert request.scenarios[0].name == "demo"
    assert request.scenarios[0].side_a.noise.preset == "yvo4_400"


def test_missing_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_yaml(str(tmp_path / "absent.yaml"))


def test_yaml_syntax_error_names_the_line(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("scenarios:\n  - name: [unclosed\n")
    with pytest.raises(ConfigError, match=r"line \d+, column \d+"):
        load_yaml(str(path))


def test_non_mapping_top_level_is_rejected(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError, match="top level"):
        load_yaml(str(path))


def test_missing_spectrum_block_is_named(tmp_path):
    path = tmp_path / "nospec.yaml"
    path.write_text("scenarios:\n  - name: broken\n")
    with pytest.raises(ConfigError, match=r"scenarios\.0\.spectrum_a"):
        load_run_request(str(path))


def test_rejects_unknown_fields(tmp_path):
    path = tmp_path / "extra.yaml"
    path.write_text(SCENARIO_YAML.replace("grid_points: 64", "grid_pts: 64"))
    with pytest.raises(ConfigError, match="grid_pts"):
        load_run_request(str(path))


def test_index_model_file_round_trip(tmp_path):
    path = tmp_path / "model.yaml"
    path.write_text("n_h_coeffs: [2.2, 1.0e-17]\nn_v_coeffs: [2.0]\n")
    model = load_index_model(path=str(path))
    assert model.n_h_coeffs == [2.2, 1.0e-17]
    assert model.n_v_coeffs == [2.0]
    bad = tmp_path / "bad_model.yaml"
    bad.write_text("n_h_coeffs: []\nn_v_coeffs: [2.0]\n")
    with pytest.raises(ConfigError, match="n_h_coeffs"):
        load_index_model(str(bad))


def test_manifest_snapshot_round_trips(tmp_path):
    request = RunRequest(preset="placement-comparison", grid_points=64)
    response = RunResponse(
        kind="teleportation",
        name="placement-comparison",
        grid_points=64,
        classical_fidelity_limit=2.0 / 3.0,
        request=request,
    )
    manifest = build_manifest(response, {"results": "out/results.csv"})
    path = tmp_path / "manifest.json"
    write_manifest(manifest, str(path))

    loaded = json.loads(path.read_text())
    assert loaded["name"] == "placement-comparison"
    assert loaded["kind"] == "teleportation"
    assert loaded["grid_points"] == 64
    assert loaded["classical_fidelity_limit"] == pytest.approx(2.0 / 3.0)
    assert loaded["outputs"] == {"results": "out/results.csv"}
    assert "T" in loaded["timestamp"]  # ISO 8601

    # parse -> serialize -> parse lands on the identical request
    reparsed = RunRequest.model_validate(loaded["request"])
    assert reparsed == request
    assert reparsed.model_dump(mode="json") == loaded["request"]
