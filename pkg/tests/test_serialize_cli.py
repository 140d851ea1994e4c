"""Wire formats and the command-line front end."""

import json
import math

import numpy as np
import pytest

from renyilab import matcore as mc
from renyilab.channels import apply_predual, random_channel
from renyilab.cli import main
from renyilab.exceptions import ConfigError
from renyilab.serialize import (
    channel_from_json,
    channel_to_json,
    load_json_file,
    matrix_from_json,
    matrix_to_json,
    state_from_json,
    state_to_json,
    vector_from_json,
    vector_to_json,
)
from renyilab.states import random_density, random_unit_vector


def test_matrix_round_trip():
    rng = mc.rng_from_seed(1)
    a = mc.random_ginibre(3, 3, rng)
    obj = matrix_to_json(a)
    assert set(obj) == {"dim", "re", "im"}
    np.testing.assert_allclose(matrix_from_json(obj), a, atol=1e-15)
    with pytest.raises(ConfigError):
        matrix_from_json({"re": [[1.0]], "im": [[0.0, 0.0]]})
    with pytest.raises(ConfigError):
        matrix_from_json({"dim": 5, "re": [[1.0]], "im": [[0.0]]})


def test_state_and_vector_round_trip():
    rho = random_density(3, 2, 2)
    again = state_from_json(state_to_json(rho))
    np.testing.assert_allclose(again.density, rho.density, atol=1e-15)
    assert again.normalized == rho.normalized
    xi = random_unit_vector(2, 3, right_dim=4)
    obj = vector_to_json(xi)
    assert obj["n"] == 2 and obj["m"] == 4
    np.testing.assert_allclose(vector_from_json(obj).matrix, xi.matrix,
                               atol=1e-15)
    with pytest.raises(ConfigError):
        vector_from_json({"n": 2, "m": 2, "M": matrix_to_json(np.eye(3))})


def test_channel_round_trip_both_conventions():
    ch = random_channel(2, 3, 2, 4)
    rho = random_density(2, 2, 5)
    for convention in ("schrodinger", "heisenberg"):
        again = channel_from_json(channel_to_json(ch, convention))
        np.testing.assert_allclose(apply_predual(again, rho).density,
                                   apply_predual(ch, rho).density, atol=1e-12)
    with pytest.raises(ConfigError):
        channel_from_json({"kraus": [matrix_to_json(np.eye(2))],
                           "convention": "bogus"})


def test_load_json_file_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 2, "re": [[1, 0],\n  [0, 1]], "im": ]')
    with pytest.raises(ConfigError) as err:
        load_json_file(str(path))
    assert "broken.json:2" in str(err.value)


def _write_state(tmp_path, name, diag):
    payload = {
        "density": {
            "dim": len(diag),
            "re": np.diag(diag).tolist(),
            "im": np.zeros((len(diag), len(diag))).tolist(),
        },
        "normalized": abs(sum(diag) - 1.0) < 1e-10,
    }
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_cli_compute_divergence_and_norm(tmp_path, capsys):
    rho = _write_state(tmp_path, "rho.json", [0.5, 0.5])
    sigma = _write_state(tmp_path, "sigma.json", [0.25, 0.75])
    code = main(["compute", "divergence", "--kind", "sandwiched",
                 "--alpha", "2", "--rho", rho, "--sigma", sigma])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == pytest.approx(math.log(4.0 / 3.0), abs=1e-6)
    assert out["route"] == "closed_form"

    code = main(["compute", "norm", "--p", "4", "--rho", rho,
                 "--sigma", sigma])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == pytest.approx((4.0 / 3.0) ** 0.25, abs=1e-6)

    code = main(["compute", "divergence", "--kind", "fidelity",
                 "--rho", rho, "--sigma", sigma])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == pytest.approx(0.9330127018922193, abs=1e-9)


def test_cli_malformed_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    sigma = _write_state(tmp_path, "sigma.json", [0.25, 0.75])
    code = main(["compute", "norm", "--p", "2", "--rho", str(bad),
                 "--sigma", sigma])
    assert code == 2
    assert "bad.json:1" in capsys.readouterr().err
    code = main(["compute", "norm", "--p", "2", "--rho", str(tmp_path / "no.json"),
                 "--sigma", sigma])
    assert code == 2


def test_cli_verify_small_run_deterministic(tmp_path, capsys):
    args = ["verify", "--suites", "alt", "interpolation", "--seeds", "1", "2",
            "--dims", "2", "--jobs", "2"]
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    capsys.readouterr()
    r1 = json.loads(out1.read_text())
    r2 = json.loads(out2.read_text())
    for rep in r1["reports"] + r2["reports"]:
        rep.pop("wall_time")
    assert r1 == r2
    assert r1["pass"]


def test_cli_verify_negate_alt_fails(tmp_path, capsys):
    code = main(["verify", "--suites", "alt", "--seeds", "1", "--dims", "2",
                 "--negate-alt", "--out", str(tmp_path / "neg.json")])
    assert code == 1
    payload = json.loads((tmp_path / "neg.json").read_text())
    assert not payload["pass"]
    assert payload["reports"][0]["failures"]
    capsys.readouterr()


def test_cli_verify_bad_config(capsys):
    assert main(["verify", "--dims", "9"]) == 2
    assert main(["verify", "--tol", "nonsense"]) == 2
    assert main(["verify", "--tol", "variational=-1"]) == 2
    capsys.readouterr()


def test_cli_hyptest_curve_and_empirics(tmp_path, capsys):
    rho = _write_state(tmp_path, "rho.json", [0.5, 0.5])
    tau = _write_state(tmp_path, "tau.json", [0.25, 0.75])
    code = main(["hyptest", "curve", "--rho", rho, "--tau", tau,
                 "--r-grid", "0.2:0.8:4"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("#") and "conjecture" in lines[0]
    assert lines[1] == "r,exponent,alpha_witness"
    assert len(lines) == 6
    exps = [float(line.split(",")[1]) for line in lines[2:]]
    assert exps == sorted(exps)

    code = main(["hyptest", "empirics", "--rho", rho, "--tau", tau,
                 "--r", "0.5", "--n-max", "4"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,typeI_exponent"
    assert len(lines) == 5
    code = main(["hyptest", "curve", "--rho", rho, "--tau", tau,
                 "--r-grid", "oops"])
    assert code == 2
    capsys.readouterr()
