import json
import math
import os
import subprocess

import jsonschema
import pytest

import fefflab

PI = math.pi
F_SPHERE = 16 ** (1 / 3) * PI**2


@pytest.fixture(scope="module")
def validator():
    schema = fefflab.schema()
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def test_schema_id():
    assert fefflab.SCHEMA_ID == "fefferman-lab/v1"
    assert fefflab.schema()["$id"] == fefflab.SCHEMA_ID
    assert fefflab.run([]) == (0, "fefferman-lab/v1\n", "")


def test_exact_integrals():
    assert fefflab.integrate_sphere("z*zb*w*wb")["exact"] == "1/3*pi^2"
    assert fefflab.integrate_ball("1")["value"] == pytest.approx(PI**2 / 2, rel=1e-15)
    assert fefflab.second_variation_Q("z^2 + zb^2")["value"] == pytest.approx(64 * PI / 9, rel=1e-15)
    assert fefflab.second_variation_Q("z*wb + zb*w")["value"] == 0
    jl = fefflab.jl_check("1")
    assert jl["holds"] and jl["equality"]


def test_sphere_measures():
    m = fefflab.measure_sphere(n=16)
    assert m["fefferman"] == pytest.approx(F_SPHERE, rel=1e-12)
    assert m["volume"] == pytest.approx(PI**2 / 2, rel=1e-12)
    assert m["quotient"] == pytest.approx(8 * PI, rel=1e-12)
    big = fefflab.measure_sphere(radius=2.0, n=16)
    assert big["fefferman"] == pytest.approx(2 ** (8 / 3) * F_SPHERE, rel=1e-12)
    assert big["quotient"] == pytest.approx(8 * PI, rel=1e-12)
    assert fefflab.measure_polynomial("z^2*zb^2 - w^2*wb^2", scale=0.3, n=24)["quotient"] < 8 * PI


def test_ball_pair():
    for R, t in [(0.05, 3.0), (0.5, 1.0), (1.0, 0.4)]:
        assert fefflab.q_ball_pair(R, t) == pytest.approx(fefflab.q_ball_pair_alt(R, t), rel=1e-9)
    value, err = fefflab.q_ball_pair_R0(1.9473)
    assert value == pytest.approx(17.0297, abs=1e-3)
    assert err < 1e-6
    with pytest.raises(fefflab.FefflabError):
        fefflab.q_ball_pair(0.0, 1.0)
    with pytest.raises(ValueError):
        fefflab.q_ball_pair(0.5, PI)


def test_tube_and_kappa():
    blaschke, area, ratio = fefflab.tube_ellipse(2.0, 1.0)
    assert ratio == pytest.approx(8 * PI**2, rel=1e-8)
    assert fefflab.kappa_center("heisenberg") == pytest.approx(fefflab.kappa("heisenberg", 0.3, -0.2, 0.1), rel=1e-6)


COMMANDS = [
    ["measure", "--surface", "sphere", "--n", "12"],
    ["measure", "--surface", "polynomial", "--poly", "z*zb - w*wb", "--scale", "0.2", "--n", "12"],
    ["ball-caps", "--R", "0.5", "--theta", "1.0"],
    ["sphere-secondvar", "--mode", "A", "--j", "2", "--k", "0"],
    ["sphere-secondvar", "--poly", "z^2 + zb^2"],
    ["jl", "--poly", "z + w^2"],
    ["hl", "--poly", "z", "--n", "12"],
    ["tube", "--curve", "ellipse"],
    ["kappa", "--surface", "sphere"],
    ["validate-quadrature", "--n", "16"],
    ["measure", "--surface", "polynomial", "--poly", "z^2*zb^2 - w^2*wb^2", "--scale", "-40", "--circular", "--n", "8"],
]


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: " ".join(a[:3]))
def test_reports_validate(validator, args):
    code, out, err = fefflab.run(args)
    assert code in (0, 2), err
    doc = json.loads(out)
    validator.validate(doc)
    assert doc["ok"] == (code == 0)


def test_usage_error():
    code, out, err = fefflab.run(["measure", "--no-such-flag"])
    assert code == 1
    assert out == ""
    assert err


@pytest.mark.skipif("FEFFLAB_CLI" not in os.environ, reason="CLI binary path not provided")
def test_cli_binary(validator):
    exe = os.environ["FEFFLAB_CLI"]
    args = ["--seed", "5", "hl", "--random", "2", "--n", "12"]
    a = subprocess.run([exe, *args], capture_output=True, text=True, check=True)
    b = subprocess.run([exe, *args], capture_output=True, text=True, check=True)
    assert a.stdout == b.stdout
    doc = json.loads(a.stdout)
    validator.validate(doc)
    assert doc["config"]["seed"] == 5
    assert fefflab.run(args)[1] == a.stdout
    bad = subprocess.run([exe, "frobnicate"], capture_output=True, text=True)
    assert bad.returncode == 1
