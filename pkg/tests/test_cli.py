import json

import jsonschema
import pytest
from click.testing import CliRunner

from widgets.cli import OUTPUT_MODELS, output_schema, run
from widgets.cli.commands import Classify6, Eval, Homology, Pi1Surface, Qk, SelfTest, Suspend
from widgets.cli.main import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text(
        "log_level: ERROR\n"
        "selftest:\n"
        "  max_k: 3\n"
        "  tower_max_k: 3\n"
        "  random_samples: 3\n"
        "  snf_samples: 3\n"
        "  seed: 7\n"
    )
    return path


def test_eval(runner):
    result = runner.invoke(main, ["eval", "Sig1(SxS(2,3)) # SxS(3,3)"])
    assert result.exit_code == 0
    assert result.output == "SxS(2,4) # 2*SxS(3,3)\n"


def test_homology(runner):
    result = runner.invoke(main, ["homology", "CP(2)"])
    assert result.exit_code == 0
    assert "P_t = 1+t^2+t^4" in result.output
    assert "chi = 3" in result.output
    assert "w2 != 0" in result.output
    assert "simply connected: yes" in result.output


def test_suspend_with_trace(runner):
    result = runner.invoke(main, ["suspend", "SxS(2,3)", "--i", "1", "--trace"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("  R4:")
    assert lines[1].startswith("  R3:")
    assert lines[-1] == "SxS(2,4) # SxS(3,3)"


def test_pullback(runner):
    result = runner.invoke(main, ["pullback", "--total", "S(7)", "--base", "CP(3)", "SxS(2,4)"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["SxS(2,5) # SxS(3,4)", "Sig1: epsilon != delta"]


@pytest.mark.parametrize(
    "h2, w2, euler, expected",
    [
        ("Z^2", "0", "0", "SxS(2,4) # 2*SxS(3,3)"),
        ("Z + Z/3 + Z/3", "0", "0", "SxS(3,3) # Sig1(M(3))"),
        ("Z^2 + Z/2", "1", "0", "SxS(2,4) # 2*SxS(3,3) # Sig1(W)"),
    ],
)
def test_classify6(runner, h2, w2, euler, expected):
    result = runner.invoke(main, ["classify6", "--h2", h2, "--w2", w2, "--euler-eq-w2", euler])
    assert result.exit_code == 0
    assert result.output == expected + "\n"


def test_classify6_not_realizable(runner):
    result = runner.invoke(main, ["classify6", "--h2", "Z", "--w2", "1", "--euler-eq-w2", "0"])
    assert result.exit_code == 1
    assert "error:" in result.output


def test_qk(runner):
    result = runner.invoke(main, ["qk", "--k", "3"])
    assert result.exit_code == 0
    assert result.output == "Q_3 = 5*SxS(3,4)\nP_t = 1+5t^3+5t^4+t^7\n"


def test_qk_with_checks(runner):
    result = runner.invoke(main, ["qk", "--k", "2", "--oracle", "--tower"])
    assert result.exit_code == 0
    assert "oracle: PASS (E3 P_t = 1+2t^3+t^6)" in result.output
    assert "tower: PASS (SxS(3,3))" in result.output


def test_qk_json(runner):
    result = runner.invoke(main, ["--json", "qk", "--k", "4", "--oracle"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["dsl"] == "9*SxS(3,5) # 8*SxS(4,4)"
    assert data["poincare"] == "1+9t^3+16t^4+9t^5+t^8"
    assert data["oracle"]["pass"] is True


def test_pi1_surface(runner):
    result = runner.invoke(main, ["pi1-surface", "--g", "2", "--i", "1"])
    assert result.exit_code == 0
    assert result.output.splitlines()[-1] == "abelianization: Z^4"


@pytest.mark.parametrize(
    "args, code, message",
    [
        (["eval", "SxS(2,3"], 2, "syntax error"),
        (["eval", "S(3) # SxS(2,3)"], 1, "dimension mismatch 3 vs 5"),
        (["suspend", "CP(2)", "--i", "2"], 2, ""),
        (["qk", "--k", "0"], 1, "error:"),
        (["pi1-surface", "--g", "-1"], 1, "error:"),
        (["pullback", "--total", "S(7)", "--base", "CP(3)", "CP(2)"], 1, "hypothesis violated"),
        (["classify6", "--h2", "Z/3 + Z/3", "--w2", "0", "--euler-eq-w2", "0"], 1, "no free part"),
    ],
)
def test_exit_codes(runner, args, code, message):
    result = runner.invoke(main, args)
    assert result.exit_code == code
    assert message in result.output


def test_bad_config(runner, tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("log_level: LOUD\n")
    result = runner.invoke(main, ["--config", str(path), "eval", "S(5)"])
    assert result.exit_code == 1
    assert "invalid settings" in result.output


def test_selftest_command(runner, small_config):
    result = runner.invoke(main, ["--config", str(small_config), "selftest"])
    assert result.exit_code == 0
    assert "FAIL" not in result.output
    assert "9 algebra kernel" in result.output


def test_run_directly(small_settings):
    ok = run(Eval(expr="SxS(2,3) # M(3)"), as_json=True, settings=small_settings)
    assert ok.exit_code == 0 and not ok.stderr
    assert json.loads(ok.stdout)["expr"]["dim"] == 5

    bad = run(Eval(expr="SxS(2,3"), settings=small_settings)
    assert bad.exit_code == 2
    assert bad.stderr.startswith("syntax error:")

    failed = run(Classify6(h2="Z/3 + Z/3", w2=False, euler_eq_w2=False), settings=small_settings)
    assert failed.exit_code == 1
    assert failed.stderr.startswith("error: Euler class cannot be primitive")

    assert run(Suspend(expr="S(5)", index=1), settings=small_settings).stdout == "S(6)\n"
    assert run(Pi1Surface(g=0, index=1), settings=small_settings).stdout == "< | >\nabelianization: 0\n"
    assert run(Qk(k=1), settings=small_settings).stdout.startswith("Q_1 = S(5)")


def test_run_selftest_json(small_settings):
    result = run(SelfTest(), as_json=True, settings=small_settings)
    data = json.loads(result.stdout)
    assert result.exit_code == 0
    assert data["pass"] is True
    assert len(data["suites"]) == 9


def test_homology_with_undetermined_w2(runner):
    result = runner.invoke(main, ["homology", "Sig1(Surf(2))"])
    assert result.exit_code == 0
    assert "w2 unavailable (restriction isomorphism unavailable" in result.output
    assert "P_t = 1+4t+4t^2+t^3" in result.output
    assert "chi = 0" in result.output
    assert "simply connected: no" in result.output


def test_homology_json_with_undetermined_w2(small_settings):
    result = run(Homology(expr="Sig1(Surf(2))"), as_json=True, settings=small_settings)
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["w2_nonzero"] is None
    assert data["w2_unavailable"].startswith("restriction isomorphism unavailable")
    assert data["homology"]["1"] == {"rank": 4, "torsion": []}


def test_qk_large_k(runner):
    result = runner.invoke(main, ["qk", "--k", "40"])
    assert result.exit_code == 0
    assert result.output.startswith("Q_40 = 819*SxS(3,41) # ")
    data = json.loads(runner.invoke(main, ["--json", "qk", "--k", "40"]).output)
    assert data["expr"]["atoms"][0] == {"kind": "SphereProduct", "params": [3, 41], "count": 819, "inner": None}
    assert len(data["expr"]["atoms"]) == 20


def test_qk_oracle_is_bounded(runner):
    result = runner.invoke(main, ["qk", "--k", "40", "--oracle"])
    assert result.exit_code == 1
    assert "limited to k <= 14" in result.output


JSON_COMMANDS = [
    ("eval", ["eval", "Sig1(SxS(2,3)) # SxS(3,3)"]),
    ("homology", ["homology", "SxS(2,3) # M(3) # Sig0(CP(2))"]),
    ("homology", ["homology", "Sig1(Surf(2))"]),
    ("suspend", ["suspend", "SxS(2,2) # CP(2)", "--i", "1"]),
    ("pullback", ["pullback", "--total", "S(7)", "--base", "CP(3)", "SxS(2,4)"]),
    ("classify6", ["classify6", "--h2", "Z^2 + Z/2", "--w2", "1", "--euler-eq-w2", "0"]),
    ("qk", ["qk", "--k", "3", "--oracle", "--tower"]),
    ("qk", ["qk", "--k", "5"]),
    ("pi1-surface", ["pi1-surface", "--g", "2", "--i", "0"]),
]


@pytest.mark.parametrize("name, args", JSON_COMMANDS)
def test_json_output_matches_published_schema(runner, name, args):
    schema = json.loads(runner.invoke(main, ["schema", name]).output)
    assert schema == output_schema(name)
    result = runner.invoke(main, ["--json", *args])
    assert result.exit_code == 0
    jsonschema.validate(instance=json.loads(result.output), schema=schema)


def test_selftest_json_matches_published_schema(runner, small_config):
    result = runner.invoke(main, ["--config", str(small_config), "--json", "selftest"])
    assert result.exit_code == 0
    jsonschema.validate(instance=json.loads(result.output), schema=output_schema("selftest"))


def test_schema_command(runner):
    result = runner.invoke(main, ["schema"])
    assert result.exit_code == 0
    assert set(json.loads(result.output)) == set(OUTPUT_MODELS)
    assert {name for name, _ in JSON_COMMANDS} | {"selftest"} == set(OUTPUT_MODELS)
    assert runner.invoke(main, ["schema", "nope"]).exit_code == 2


def test_schema_rejects_malformed_output():
    schema = output_schema("eval")
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(instance={"dsl": "S(5)", "expr": {"dim": 0, "atoms": []}}, schema=schema)
