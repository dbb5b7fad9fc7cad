import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

from srschubert import cli
from srschubert.config import ENV_FACE_CAP, ENV_PAIR_BUDGET, RunConfig, env_defaults

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"
COMMANDS = json.loads((SCHEMAS / "commands.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def validate(out):
    doc = json.loads(out)
    schema = json.loads((SCHEMAS / COMMANDS[doc["command"]]).read_text())
    Draft202012Validator.check_schema(schema)
    Draft202012Validator(schema).validate(doc)
    return doc


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return {
        "triangle": write("triangle.json", {"vertices": [1, 2, 3], "facets": [[1, 2], [1, 3], [2, 3]]}),
        "two_edges": write("two_edges.json", {"vertices": [1, 2, 3, 4], "facets": [[1, 2], [3, 4]]}),
        "points": write("points.json", {"vertices": [1, 2], "facets": [[1], [2]]}),
        "path": write("path.json", {"vertices": [1, 2, 3], "facets": [[1, 3], [2, 3]]}),
        "chain": write("chain.json", {"complexes": [
            {"vertices": [1], "facets": [[1]]},
            {"vertices": [1, 2], "facets": [[1, 2]]},
        ]}),
        "badchain": write("badchain.json", {"complexes": [
            {"vertices": [1, 2], "facets": [[1], [2]]},
            {"vertices": [1, 2, 3], "facets": [[1, 2, 3]]},
        ]}),
        "sop": write("sop.json", {"modulus": 32003, "vertices": [1, 2], "rows": [[3, 5]]}),
        "polys": write("polys.json", ["x[1]^2 - x[2]", "x[1]*x[2] - x[1]"]),
        "ideal": write("ideal.json", {"generators": ["x[1]*x[2]"], "vertices": [1, 2, 3]}),
        "broken": write("broken.json", {"vertices": [1, 2, 3]}),
    }


CASES = [
    ("schubert", "rank", "2 5 3 1"),
    ("schubert", "ideal", "--essential", "2531"),
    ("schubert", "ideal", "2 5 3 1", "--field", "Q"),
    ("schubert", "initial", "--verify", "1 3 2"),
    ("schubert", "complex", "1 3"),
    ("schubert", "complex", "--facet-mode", "1 3 2"),
    ("schubert", "pipeline", "--rule", "even", "--mmax", "2", "--seed", "1"),
    ("pipeline", "--perm", "(1 2)", "--mmax", "2"),
    ("groebner", "check", "--poly", "x[1,1]*x[2,2] - x[1,2]*x[2,1]"),
]


@pytest.mark.parametrize("argv", CASES, ids=lambda a: " ".join(a))
def test_json_outputs_validate(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    doc = validate(out)
    assert doc["passed"] is True


def test_file_commands_validate(capsys, files):
    for argv, want in [
        (("sr", "from-ideal", "--ideal", files["ideal"]), 0),
        (("sr", "from-ideal", "--gens", "x[1]*x[2]", "x[2]*x[3]"), 0),
        (("sr", "to-ideal", "--complex", files["two_edges"]), 0),
        (("check-cm", "--complex", files["triangle"]), 0),
        (("check-cm", "--complex", files["two_edges"]), 1),
        (("verify-chain", "--chain", files["chain"]), 0),
        (("verify-chain", "--chain", files["badchain"]), 1),
        (("sop", "find", "--complex", files["triangle"]), 0),
        (("sop", "extend", "--sop", files["sop"], "--complex", files["points"], "--to", files["path"]), 0),
        (("groebner", "check", "--polys", files["polys"], "--order", "lex", "--complete"), 1),
    ]:
        code, out, _ = run(capsys, *argv)
        assert code == want, argv
        doc = validate(out)
        assert doc["passed"] is (want == 0)


def test_rank_text(capsys):
    code, out, _ = run(capsys, "schubert", "rank", "2 5 3 1", "--format", "text")
    assert code == 0
    assert out == "0 1 1 1 1\n0 1 1 1 2\n0 1 2 2 3\n1 2 3 3 4\n"


def test_dot_output(capsys):
    code, out, _ = run(capsys, "schubert", "complex", "--dot", "1 3")
    assert code == 0 and out.startswith("graph") and out.count(" -- ") == 14


def test_lex_completion(capsys, files):
    code, out, _ = run(capsys, "groebner", "check", "--polys", files["polys"], "--order", "lex", "--complete")
    doc = json.loads(out)
    assert code == 1 and not doc["result"]["is_groebner"]
    assert len(doc["result"]["completion"]) > 2


@pytest.mark.parametrize("argv", [
    ("schubert", "rank", "2 2 1"),
    ("schubert", "rank", "0 1"),
    ("schubert", "bogus", "1"),
    ("check-cm", "--complex", "/nonexistent.json"),
    ("schubert", "rank", "1 2", "--field", "12"),
    ("schubert", "rank", "1 2", "--face-cap", "0"),
    ("schubert", "complex", "1 2 3 4", "--face-cap", "10"),
    ("schubert", "rank", "1 2", "--format", "dot"),
    ("pipeline", "--rule", "even", "--mmax", "0"),
    ("pipeline", "--rule", "even", "--mmax", "2", "--field", "Q"),
    ("groebner", "check"),
    ("sr", "from-ideal"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "Traceback" not in err


def test_identity_beyond_caps_is_resource_error(capsys):
    # T_4 has 16 variables: the goodness test would enumerate too many row subsets
    code, _, err = run(capsys, "pipeline", "--perm", "id", "--mmax", "4")
    assert code == 2 and "resource" in err


def test_malformed_complex(capsys, files):
    code, _, _ = run(capsys, "check-cm", "--complex", files["broken"])
    assert code == 2


def test_sop_budget_is_resource_error(capsys, files):
    code, _, err = run(capsys, "sop", "find", "--complex", files["triangle"], "--field", "2", "--sop-budget", "3")
    assert code == 2 and "resource" in err


def test_deterministic_output(capsys, files):
    for argv in [("schubert", "pipeline", "--rule", "even", "--mmax", "2", "--seed", "1"),
                 ("sop", "find", "--complex", files["triangle"], "--seed", "9"),
                 ("check-cm", "--complex", files["two_edges"], "--seed", "4")]:
        a = run(capsys, *argv)[1]
        b = run(capsys, *argv)[1]
        assert a == b


def test_seed_changes_sop(capsys, files):
    a = json.loads(run(capsys, "sop", "find", "--complex", files["triangle"], "--seed", "1")[1])
    b = json.loads(run(capsys, "sop", "find", "--complex", files["triangle"], "--seed", "2")[1])
    assert a["result"]["rows"] != b["result"]["rows"]


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv(ENV_FACE_CAP, "10")
    monkeypatch.setenv(ENV_PAIR_BUDGET, "77")
    assert env_defaults() == {"face_cap": 10, "pair_budget": 77}
    code, _, _ = run(capsys, "schubert", "complex", "1 2 3 4")
    assert code == 2
    code, out, _ = run(capsys, "schubert", "rank", "1 2")
    assert json.loads(out)["config"]["pair_budget"] == 77
    # an explicit flag wins over the environment
    code, out, _ = run(capsys, "schubert", "complex", "1 3", "--face-cap", "1000")
    assert code == 0
    monkeypatch.setenv(ENV_FACE_CAP, "many")
    with pytest.raises(ValueError):
        env_defaults()
    assert run(capsys, "schubert", "rank", "1 2")[0] == 2


def test_config_validation():
    assert RunConfig().prime == 32003 and not RunConfig().rational
    assert RunConfig(modulus=None).rational and RunConfig(modulus=None).to_dict()["field"] == "Q"
    for kwargs in ({"modulus": 9}, {"face_cap": 0}, {"output": "xml"}):
        with pytest.raises(ValueError):
            RunConfig(**kwargs)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "srschubert.cli", "schubert", "rank", "2531", "--format", "text"],
                          capture_output=True, text=True, env={**os.environ})
    assert proc.returncode == 0 and proc.stdout.splitlines()[-1] == "1 2 3 3 4"
