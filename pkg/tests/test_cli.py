import json
import subprocess
import sys

import pytest

from riesz import fixtures as F
from riesz import serialize
from riesz.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def triple_file(tmp_path, name):
    return write(tmp_path, f"{name}.json", serialize.triple_to_json(F.ALL[name]()))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate(tmp_path, capsys):
    code, out = run(capsys, "validate", triple_file(tmp_path, "tensor_ex"))
    assert code == 0 and out["valid"]
    obj = serialize.triple_to_json(F.lexicographic())
    obj["lattice"] = [e for e in obj["lattice"] if e["S"]]
    code, out = run(capsys, "validate", write(tmp_path, "bad.json", obj))
    assert code == 2
    assert "missing_empty" in [v["code"] for v in out["violations"]]
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    code, out = run(capsys, "validate", str(garbage))
    assert code == 1 and out["error"] == "parse"


def test_check(tmp_path, capsys):
    assert run(capsys, "check", triple_file(tmp_path, "tensor_ex"))[0] == 0
    assert run(capsys, "check", triple_file(tmp_path, "lexicographic"))[0] == 0
    code, out = run(capsys, "check", triple_file(tmp_path, "strict_quadrant"))
    assert code == 3
    assert out["conditions"]["iv"]["witness"] == [[], [1, 2]]


def test_check_invalid_triple(tmp_path, capsys):
    obj = serialize.triple_to_json(F.lexicographic())
    obj["lattice"][1] = {"S": [2], "P": [1]}
    code, out = run(capsys, "check", write(tmp_path, "bad.json", obj))
    assert code == 2 and out["error"] == "invalid_triple"
    assert [v["code"] for v in out["report"]["violations"]] == ["p_subset"]


def test_interpolate(tmp_path, capsys):
    t = triple_file(tmp_path, "tensor_ex")
    quad = write(tmp_path, "q.json", {"a1": [0, 0], "a2": [-1, 1], "b1": [1, 0], "b2": [0, 1]})
    code, out = run(capsys, "interpolate", t, quad)
    assert code == 0
    tt = F.tensor_ex()
    z = serialize.element_from_json(out["z"], tt)
    from riesz.triple import leq

    assert leq(tt, tt.zero(), z) and leq(tt, z, tt.element([1, 0]))

    same = write(tmp_path, "same.json", {k: [2, -1] for k in ("a1", "a2", "b1", "b2")})
    code, out = run(capsys, "interpolate", t, same)
    assert code == 0 and out["z"]["coeffs"] == ["2", "-1"]

    bad = write(tmp_path, "bad.json", {"a1": [1, 0], "a2": [0, 0], "b1": [0, 0], "b2": [0, 0]})
    assert run(capsys, "interpolate", t, bad)[0] == 4


def test_interpolate_conditions_fail(tmp_path, capsys):
    quad = write(tmp_path, "q.json", {"a1": [0, 0], "a2": [1, -1], "b1": [2, 1], "b2": [3, 1]})
    code, out = run(capsys, "interpolate", triple_file(tmp_path, "strict_quadrant"), quad)
    assert code == 3 and out["error"] == "conditions_fail"


def test_interpolate_random_is_seeded(tmp_path, capsys):
    t = triple_file(tmp_path, "lexicographic")
    _, first = run(capsys, "--seed", "5", "interpolate", t, "--random", "3")
    _, second = run(capsys, "--seed", "5", "interpolate", t, "--random", "3")
    assert first == second and len(first["results"]) == 3


def test_oracle(tmp_path, capsys):
    quad = write(tmp_path, "q.json", {"a1": [0, 0], "a2": [1, -1], "b1": [2, 1], "b2": [3, 1]})
    code, out = run(capsys, "oracle", triple_file(tmp_path, "strict_quadrant"), quad, "--bound", "10")
    assert code == 0 and out["found"] is False
    code, out = run(capsys, "oracle", triple_file(tmp_path, "half_open_half_plane"), quad)
    assert code == 1


def test_density(tmp_path, capsys):
    code, out = run(capsys, "density", triple_file(tmp_path, "tensor_ex"))
    assert code == 0 and out["dense"] is True
    code, out = run(capsys, "density", triple_file(tmp_path, "integers"), "--S", "1", "--coords", "1")
    assert code == 0 and out["dense"] is False
    code, out = run(capsys, "density", triple_file(tmp_path, "lexicographic"), "--S", "1")
    assert code == 1


def test_classify(capsys):
    code, out = run(capsys, "classify", "1")
    assert code == 0 and len(out) == 1
    code, out = run(capsys, "classify", "2")
    assert code == 0 and len(out) == 5
    assert sum(e["orbit"] for e in out) == 8
    code, out = run(capsys, "classify", "5")
    assert code == 5 and out["error"] == "too_large"


def test_canon(tmp_path, capsys):
    code, out = run(capsys, "canon", triple_file(tmp_path, "lexicographic"))
    assert code == 0
    assert out["members"] == [[], [1], [1, 2]]


def test_equiv(tmp_path, capsys):
    a, b = triple_file(tmp_path, "tensor_ex"), triple_file(tmp_path, "tensor_ex_scaled")
    code, out = run(capsys, "equiv", a, b)
    assert code == 0 and out["verdict"] == "yes" and out["phi"] == [[["3", "0"]]]
    code, out = run(capsys, "equiv", a, triple_file(tmp_path, "integers"))
    assert code == 3 and out["verdict"] == "no"
    code, out = run(capsys, "equiv", a, triple_file(tmp_path, "lexicographic"))
    assert code == 1
    order5 = write(tmp_path, "o5.json", {
        "n": 1, "mode": "finitely_generated",
        "field": {"min_poly": ["-2", "0", "1"], "root_interval": ["1", "2"]},
        "generators": [[["1"]], [["0", "5"]]],
        "lattice": [{"S": [], "P": []}, {"S": [1], "P": [1]}]})
    code, out = run(capsys, "equiv", a, order5)
    assert code == 6 and out["verdict"] == "unknown"


def test_usage_errors(capsys):
    code, out = run(capsys, "nonsense")
    assert code == 1 and out["error"] == "usage"
    code, out = run(capsys, "validate", "/does/not/exist.json")
    assert code == 1


def test_invalid_field_is_exit_2(tmp_path, capsys):
    obj = serialize.triple_to_json(F.tensor_ex())
    obj["field"]["root_interval"] = ["2", "3"]
    code, out = run(capsys, "validate", write(tmp_path, "f.json", obj))
    assert code == 2 and out["error"] == "invalid_field"


def test_precision_cap_flag(tmp_path, capsys):
    # a tiny cap cannot separate sqrt2 from its close rational neighbour
    t = triple_file(tmp_path, "tensor_ex")
    quad = write(tmp_path, "q.json", {"a1": [0, 0], "a2": [0, 0], "b1": [-1393, 985], "b2": [-1393, 985]})
    code, out = run(capsys, "--precision-cap", "3", "interpolate", t, quad)
    assert code == 8 and out["error"] == "PrecisionCap"


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "riesz", "check", triple_file(tmp_path, "integers")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["interpolation"] is True


@pytest.mark.parametrize("name", sorted(F.ALL))
def test_every_fixture_checks(tmp_path, capsys, name):
    code, out = run(capsys, "check", triple_file(tmp_path, name))
    assert code == (3 if name == "strict_quadrant" else 0)
