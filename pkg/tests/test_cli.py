import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from cartan_pentads import cli
from cartan_pentads.graded import build_algebra
from cartan_pentads.spec_io import dumps_spec, load_spec, pentad_from_dict
from conftest import loop, sl2, sl3_a


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def spec_of(p):
    return json.loads(dumps_spec(p))


# -- analyze ------------------------------------------------------------------

def test_analyze_sl3(tmp_path, capsys):
    path = write(tmp_path, "sl3.json", spec_of(sl3_a()))
    code, out, _ = run(capsys, "analyze", "--input", path, "--json")
    js = json.loads(out)
    assert code == 0
    assert js["regular"] is True and js["cartan"] == [["2", "-1"], ["-1", "2"]]


def test_analyze_singular_A_exit_3(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"schema": "pentad_spec_v1", "r": 2, "n": 1,
                                        "A": [["1", "1"], ["1", "1"]], "D": [["1"], ["0"]],
                                        "Gamma": ["1"]})
    code, _, err = run(capsys, "analyze", "--input", path)
    assert code == 3 and "A must be invertible" in err


def test_analyze_affine_not_regular(capsys):
    path = str(cli.fixture_paths()[0])
    assert path.endswith("affine_a1.json")
    code, out, _ = run(capsys, "analyze", "--input", path, "--json")
    assert code == 0 and json.loads(out)["regular"] is False


@pytest.mark.parametrize("content", ["{not json", json.dumps({"A": [[0.5]], "D": [["1"]], "Gamma": ["1"]}),
                                     json.dumps({"A": [["1"]], "Gamma": ["1"]}),
                                     json.dumps({"schema": "other", "A": [["1"]], "D": [["1"]], "Gamma": ["1"]})])
def test_parse_errors_exit_2(tmp_path, capsys, content):
    path = write(tmp_path, "x.json", content)
    code, _, _ = run(capsys, "analyze", "--input", path)
    assert code == 2


def test_missing_file_exit_2(tmp_path, capsys):
    assert run(capsys, "analyze", "--input", str(tmp_path / "none.json"))[0] == 2


def test_toml_spec(tmp_path, capsys):
    path = write(tmp_path, "sl2.toml", 'schema = "pentad_spec_v1"\nr = 1\nn = 1\n'
                 'A = [["1/8"]]\nD = [["2"]]\nGamma = ["4"]\n')
    code, out, _ = run(capsys, "analyze", "--input", path, "--json")
    assert code == 0 and json.loads(out)["cartan"] == [["2"]]


# -- expand -----------------------------------------------------------------

def test_expand_sl3_finite(tmp_path, capsys):
    path = write(tmp_path, "sl3.json", spec_of(sl3_a()))
    code, out, _ = run(capsys, "expand", "--input", path, "--max-degree", "4", "--json")
    js = json.loads(out)
    assert code == 0 and js["finite"] and js["total_dim"] == 8 and not js["truncated"]
    assert js["center_dim_0"] == 0


def test_expand_loop_truncated(tmp_path, capsys):
    path = write(tmp_path, "loop.json", spec_of(loop()))
    code, out, _ = run(capsys, "expand", "--input", path, "--max-degree", "5", "--json")
    js = json.loads(out)
    assert js["truncated"] and js["total_dim"] is None
    assert [js["dims"][str(k)] for k in range(1, 6)] == [2, 1, 2, 1, 2]


def test_expand_cs_family_builder(tmp_path, capsys):
    path = write(tmp_path, "cs.json", {"builder": "cs_family", "type": "A", "rank": 2,
                                       "n": [1, 0], "s": "2"})
    code, out, _ = run(capsys, "expand", "--input", path, "--max-degree", "8", "--json")
    js = json.loads(out)
    assert js["finite"] and js["total_dim"] == 15


def test_expand_text_output(tmp_path, capsys):
    path = write(tmp_path, "sl2.json", spec_of(sl2()))
    code, out, _ = run(capsys, "expand", "--input", path, "--max-degree", "2")
    assert code == 0 and "degree" in out and "total_dim: 3" in out


def test_max_degree_over_cap_exit_3(tmp_path, capsys):
    path = write(tmp_path, "sl2.json", spec_of(sl2()))
    assert run(capsys, "expand", "--input", path, "--max-degree", "20")[0] == 3
    assert run(capsys, "expand", "--input", path, "--max-degree", "20", "--cap", "20")[0] == 0


def test_deterministic_output(tmp_path, capsys):
    path = write(tmp_path, "loop.json", spec_of(loop()))
    outs = {run(capsys, "expand", "--input", path, "--max-degree", "4", "--json")[1] for _ in range(3)}
    assert len(outs) == 1


# -- module -------------------------------------------------------------------

def test_module_command(tmp_path, capsys):
    d = spec_of(sl2())
    d["module"] = {"weight": ["-3"], "direction": "positive"}
    path = write(tmp_path, "m.json", d)
    code, out, _ = run(capsys, "module", "--input", path, "--max-degree", "5", "--json")
    js = json.loads(out)
    assert code == 0 and js["total_dim"] == 4 and js["finite"]
    d["module"] = {"weight": ["3"], "direction": "negative"}
    path = write(tmp_path, "m2.json", d)
    js = json.loads(run(capsys, "module", "--input", path, "--max-degree", "5", "--json")[1])
    assert js["dims"] == {"0": 1, "-1": 1, "-2": 1, "-3": 1, "-4": 0, "-5": 0}


def test_module_missing_section_exit_2(tmp_path, capsys):
    path = write(tmp_path, "sl2.json", spec_of(sl2()))
    assert run(capsys, "module", "--input", path)[0] == 2


# -- compose ------------------------------------------------------------------

def test_compose_from_semisimple_roundtrip(tmp_path, capsys):
    path = write(tmp_path, "b.json", {"builder": "from_semisimple", "type": "A", "rank": 2})
    code, out, _ = run(capsys, "compose", "--input", path)
    assert code == 0
    js = json.loads(out)
    assert js["A"] == [["2/3", "1/3"], ["1/3", "2/3"]]
    p = pentad_from_dict(js)
    assert dumps_spec(p) == out
    out_path = write(tmp_path, "composed.json", out)
    assert load_spec(out_path)[0] == p


def test_compose_direct_sum_and_chain(tmp_path, capsys):
    a = write(tmp_path, "sl2.json", spec_of(sl2()))
    path = write(tmp_path, "ds.json", {"builder": "direct_sum", "inputs": ["sl2.json", spec_of(sl2())]})
    js = json.loads(run(capsys, "compose", "--input", path)[1])
    assert js["r"] == 2 and js["n"] == 2
    path = write(tmp_path, "ch.json", {"builder": "chain_append_weights", "input": "sl2.json",
                                       "weights": [["-2"]]})
    js = json.loads(run(capsys, "compose", "--input", path)[1])
    assert js["D"] == [["2", "-2"]] and js["Gamma"] == ["4", "1"]
    nested = write(tmp_path, "sh.json", {"builder": "shuffle_columns", "input": json.loads(open(path).read()),
                                         "perm": [1, 2], "Gamma": ["4", "4"]})
    js = json.loads(run(capsys, "compose", "--input", nested)[1])
    assert pentad_from_dict(js) == loop()


def test_compose_other_builders(tmp_path, capsys):
    for doc in ({"builder": "from_contragredient", "X": [["2", "-1"], ["-1", "2"]]},
                {"builder": "from_reductive", "type": "A", "rank": 2, "k": 1},
                {"builder": "reductive_rep_embedding", "type": "A", "rank": 2, "N": [[1], [0]], "A_Z": [["4/3"]]},
                {"builder": "scalar_augmented_embedding", "input": {"builder": "from_semisimple", "type": "A", "rank": 2},
                 "weights": [["-1", "0"]], "A_tilde": [["1"]]}):
        path = write(tmp_path, "b.json", doc)
        code, out, _ = run(capsys, "compose", "--input", path)
        assert code == 0, doc
        pentad_from_dict(json.loads(out))


def test_compose_errors(tmp_path, capsys):
    path = write(tmp_path, "b.json", {"builder": "nope"})
    assert run(capsys, "compose", "--input", path)[0] == 2
    path = write(tmp_path, "b.json", {"builder": "cs_family", "type": "A", "rank": 2, "n": [1, 0], "s": "2/3"})
    assert run(capsys, "compose", "--input", path)[0] == 3
    path = write(tmp_path, "b.json", {"builder": "reductive_rep_embedding", "type": "A", "rank": 2,
                                      "N": [[-1], [0]], "A_Z": [["1"]]})
    assert run(capsys, "compose", "--input", path)[0] == 3


# -- verify -------------------------------------------------------------------

def test_verify_all_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "--all-fixtures", "--json")
    js = json.loads(out)
    assert code == 0 and js["ok"]
    assert set(js["results"]) >= {"sl3_a", "sl3_b", "loop_sl2", "affine_a1", "nonregular_zero",
                                  "nonregular_heisenberg", "sl2", "gl3"}


def test_verify_asymmetric_skips_form(tmp_path, capsys):
    path = write(tmp_path, "asym.json", {"A": [["1", "1"], ["0", "1"]], "D": [["1"], ["0"]], "Gamma": ["1"]})
    code, out, _ = run(capsys, "verify", "--input", path, "--max-degree", "3")
    assert code == 0
    assert "invariant_form: skipped (A not symmetric)" in out


def test_verify_corrupted_table_exit_4(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "sl3.json", spec_of(sl3_a()))

    def tampered(p, N, cap):
        alg = build_algebra(p, N, cap)
        key = sorted(alg._pos.raise_[1])[0]
        alg._pos.raise_[1][key] = {0: F(7)}
        return alg

    monkeypatch.setattr(cli, "_build", tampered)
    code, out, _ = run(capsys, "verify", "--input", path, "--max-degree", "3")
    assert code == 4
    assert "jacobi: FAIL" in out


def test_verify_with_sampling(tmp_path, capsys):
    path = write(tmp_path, "loop.json", spec_of(loop()))
    code, _, _ = run(capsys, "verify", "--input", path, "--max-degree", "4", "--samples", "50", "--seed", "7")
    assert code == 0


def test_python_dash_m_entry_point():
    res = subprocess.run([sys.executable, "-m", "cartan_pentads", "verify", "--all-fixtures"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip().endswith("ALL PASS")
