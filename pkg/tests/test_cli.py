import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from rootline.cli import RunManifest, dispatch, main
from rootline.interlacing import KSInstance
from rootline.symfuncs import profile_of_roots


def run_cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "rootline.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture()
def profile_file(tmp_path):
    path = tmp_path / "prof.json"
    path.write_text(profile_of_roots(4, [1, 2, 3, 4], 2).to_json())
    return path


def test_approx_root_subcommand(profile_file, tmp_path):
    res = run_cli(["approx-root", "--profile", str(profile_file)], tmp_path)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["branch"] == "chebyshev-loop"  # k=2 > ln 4
    est = F(out["estimate"])
    factor = F(out["factor"])
    assert est <= 4 <= factor * est
    assert "estimate_dec" in out


def test_approx_root_from_coefficients(tmp_path):
    from rootline.poly import ExactPolynomial

    poly = ExactPolynomial.from_roots([1, 2, 3, 4])
    path = tmp_path / "poly.json"
    path.write_text(poly.to_json())
    res = run_cli(["approx-root", "--coeffs", str(path), "--k", "2"], tmp_path)
    assert res.returncode == 0
    assert json.loads(res.stdout)["k"] == 2


def test_pair_generation_and_verification(tmp_path):
    res = run_cli(["gen-pair", "--kind", "weak", "--n", "5",
                   "--out", "pair.json"], tmp_path)
    assert res.returncode == 0
    res2 = run_cli(["verify-pair", "--in", "pair.json"], tmp_path)
    assert res2.returncode == 0
    report = json.loads(res2.stdout)
    assert report["ok"]


def test_verify_pair_fails_on_tampering(tmp_path):
    run_cli(["gen-pair", "--kind", "weak", "--n", "4", "--out", "pair.json"], tmp_path)
    data = json.loads((tmp_path / "pair.json").read_text())
    data["ratio_lower"] = "999/1"
    (tmp_path / "pair.json").write_text(json.dumps(data))
    res = run_cli(["verify-pair", "--in", "pair.json"], tmp_path)
    assert res.returncode == 1


def test_girth_subcommand(tmp_path):
    res = run_cli(["girth", "--graph", "heawood"], tmp_path)
    assert json.loads(res.stdout)["girth"] == 6
    graph_file = tmp_path / "g.json"
    graph_file.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]]}))
    res2 = run_cli(["girth", "--graph", str(graph_file)], tmp_path)
    assert json.loads(res2.stdout)["girth"] == "infinity"


def test_sign_search_subcommand(tmp_path):
    res = run_cli(["sign-search", "--graph", "C_4"], tmp_path)
    out = json.loads(res.stdout)
    assert out["signing"] == [1, 1, 1, -1]
    assert F(out["lambda_max_lo"]) ** 2 <= 2 <= F(out["lambda_max_hi"]) ** 2


def test_verify_invariance_subcommand(tmp_path):
    res = run_cli(["verify-invariance", "--graph", "C_4", "--k", "3"], tmp_path)
    assert json.loads(res.stdout)["agree"] is True
    res4 = run_cli(["verify-invariance", "--graph", "C_4", "--k", "4"], tmp_path)
    out = json.loads(res4.stdout)
    assert out["agree"] is False and out["witness"] is not None


def test_round_subcommand(tmp_path):
    inst = KSInstance(2, ((((F(2), F(0)), F(1, 2)), ((F(0), F(1)), F(1, 2))),))
    (tmp_path / "ks.json").write_text(json.dumps(inst.to_json_dict()))
    res = run_cli(["round", "--family", "ks.json", "--epsilon", "1/2",
                   "--exhaustive-check"], tmp_path)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["assignment"] == [1]
    assert out["certified"] and out["exhaustive_root_match"]


def test_unknown_subcommand_exits_2(tmp_path):
    res = run_cli(["no-such-command"], tmp_path)
    assert res.returncode == 2


def test_byte_determinism(profile_file, tmp_path):
    a = run_cli(["approx-root", "--profile", str(profile_file)], tmp_path)
    b = run_cli(["approx-root", "--profile", str(profile_file)], tmp_path)
    assert a.stdout == b.stdout
    c = run_cli(["sign-search", "--graph", "Q_3"], tmp_path)
    d = run_cli(["sign-search", "--graph", "Q_3"], tmp_path)
    assert c.stdout == d.stdout


def test_manifest_round_trip(profile_file, tmp_path):
    manifest = {
        "subcommand": "approx-root",
        "parameters": {"profile": str(profile_file)},
        "seed": None,
        "output": str(tmp_path / "result.json"),
    }
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    res = run_cli(["manifest", str(mpath)], tmp_path)
    assert res.returncode == 0
    direct = run_cli(["approx-root", "--profile", str(profile_file)], tmp_path)
    assert (tmp_path / "result.json").read_text() == direct.stdout


def test_dispatch_in_process(profile_file):
    status, payload = dispatch(RunManifest(
        "approx-root", {"profile": str(profile_file)}))
    assert status == 0
    assert payload["branch"] == "chebyshev-loop"


def test_main_usage_error():
    assert main([]) == 2
