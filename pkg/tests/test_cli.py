import json
import os

import pytest

from jordext.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_check_spin_factor(capsys, data):
    code, out = run(capsys, "check", data / "spinfactor.alg")
    assert code == 0 and "jordan: pass" in out.out


def test_check_nonjordan_prints_witness(capsys, data):
    code, out = run(capsys, "check", data / "nonjordan.alg")
    assert code == 1
    assert "jordan: FAIL" in out.out and "witness (1,1) (0,1)" in out.out


def test_check_json_report(capsys, data):
    code, out = run(capsys, "check", data / "nonjordan.alg", "--json")
    body = json.loads(out.out)
    assert code == 1 and body["passed"] is False
    verdicts = {v["axiom"]: v for v in body["report"]["verdicts"]}
    assert verdicts["jordan"]["witness"] == [["1", "1"], ["0", "1"]]
    assert body["report"]["mode"]


def test_sampled_seed_is_echoed(capsys, data):
    code, out = run(capsys, "check", data / "spinfactor.alg", "--mode", "sampled",
                    "--seed", "9", "--json")
    body = json.loads(out.out)
    assert code == 0 and body["seed"] == 9 and body["report"]["seed"] == 9


def test_h2_json(capsys):
    # the n = 1 model over GF(5) has 7 classes (see the h2 engine tests)
    code, out = run(capsys, "h2", "--n", 1, "--p", 5, "--eps", 0, "--json")
    body = json.loads(out.out)
    assert code == 0 and body["count"] == 7
    assert all("orbit_size" in c for c in body["classes"])


def test_classify_matrix_cubic(capsys):
    code, out = run(capsys, "classify", "matrix-cubic", "--n", 1, "--p", 5, "--json")
    assert code == 0 and json.loads(out.out)["count"] == 3


def test_classify_flag(capsys, data):
    code, out = run(capsys, "classify", "flag", "--algebra", data / "k1.alg", "--json")
    assert code == 0 and json.loads(out.out)["count"] == 6


@pytest.mark.parametrize("kind,file", [("unified", "unified.datum"), ("twisted", "twisted.datum"),
                                       ("crossed", "crossed.sys"), ("spin", "spin2.form")])
def test_products(capsys, data, kind, file):
    code, out = run(capsys, "product", kind, data / file)
    assert code == 0 and "field GF 5" in out.out


def test_extract(capsys, data):
    code, out = run(capsys, "extract", data / "dual.alg", "--subalg", data / "dual.sub",
                    "--retraction", data / "dual.ret")
    assert code == 0 and "dimV 1" in out.out


def test_artin(capsys, data):
    code, out = run(capsys, "artin", data / "spin.act", "--json")
    body = json.loads(out.out)
    assert code == 0 and body["left_action_zero"] and body["cyclic_kernel"]


def test_decompose(capsys, data):
    code, out = run(capsys, "decompose", data / "m2.alg", "--max-dim", 3, "--json")
    assert code == 0 and json.loads(out.out)["leaf_dims"] == [4]


def test_usage_errors(capsys, data):
    assert run(capsys, "check", data / "spinfactor.alg", "--bogus")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "check", data / "missing.alg")[0] == 2
    assert run(capsys, "extract", data / "dual.alg", "--subalg", data / "dual.sub",
               "--retraction", data / "bad.ret")[0] == 2


def test_bound_error(capsys, data):
    code, out = run(capsys, "check", data / "m2.alg", "--mode", "exhaustive", "--bound", 10)
    assert code == 2 and "bound" in out.err


def test_parse_error_exit(capsys, tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text("field GF 2\ndim 1\n")
    code, out = run(capsys, "check", f)
    assert code == 2 and "line 1" in out.err


def test_global_state_restored(capsys, data, monkeypatch):
    from jordext import kernels
    monkeypatch.delenv("JORD_BOUND", raising=False)
    before = kernels.BACKEND
    code, _ = run(capsys, "check", data / "spinfactor.alg", "--engine", "numpy", "--threads", 1,
                  "--bound", 100)
    assert code == 0
    assert kernels.BACKEND == before and "JORD_BOUND" not in os.environ
