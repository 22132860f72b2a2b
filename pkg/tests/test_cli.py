import json

import pytest

from qbayes.cli import INVALID, IO_ERROR, NUMERIC, OK, main, run
from qbayes.corpus import data_path
from qbayes.io import load_model
from qbayes.oracle import simulate_joint

MODELS = ["bell.qbn", "chsh.qbn", "relay.qbn", "sprinkler.qbn"]


def path(name):
    return str(data_path(name))


def call(*argv):
    out = run(list(argv))
    return out.code, json.loads(out.text())


def test_validate_bell():
    code, report = call("validate", path("bell.qbn"))
    assert code == OK and report["status"] == "valid"


def test_validate_invalid(tmp_path):
    record = json.loads(data_path("bell.qbn").read_text())
    for node in record["nodes"]:
        if node["name"] == "A":
            for entry in node["cpt"]["entries"]:
                entry["matrix"] = [[[2 * re, 2 * im] for re, im in row] for row in entry["matrix"]]
    bad = tmp_path / "bad.qbn"
    bad.write_text(json.dumps(record))
    code, report = call("validate", str(bad))
    assert code == INVALID and report["status"] == "invalid"
    assert call("joint", str(bad))[0] == INVALID


def test_missing_file_and_usage():
    assert call("validate", "/nonexistent.qbn")[0] == IO_ERROR
    assert call("frobnicate")[0] == IO_ERROR
    assert call("marginal", path("bell.qbn"))[0] == IO_ERROR  # --targets is required


@pytest.mark.parametrize("name", MODELS)
def test_joint_agrees_with_oracle(name):
    code, report = call("joint", path(name), "--check")
    assert code == OK
    trace = simulate_joint(load_model(data_path(name)))
    for row in report["distribution"]:
        a = row["assignment"]
        assert row["p"] == pytest.approx(trace.prob(a), abs=1e-9)


def test_conditional_matches_oracle():
    code, cond = call("conditional", path("bell.qbn"), "--targets", "A,B", "--given", "X,Y")
    code2, orc = call("oracle", path("bell.qbn"), "--targets", "A,B", "--given", "X,Y")
    assert code == code2 == OK
    assert len(cond["rows"]) == len(orc["rows"]) == 4
    for r1, r2 in zip(cond["rows"], orc["rows"]):
        assert r1["given"] == r2["given"]
        for d1, d2 in zip(r1["distribution"], r2["distribution"]):
            assert d1["assignment"] == d2["assignment"]
            assert d1["p"] == pytest.approx(d2["p"], abs=1e-9)


def test_marginal_with_order():
    code, report = call("marginal", path("sprinkler.qbn"), "--targets", "W", "--order", "C,S,R", "--check")
    assert code == OK
    code, _ = call("marginal", path("sprinkler.qbn"), "--targets", "W", "--order", "C")
    assert code == INVALID


def test_choi_and_instrument():
    code, report = call("choi", path("bitflip.json"))
    assert code == OK and report["qcpt"] is True
    code, report = call("instrument", path("alice.json"))
    assert code == OK


def test_instrument_needs_role(tmp_path):
    record = json.loads(data_path("alice.json").read_text())
    del record["role"]
    f = tmp_path / "alice_norole.json"
    f.write_text(json.dumps(record))
    assert call("instrument", str(f))[0] != OK
    assert call("instrument", str(f), "--head", "A")[0] == OK
    assert call("instrument", str(f), "--head", "X")[0] == INVALID


def test_pn_commands(tmp_path):
    code, report = call("pn-check", path("bell.pnet"))
    assert code == OK and report["correct"] and report["qpn"]
    code, report = call("pn-compose", path("r0.pnet"), path("r2.pnet"), "--on", "(A+ -o C+)")
    assert code == INVALID
    out = tmp_path / "r01.pnet"
    code, report = call("pn-compose", path("r0.pnet"), path("r1.pnet"), "--on", "(A+ -o C+)", "--out", str(out))
    assert code == OK and out.exists()
    code, report = call("pn-reduce", str(out), "--out", str(tmp_path / "nf.pnet"))
    assert code == OK and report["mult_steps"] == 1
    code, report = call("pn-check", str(tmp_path / "nf.pnet"))
    assert code == OK and report["polarized"]
    code, report = call("pn-sem", path("bell.pnet"))
    assert code == OK and report["interface"] == ["A", "B"]
    code, report = call("pn-encode", path("bell.qbn"), "--observed", "A,B,X,Y")
    assert code == OK


def test_bad_formula():
    assert call("pn-compose", path("r0.pnet"), path("r1.pnet"), "--on", "(A+ -o")[0] == IO_ERROR


@pytest.mark.parametrize("argv", [
    ["joint", "bell.qbn"],
    ["conditional", "chsh.qbn", "--targets", "A,B", "--given", "X,Y"],
    ["oracle", "relay.qbn"],
    ["pn-sem", "r1.pnet"],
    ["pn-reduce", "bell.pnet"],
])
def test_deterministic_output(argv, capsys):
    argv = [argv[0], path(argv[1])] + argv[2:]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_numbers_rounded():
    code, report = call("marginal", path("relay.qbn"), "--targets", "X")
    for row in report["distribution"]:
        assert len(repr(row["p"]).replace("0.", "").lstrip("0")) <= 13


def test_selftest_subset():
    code, report = call("selftest", "--criteria", "1,2")
    assert code == OK


def test_oracle_size_cap(tmp_path):
    from qbayes.io import save_model
    from qbayes.oracle import MAX_VARIABLES
    from qbayes.qbn import classical_model
    import numpy as np
    names = [f"V{i:02d}" for i in range(MAX_VARIABLES + 1)]
    model = classical_model({n: () for n in names}, {n: np.array([0.5, 0.5]) for n in names})
    save_model(model, tmp_path / "big.qbn")
    assert call("oracle", str(tmp_path / "big.qbn"))[0] == NUMERIC
