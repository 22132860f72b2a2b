import json

import numpy as np
import pytest

from qbayes.corpus import alice_qcpt, corpus_models, corpus_nets, relay_model
from qbayes.instruments import choi_from_instrument, random_instrument_family
from qbayes.io import (FormatError, factor_from_json, factor_to_json, instrument_family_from_json,
                       instrument_family_to_json, load_model, load_net, matrix_from_json, matrix_to_json,
                       model_from_json, model_to_json, net_from_text, net_to_text, save_model, save_net)
from qbayes.proofnet import canonical_form
from qbayes.qbn import InvalidModelError
from qbayes.qfactor import equal_within


def test_matrix_round_trip(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(m)))), m)


def test_negative_zero_normalized():
    assert matrix_to_json(np.array([[-0.0]])) == [[[0.0, 0.0]]]
    assert str(matrix_to_json(np.array([[-0.0]]))) == "[[[0.0, 0.0]]]"


def test_factor_round_trip():
    phi, _ = alice_qcpt()
    assert equal_within(factor_from_json(json.loads(json.dumps(factor_to_json(phi)))), phi, 0)


def test_models_round_trip(tmp_path):
    for name, model in corpus_models().items():
        path = tmp_path / f"{name}.qbn"
        save_model(model, path)
        back = load_model(path)
        assert model_to_json(back) == model_to_json(model)


def test_nets_round_trip(tmp_path):
    for name, net in corpus_nets().items():
        text = net_to_text(net)
        assert net_to_text(net_from_text(text)) == text
        save_net(net, tmp_path / f"{name}.pnet")
        assert canonical_form(load_net(tmp_path / f"{name}.pnet")) == canonical_form(net)


def test_instrument_family_round_trip(rng):
    fam = random_instrument_family(["A"], ["P"], ["i"], ["o"], rng)
    back = instrument_family_from_json(json.loads(json.dumps(instrument_family_to_json(fam))))
    assert equal_within(choi_from_instrument(back), choi_from_instrument(fam))


def test_bad_matrix():
    with pytest.raises(FormatError):
        matrix_from_json([[1, 2], [3, 4]])
    with pytest.raises(FormatError):
        matrix_from_json("nope")


def test_bad_factor_record():
    with pytest.raises(FormatError):
        factor_from_json({"classical_scope": ["X"]})
    record = factor_to_json(alice_qcpt()[0])
    record["entries"][0]["assignment"] = {"A": "t"}
    with pytest.raises(FormatError):
        factor_from_json(record)


def test_model_with_undeclared_parent():
    record = model_to_json(relay_model())
    for node in record["nodes"]:
        if node["name"] == "X":
            node["parents"] = [p for p in node["parents"] if p != "Y"] + ["Nope"]
    with pytest.raises((InvalidModelError, FormatError)):
        model_from_json(record)


def test_model_missing_fields():
    with pytest.raises(FormatError):
        model_from_json({"nodes": [{"name": "X"}]})


def test_net_text_errors():
    text = net_to_text(corpus_nets()["r0"])
    with pytest.raises(FormatError):
        net_from_text(text + "frobnicate 1 2\n")
    lines = [l for l in text.splitlines() if not l.startswith("conclusions")]
    with pytest.raises(FormatError):
        net_from_text("\n".join(lines + ["conclusions nope"]) + "\n")
