import numpy as np
import pytest

from qbayes.corpus import bell_model, coin, corpus_models
from qbayes.oracle import MAX_VARIABLES, SizeCapExceeded, simulate_joint
from qbayes.qbn import QbnModel, classical_model, distribution, enumerate_joint, joint_semantics, random_cpt


def test_coin():
    trace = simulate_joint(QbnModel([coin("X", 0.2)]))
    assert trace.probabilities == pytest.approx({("t",): 0.2, ("f",): 0.8})


def test_bell_values():
    trace = simulate_joint(bell_model())
    assert trace.variables == ("A", "B", "X", "Y")
    assert trace.prob({"A": "t", "B": "t", "X": "t", "Y": "t"}) == pytest.approx(1 / 8)
    assert trace.total() == pytest.approx(1)
    rows = simulate_joint(bell_model(1.0, 1.0)).conditional(["A"], ["X"])
    assert rows[("f",)] is None and rows[("t",)][("t",)] == pytest.approx(0.5)


def test_oracle_agrees_with_engine_on_corpus():
    for model in corpus_models().values():
        trace = simulate_joint(model)
        engine = distribution(joint_semantics(model), trace.variables)
        assert max(abs(engine[k] - p) for k, p in trace.probabilities.items()) < 1e-9


def test_classical_enumeration(rng):
    parents = {"A": (), "B": ("A",), "C": ("A", "B")}
    model = classical_model(parents, {k: random_cpt(len(v), rng) for k, v in parents.items()})
    trace = simulate_joint(model)
    assert trace.probabilities == pytest.approx(enumerate_joint(model), abs=1e-12)


def test_size_cap(rng):
    names = [f"V{i:02d}" for i in range(MAX_VARIABLES + 1)]
    model = classical_model({n: () for n in names}, {n: np.array([0.5, 0.5]) for n in names})
    with pytest.raises(SizeCapExceeded):
        simulate_joint(model)
