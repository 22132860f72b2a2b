import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qbayes.corpus import RELAY_PARTITION, bell_model, chsh_model, coin, corpus_models, relay_model, sprinkler_model
from qbayes.oracle import simulate_joint
from qbayes.qbn import (InEdge, InvalidModelError, Node, QbnModel, classical_model, conditional, distribution,
                        eliminate, elimination_cost, enumerate_joint, joint_semantics, marginal, min_weight_order,
                        naive_cost, random_cpt, subnetwork_semantics, validate)
from qbayes.qfactor import QFactor, equal_within, product, product_all


def test_corpus_models_valid():
    for name, model in corpus_models().items():
        assert validate(model).valid, name


def test_doubled_cpt_invalid():
    model = bell_model()
    a = model.nodes["A"]
    bad = Node("A", "classical", QFactor(a.cpt.variables, a.cpt.qubits, 2 * a.cpt.data), a.parents)
    report = validate(QbnModel([bad if n.name == "A" else n for n in model.nodes.values()]))
    assert not report.valid
    assert any("'A'" in e for e in report.errors)
    with pytest.raises(InvalidModelError):
        marginal(QbnModel([bad if n.name == "A" else n for n in model.nodes.values()]), ["A"])


def test_coin_model():
    model = QbnModel([coin("X", 0.25)])
    assert distribution(marginal(model, ["X"])) == pytest.approx({("t",): 0.25, ("f",): 0.75})


def test_cycle_reported():
    cpt = QFactor.classical(["X", "Y"], [[0.5, 0.5], [0.5, 0.5]])
    cpt2 = QFactor.classical(["Y", "X"], [[0.5, 0.5], [0.5, 0.5]])
    model = QbnModel([Node("X", "classical", cpt, [InEdge("Y", ("Y",))]),
                      Node("Y", "classical", cpt2, [InEdge("X", ("X",))])])
    assert any("cycle" in e for e in validate(model).errors)


def test_overlapping_out_edges_reported():
    model = bell_model()
    b = model.nodes["B"]
    # B now claims q1, which A already consumes
    cpt = QFactor(b.cpt.variables, ("q1",), b.cpt.data, check=False)
    bad = Node("B", "classical", cpt, (InEdge("Y", ("Y",)), InEdge("Q", ("q1",))))
    report = validate(QbnModel([bad if n.name == "B" else n for n in model.nodes.values()]))
    assert not report.valid


def test_bell_joint_entries():
    joint = distribution(joint_semantics(bell_model()), ("A", "B", "X", "Y"))
    assert joint[("t", "t", "t", "t")] == pytest.approx(1 / 8)
    assert joint[("t", "f", "t", "t")] == pytest.approx(0)
    # computational on one side, Hadamard on the other: uniform
    assert joint[("t", "f", "t", "f")] == pytest.approx(1 / 16)
    assert sum(joint.values()) == pytest.approx(1)


def test_bell_marginal_and_conditional():
    model = bell_model()
    assert distribution(marginal(model, ["A"])) == pytest.approx({("t",): 0.5, ("f",): 0.5})
    table = conditional(model, ["B"], ["A", "X", "Y"])
    assert table.prob({"B": "t"}, {"A": "t", "X": "t", "Y": "t"}) == pytest.approx(1)
    assert table.prob({"B": "t"}, {"A": "t", "X": "f", "Y": "f"}) == pytest.approx(1)
    assert table.prob({"B": "t"}, {"A": "t", "X": "t", "Y": "f"}) == pytest.approx(0.5)


def test_conditional_undefined_row():
    table = conditional(bell_model(1.0, 1.0), ["A"], ["X"])
    assert table.rows[("f",)] is None
    assert table.prob({"A": "t"}, {"X": "f"}) is None
    assert table.prob({"A": "t"}, {"X": "t"}) == pytest.approx(0.5)


def test_chsh_correlations():
    table = conditional(chsh_model(), ["A", "B"], ["X", "Y"])
    s = 0.0
    for x, y in itertools.product("tf", repeat=2):
        row = table.rows[(x, y)]
        corr = row[0, 0] + row[1, 1] - row[0, 1] - row[1, 0]
        s += -corr if (x, y) == ("f", "f") else corr
    assert s == pytest.approx(2 * np.sqrt(2))


def test_sprinkler_matches_enumeration():
    model = sprinkler_model()
    joint = distribution(joint_semantics(model), model.variables)
    assert joint == pytest.approx(enumerate_joint(model))


def test_marginal_order_validation():
    model = sprinkler_model()
    with pytest.raises(ValueError):
        marginal(model, ["W"], order=["C", "S"])
    with pytest.raises(KeyError):
        marginal(model, ["Z"])


def test_all_orders_agree_on_relay():
    model = relay_model()
    names = ["Y", "q1a", "q1b", "q2"]
    ref = marginal(model, ["X"])
    for order in itertools.permutations(names):
        assert equal_within(marginal(model, ["X"], order=order), ref)


def test_eliminate_chain():
    model = classical_model({"A": (), "B": ("A",), "C": ("B",)},
                            {"A": np.array([0.3, 0.7]), "B": np.array([[0.9, 0.2], [0.1, 0.8]]),
                             "C": np.array([[0.5, 0.4], [0.5, 0.6]])})
    out = eliminate(model.factors(), ["A", "B"])
    pa = np.array([0.3, 0.7])
    pb = np.array([[0.9, 0.2], [0.1, 0.8]]) @ pa
    pc = np.array([[0.5, 0.4], [0.5, 0.6]]) @ pb
    assert distribution(out) == pytest.approx({("t",): pc[0], ("f",): pc[1]})


def test_subnetwork_product_recovers_joint():
    model = relay_model()
    left, right = RELAY_PARTITION
    phi = product(subnetwork_semantics(model, left), subnetwork_semantics(model, right))
    assert equal_within(phi, product_all(model.factors()))
    assert subnetwork_semantics(model, []).scope == frozenset()
    with pytest.raises(KeyError):
        subnetwork_semantics(model, ["nope"])


def test_min_weight_not_worse_than_naive():
    for model in corpus_models().values():
        names = list(model.variables) + list(model.qubits)
        order = min_weight_order(model.factors(), names)
        assert sorted(order) == sorted(names)
        assert elimination_cost(model.factors(), order) <= naive_cost(model.factors())


@given(st.integers(0, 2**31 - 1))
def test_random_chain_engine_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    parents = {"A": (), "B": ("A",), "C": ("A", "B"), "D": ("C",)}
    model = classical_model(parents, {k: random_cpt(len(v), rng) for k, v in parents.items()})
    got = distribution(joint_semantics(model), model.variables)
    assert got == pytest.approx(enumerate_joint(model), abs=1e-12)
    assert simulate_joint(model).probabilities == pytest.approx(got, abs=1e-10)
