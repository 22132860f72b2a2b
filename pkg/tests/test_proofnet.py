import numpy as np
import pytest

from qbayes.corpus import RELAY_PARTITION, bell_model, bell_net, relay_model, modular_nets
from qbayes.oracle import simulate_joint
from qbayes.proofnet import (NetBuilder, PNode, ProofNet, TypeMismatchError, check_compositionality, check_correct,
                             check_qpn, check_typed_graph, compose_on, dual, encode_qbn, induced_dag, is_closed,
                             is_normal, neg, orient_polarized, parse_formula, plug, polarized_core, pos, qbn_from_net,
                             qpn_semantics, reduce_step, reduce_to_normal_form, redexes, canonical_form, step_bound)
from qbayes.proofnet.generate import identity_net, random_polarized_graph, small_polarized_graphs
from qbayes.qbn import distribution, joint_semantics, marginal
from qbayes.qfactor import QFactor, equal_within

LOLLI_AC = parse_formula("(A+ -o C+)")


def coin_box(b, name="X"):
    _, out = b.box(name, [], pos(name), QFactor.classical([name], [0.4, 0.6]))
    return out


# -- typing ------------------------------------------------------------------

def test_bell_net_typed_and_correct():
    net = bell_net()
    report = check_typed_graph(net)
    assert report.valid
    assert report.conclusions == [pos("A"), pos("B")]
    assert check_correct(net)
    assert check_qpn(net).valid


def test_contraction_on_qubit_rejected():
    b = NetBuilder()
    q = neg("q", "qubit")
    e1, e2, e3 = b.edge(q), b.edge(q), b.edge(q)
    b.node("contraction", (e1, e2), (e3,))
    b.node("weakening", (), (e1,))
    b.node("weakening", (), (e2,))
    report = check_typed_graph(b.build())
    assert any("contraction" in e for e in report.errors)


def test_edge_premise_of_two_nodes_rejected():
    b = NetBuilder()
    e = coin_box(b)
    x_neg, x_pos = b.ax(pos("X"))
    b.cut(e, x_neg)
    b.node("cut", (x_neg, x_pos))
    report = check_typed_graph(b.build())
    assert any("premise of 2 nodes" in err for err in report.errors)


def test_box_typing_rules():
    b = NetBuilder()
    b.box("X", [pos("Y")], pos("X"))  # positive input
    b.box("Z", [neg("Z")], pos("Z"))  # repeated atom
    errors = check_typed_graph(b.build()).errors
    assert any("not a negative atom" in e for e in errors)
    assert any("pairwise distinct" in e for e in errors)


# -- correctness and orientation ------------------------------------------------

def two_cycle():
    b = NetBuilder()
    a1, b1 = b.ax(pos("X"))
    a2, b2 = b.ax(pos("X"))
    b.cut(b1, a2)
    b.cut(b2, a1)
    return b.build()


def test_two_cycle_incorrect():
    net = two_cycle()
    assert check_typed_graph(net).valid
    assert not check_correct(net)
    assert not orient_polarized(net).is_dag


def test_acyclic_net_correct():
    b = NetBuilder()
    b.ax(pos("X"))
    assert check_correct(b.build())


def test_bell_induced_dag():
    dag = induced_dag(bell_net())
    assert set(dag.edges()) == {("Q", "A"), ("Q", "B"), ("X", "A"), ("Y", "B")}


def test_single_box_and_boxless_dags():
    b = NetBuilder()
    coin_box(b)
    dag = induced_dag(b.build())
    assert list(dag.nodes) == ["X"] and dag.number_of_edges() == 0
    b = NetBuilder()
    b.ax(pos("X"))
    assert induced_dag(b.build()).number_of_nodes() == 0


def test_unpolarized_orientation_raises():
    net = identity_net(parse_formula("(X+ | Y+)"))
    with pytest.raises(ValueError):
        orient_polarized(net)


def test_plugging_r0_r2_cores_is_cyclic():
    r0, _, r2 = modular_nets()
    c0 = polarized_core(reduce_to_normal_form(r0).net)
    c2 = polarized_core(reduce_to_normal_form(r2).net)
    plugged = plug(c0, c2, [(neg("A"), pos("A")), (pos("C"), neg("C"))])
    assert not orient_polarized(plugged).is_dag
    assert not check_correct(plugged)


def test_generated_graphs_agree():
    graphs = small_polarized_graphs(4)
    assert len(graphs) == 789  # all connected graphs with at most four nodes
    rng = np.random.default_rng(0)
    graphs += [random_polarized_graph(int(rng.integers(7, 12)), rng) for _ in range(50)]
    for net in graphs:
        assert check_typed_graph(net).valid
        assert check_correct(net) == orient_polarized(net).is_dag


# -- reduction ------------------------------------------------------------------

def test_ax_cut_leaves_the_edge():
    b = NetBuilder()
    out = coin_box(b)
    x_neg, x_pos = b.ax(pos("X"))
    b.cut(out, x_neg)
    net = b.build()
    assert [r.rule for r in redexes(net)] == ["ax"]
    red = reduce_to_normal_form(net)
    assert red.ax_steps == 1 and red.mult_steps == 0
    assert [n.kind for n in red.net.nodes.values()] == ["box"]
    assert red.net.conclusion_labels() == [pos("X")]


def test_mult_cut_splits():
    f = parse_formula("(A+ * B+)")
    net = compose_on(identity_net(f, "l"), identity_net(f, "r"), f)
    (mult,) = [r for r in redexes(net) if r.rule == "mult"]
    after = reduce_step(net, mult.cut)
    cuts = [n for n in after.nodes.values() if n.kind == "cut"]
    assert sorted(str(after.edges[c.premises[0]]) for c in cuts) == ["A+", "B+"]
    for c in cuts:
        assert after.edges[c.premises[1]] == dual(after.edges[c.premises[0]])
    red = reduce_to_normal_form(net)
    bound = step_bound(net)
    assert red.mult_steps <= bound[0] and red.ax_steps <= bound[1]
    assert red.net.conclusion_labels() == net.conclusion_labels()


def test_bell_net_already_normal():
    net = bell_net()
    assert is_normal(net)
    assert reduce_to_normal_form(net).net is net


def test_strategies_agree():
    r0, r1, _ = modular_nets()
    net = compose_on(r0, r1, LOLLI_AC)
    ref = canonical_form(reduce_to_normal_form(net).net)
    for seed in range(5):
        assert canonical_form(reduce_to_normal_form(net, "random", seed).net) == ref


def test_semantics_invariant_stepwise():
    r0, r1, _ = modular_nets()
    net = compose_on(r0, r1, LOLLI_AC)
    red = reduce_to_normal_form(net, keep_trace=True)
    ref = qpn_semantics(net)
    for step in red.trace:
        assert equal_within(qpn_semantics(step), ref)
    assert equal_within(qpn_semantics(polarized_core(red.net)), ref)


# -- polarized core ---------------------------------------------------------------

def test_core_of_r0():
    r0, _, _ = modular_nets()
    core = polarized_core(r0)
    assert core.conclusion_labels() == [neg("A"), pos("C")]
    assert sorted(n.kind for n in core.nodes.values()) == ["box", "box", "cut"]


def test_core_of_r2():
    _, _, r2 = modular_nets()
    core = polarized_core(reduce_to_normal_form(r2).net)
    assert core.conclusion_labels() == [neg("C"), pos("A"), pos("D")]
    assert core.is_polarized()


def test_core_unchanged_when_polarized():
    net = bell_net()
    assert canonical_form(polarized_core(net)) == canonical_form(net)


def test_core_requires_normal():
    r0, r1, _ = modular_nets()
    with pytest.raises(ValueError):
        polarized_core(compose_on(r0, r1, LOLLI_AC))


# -- composition ------------------------------------------------------------------

def test_r0_r1_compose():
    r0, r1, _ = modular_nets()
    net = compose_on(r0, r1, LOLLI_AC)
    assert net.conclusion_labels() == [pos("D")]
    assert check_qpn(net).valid
    normal = reduce_to_normal_form(net).net
    assert normal.is_polarized() and orient_polarized(normal).is_dag


def test_r0_r2_type_mismatch():
    r0, _, r2 = modular_nets()
    with pytest.raises(TypeMismatchError):
        compose_on(r0, r2, LOLLI_AC)


def test_identity_cut_vanishes():
    b = NetBuilder()
    out = coin_box(b)
    net = b.build()
    composed = compose_on(net, identity_net(pos("X")), pos("X"))
    assert composed.conclusion_labels() == [pos("X")]
    assert canonical_form(reduce_to_normal_form(composed).net) == canonical_form(net)
    assert out in net.conclusions()


# -- encoding and semantics --------------------------------------------------------

def test_encode_observed_all():
    net = encode_qbn(bell_model(), ("A", "B", "X", "Y"))
    assert net.conclusion_labels() == [pos(v) for v in "ABXY"]
    assert check_qpn(net).valid and is_closed(net)
    assert equal_within(qpn_semantics(net), joint_semantics(bell_model()))


def test_encode_round_trip_dag():
    model = relay_model()
    net = encode_qbn(model)
    assert set(induced_dag(net).edges()) == set(model.graph().edges())
    back = qbn_from_net(net)
    assert equal_within(marginal(back, ["X"]), marginal(model, ["X"]))


def test_isolated_observed_node():
    from qbayes.corpus import coin
    from qbayes.qbn import QbnModel
    net = encode_qbn(QbnModel([coin("X", 0.4)]), ("X",))
    assert net.conclusion_labels() == [pos("X")]
    assert distribution(qpn_semantics(net)) == pytest.approx({("t",): 0.4, ("f",): 0.6})


def test_bell_net_semantics_against_oracle():
    phi = qpn_semantics(bell_net())
    want = simulate_joint(bell_model()).marginal(("A", "B"))
    got = distribution(phi, ("A", "B"))
    assert got == pytest.approx(want, abs=1e-10)


def test_boxless_semantics_trivial():
    b = NetBuilder()
    b.ax(pos("X"))
    assert equal_within(qpn_semantics(b.build()), QFactor.trivial())


def test_compositionality_splits():
    net = bell_net()
    boxes = {b.name: b.id for b in net.boxes()}
    assert check_compositionality(net, [boxes["Q"], boxes["A"]])
    assert check_compositionality(net, [boxes["X"]])
    assert check_compositionality(net, [])
    assert check_compositionality(net, list(net.nodes))
    relay = encode_qbn(relay_model())
    ids = {b.name: b.id for b in relay.boxes()}
    assert check_compositionality(relay, [ids[n] for n in RELAY_PARTITION[0]])


def test_bad_node_kind():
    with pytest.raises(ValueError):
        PNode("n", "lambda")
    with pytest.raises(ValueError):
        ProofNet([PNode("n", "ax", (), ("missing",))], {})
