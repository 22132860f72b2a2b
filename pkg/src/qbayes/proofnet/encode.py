"""Translations between quantum Bayesian networks and quantum proof-nets."""
from __future__ import annotations

from typing import Iterable

from ..qbn import InEdge, Node, QbnModel, _require_valid
from .formula import Atom, atoms, neg, pos, tensor_all
from .net import NetBuilder, ProofNet, box_output, check_qpn, orient_polarized
from .reduce import is_normal


def _tree(b: NetBuilder, kind: str, leaves: list[str]) -> str:
    """Left-combed tree of binary ``kind`` nodes over ``leaves``."""
    acc = leaves[0]
    for leaf in leaves[1:]:
        acc = b.contraction(acc, leaf) if kind == "contraction" else b.binary(kind, acc, leaf)
    return acc


def encode_qbn(model: QbnModel, observed: Iterable[str] | None = None) -> ProofNet:
    """The closed polarized qpn of ``model``.

    Each node becomes a box whose output is cut against the structure that
    routes it to its consumers:

    * a variable with several consumers goes through a left-combed
      contraction tree, a single consumer is cut directly, and an unused
      variable is cut against a weakening;
    * an observed variable with consumers also feeds an axiom whose positive
      side is a conclusion; an observed variable without consumers leaves
      its box output as a conclusion;
    * a register is cut against a left-combed par over its qubits, each
      routed to its consumer input or to a weakening.
    """
    _require_valid(model)
    observed = model.observed if observed is None else tuple(observed)
    unknown = [v for v in observed if v not in model.variables]
    if unknown:
        raise ValueError(f"observed names {unknown} are not classical variables")
    b = NetBuilder()
    order = model.topological_order()
    outputs: dict[str, str] = {}
    consumers: dict[str, list[str]] = {}  # classical name or qubit -> input edges
    for name in order:
        node = model.nodes[name]
        inputs = []
        for p in node.parents:
            src = model.nodes[p.source]
            if src.kind == "classical":
                inputs.append(neg(p.source))
            else:
                inputs.extend(neg(q, "qubit") for q in p.label)
        if node.kind == "classical":
            out = pos(name)
        else:
            out = tensor_all(pos(q, "qubit") for q in node.qubits)
        ins, o = b.box(name, inputs, out, node.cpt)
        outputs[name] = o
        for e in ins:
            consumers.setdefault(b.edges[e].name, []).append(e)
    for name in order:
        node = model.nodes[name]
        if node.kind == "classical":
            leaves = list(consumers.get(name, []))
            if name in observed:
                if not leaves:
                    continue
                x_neg, _ = b.ax(pos(name))
                leaves.append(x_neg)
            if not leaves:
                leaves = [b.weakening(neg(name))]
            b.cut(outputs[name], _tree(b, "contraction", leaves))
        else:
            leaves = [consumers[q][0] if q in consumers else b.weakening(neg(q, "qubit"))
                      for q in node.qubits]
            b.cut(outputs[name], _tree(b, "par", leaves))
    return b.build()


def is_closed(net: ProofNet) -> bool:
    """All atoms in the conclusions are positive and classical."""
    return all(a.positive and a.kind == "var" for f in net.conclusion_labels() for a in atoms(f))


def qbn_from_net(net: ProofNet) -> QbnModel:
    """The network induced by a normal, polarized, closed qpn.

    Each box becomes a node with its Q-CPT; a box input ``X-`` or ``q-`` is
    wired to the box whose output contains that name.
    """
    if not is_normal(net):
        raise ValueError("net is not normal")
    if not is_closed(net):
        raise ValueError("net is not closed: conclusions must be positive classical atoms")
    report = check_qpn(net)
    if not report.valid:
        raise ValueError("; ".join(report.errors))
    if not orient_polarized(net).is_dag:
        raise ValueError("polarity orientation is cyclic")
    producer: dict[str, str] = {}
    for bx in net.boxes():
        for a in atoms(box_output(bx, net)):
            producer[a.name] = bx.name
    nodes = []
    for bx in net.boxes():
        out = box_output(bx, net)
        parents: list[InEdge] = []
        qubit_groups: dict[str, list[str]] = {}
        for e in bx.conclusions[:-1]:
            a = net.edges[e]
            if a.name not in producer:
                raise ValueError(f"box {bx.name!r}: no box produces input {a}")
            if a.kind == "var":
                parents.append(InEdge(producer[a.name], (a.name,)))
            else:
                qubit_groups.setdefault(producer[a.name], []).append(a.name)
        parents.extend(InEdge(src, tuple(qs)) for src, qs in qubit_groups.items())
        if isinstance(out, Atom) and out.kind == "var":
            if bx.name != out.name:
                raise ValueError(f"classical box {bx.name!r} outputs {out}")
            nodes.append(Node(bx.name, "classical", bx.cpt, tuple(parents)))
        else:
            nodes.append(Node(bx.name, "quantum", bx.cpt, tuple(parents),
                              qubits=tuple(a.name for a in atoms(out))))
    observed = sorted({a.name for f in net.conclusion_labels() for a in atoms(f)})
    return QbnModel(nodes, observed)

