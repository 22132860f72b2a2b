"""Typed graphs over the proof-net node alphabet, with boxes carrying Q-CPTs.

A node lists its premise edges and its conclusion edges in port order. An
edge knows only its formula label; its endpoints are recovered from the
nodes. An edge that is premise of no node is a (pending) conclusion of the
net; an edge that is conclusion of no node is a pending premise.

Node kinds and their typing:

=============  ===========================  ==============================
kind           premises                     conclusions
=============  ===========================  ==============================
``ax``         none                         ``A``, ``A⊥`` (atoms)
``cut``        ``A``, ``A⊥``                none
``tensor``     ``A``, ``B``                 ``A ⊗ B``
``par``        ``A``, ``B``                 ``A ⅋ B``
``contraction````X⁻``, ``X⁻``               ``X⁻`` (classical ``X``)
``weakening``  none                         ``X⁻`` or ``q⁻``
``box``        none                         negative atoms, then the output
=============  ===========================  ==============================
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from ..qcpt import QcptRole
from ..qfactor import QFactor
from .formula import Atom, Formula, Par, Tensor, atoms, dual, is_register_output, names, polarity

NODE_KINDS = ("ax", "cut", "tensor", "par", "contraction", "weakening", "box")
SWITCH_KINDS = ("par", "contraction")
MAX_SWITCHINGS = 1 << 20


@dataclass(frozen=True)
class PNode:
    id: str
    kind: str
    premises: tuple[str, ...] = ()
    conclusions: tuple[str, ...] = ()
    name: str | None = None  # box name
    cpt: QFactor | None = None  # box Q-CPT

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "conclusions", tuple(self.conclusions))


class ProofNet:
    """An immutable typed graph.

    ``edges`` maps edge ids to labels; its order fixes the order of the
    conclusions. Box nodes carry a ``name`` and (for qpns) a ``cpt``.
    """

    def __init__(self, nodes: Iterable[PNode], edges: Mapping[str, Formula]):
        self.nodes: dict[str, PNode] = {}
        for n in nodes:
            if n.id in self.nodes:
                raise ValueError(f"duplicate node id {n.id!r}")
            self.nodes[n.id] = n
        self.edges: dict[str, Formula] = dict(edges)
        src: dict[str, list[tuple[str, int]]] = {e: [] for e in self.edges}
        dst: dict[str, list[tuple[str, int]]] = {e: [] for e in self.edges}
        for n in self.nodes.values():
            for port, e in enumerate(n.conclusions):
                if e not in self.edges:
                    raise ValueError(f"node {n.id!r} refers to unknown edge {e!r}")
                src[e].append((n.id, port))
            for port, e in enumerate(n.premises):
                if e not in self.edges:
                    raise ValueError(f"node {n.id!r} refers to unknown edge {e!r}")
                dst[e].append((n.id, port))
        self._src = src
        self._dst = dst

    # incidence --------------------------------------------------------------
    def src(self, e: str) -> tuple[str, int] | None:
        """The (node, port) having ``e`` as conclusion."""
        s = self._src[e]
        return s[0] if s else None

    def dst(self, e: str) -> tuple[str, int] | None:
        """The (node, port) having ``e`` as premise."""
        d = self._dst[e]
        return d[0] if d else None

    def conclusions(self) -> list[str]:
        """Pending conclusions (premise of no node), in edge order."""
        return [e for e in self.edges if not self._dst[e]]

    def pending_premises(self) -> list[str]:
        return [e for e in self.edges if not self._src[e]]

    def conclusion_labels(self) -> list[Formula]:
        return [self.edges[e] for e in self.conclusions()]

    def boxes(self) -> list[PNode]:
        return [n for n in self.nodes.values() if n.kind == "box"]

    def box(self, name: str) -> PNode:
        for b in self.boxes():
            if b.name == name:
                return b
        raise KeyError(f"no box named {name!r}")

    def names(self) -> frozenset[str]:
        """Every name occurring in an edge label."""
        out: set[str] = set()
        for f in self.edges.values():
            out |= names(f)
        return frozenset(out)

    def kinds(self) -> dict[str, str]:
        return {a.name: a.kind for f in self.edges.values() for a in atoms(f)}

    def is_polarized(self) -> bool:
        return all(polarity(f) is not None for f in self.edges.values())

    def replace(self, nodes: Iterable[PNode] | None = None, edges: Mapping[str, Formula] | None = None) -> "ProofNet":
        return ProofNet(self.nodes.values() if nodes is None else nodes,
                        self.edges if edges is None else edges)

    def __repr__(self) -> str:
        return f"ProofNet({len(self.nodes)} nodes, {len(self.edges)} edges, conclusions={[str(f) for f in self.conclusion_labels()]})"


# -- local typing --------------------------------------------------------------

@dataclass
class TypingReport:
    errors: list[str] = field(default_factory=list)
    conclusions: list[Formula] = field(default_factory=list)
    pending_premises: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.valid


def box_output(node: PNode, net: ProofNet) -> Formula:
    return net.edges[node.conclusions[-1]]


def box_role(node: PNode, net: ProofNet) -> QcptRole:
    """The Q-CPT role of a box: its output names given its input names."""
    out = box_output(node, net)
    ins = [net.edges[e] for e in node.conclusions[:-1]]
    in_vars = tuple(a.name for a in ins if a.kind == "var")
    in_qubits = tuple(a.name for a in ins if a.kind == "qubit")
    if isinstance(out, Atom) and out.kind == "var":
        return QcptRole.classical(out.name, in_vars, in_qubits)
    return QcptRole.quantum(tuple(a.name for a in atoms(out)), in_vars, in_qubits)


def _check_node(n: PNode, net: ProofNet, err) -> None:
    lab = net.edges
    P = [lab[e] for e in n.premises]
    C = [lab[e] for e in n.conclusions]
    where = f"node {n.id!r} ({n.kind})"
    arity = {"ax": (0, 2), "cut": (2, 0), "tensor": (2, 1), "par": (2, 1),
             "contraction": (2, 1), "weakening": (0, 1)}
    if n.kind in arity and (len(P), len(C)) != arity[n.kind]:
        err(f"{where}: expected {arity[n.kind][0]} premises and {arity[n.kind][1]} conclusions, "
            f"got {len(P)} and {len(C)}")
        return
    if n.kind == "ax":
        if not (isinstance(C[0], Atom) and C[1] == dual(C[0])):
            err(f"{where}: conclusions must be dual atoms, got {C[0]}, {C[1]}")
    elif n.kind == "cut":
        if P[1] != dual(P[0]):
            err(f"{where}: premises {P[0]} and {P[1]} are not dual")
    elif n.kind == "tensor":
        if C[0] != Tensor(P[0], P[1]):
            err(f"{where}: conclusion {C[0]} is not ({P[0]} * {P[1]})")
    elif n.kind == "par":
        if C[0] != Par(P[0], P[1]):
            err(f"{where}: conclusion {C[0]} is not ({P[0]} | {P[1]})")
    elif n.kind == "contraction":
        ok = (isinstance(P[0], Atom) and P[0].kind == "var" and not P[0].positive
              and P[0] == P[1] == C[0])
        if not ok:
            err(f"{where}: contraction only applies to negative classical atoms, got {P[0]}, {P[1]} -> {C[0]}")
    elif n.kind == "weakening":
        if not (isinstance(C[0], Atom) and not C[0].positive):
            err(f"{where}: weakening must conclude a negative atom, got {C[0]}")
    elif n.kind == "box":
        if P:
            err(f"{where}: a box has no premises")
        if not C:
            err(f"{where}: a box needs an output")
            return
        out, ins = C[-1], C[:-1]
        if not ((isinstance(out, Atom) and out.positive and out.kind == "var") or is_register_output(out)):
            err(f"{where}: output must be X+ or a tensor of q+, got {out}")
        for f in ins:
            if not (isinstance(f, Atom) and not f.positive):
                err(f"{where}: input {f} is not a negative atom")
        conc_names = [a.name for f in C for a in atoms(f)]
        if len(set(conc_names)) != len(conc_names):
            err(f"{where}: atoms in the conclusions of a box must be pairwise distinct")
        if not n.name:
            err(f"{where}: box without a name")


def check_typed_graph(net: ProofNet) -> TypingReport:
    """Check every local typing condition and edge-incidence rule."""
    report = TypingReport()
    err = report.errors.append
    for e in net.edges:
        if len(net._src[e]) > 1:
            err(f"edge {e!r} is the conclusion of {len(net._src[e])} nodes")
        if len(net._dst[e]) > 1:
            err(f"edge {e!r} is the premise of {len(net._dst[e])} nodes")
        if not net._src[e] and not net._dst[e]:
            err(f"edge {e!r} is attached to no node")
    for n in net.nodes.values():
        _check_node(n, net, err)
    report.conclusions = net.conclusion_labels()
    report.pending_premises = net.pending_premises()
    return report


def check_qpn(net: ProofNet, tol: float = 1e-9) -> TypingReport:
    """Typing, correctness, freshness and the Q-CPT condition on every box."""
    from ..qcpt import check_generalized_qcpt, check_scope

    report = check_typed_graph(net)
    err = report.errors.append
    if report.pending_premises:
        err(f"pending premises {report.pending_premises}: not a proof-net")
    if report.valid and not check_correct(net):
        err("correctness criterion fails: a cycle avoids both premises of every par/contraction")
    outputs: dict[str, str] = {}
    q_inputs: dict[str, str] = {}
    box_names: set[str] = set()
    for b in net.boxes():
        if not b.conclusions:
            continue
        if b.name in box_names:
            err(f"box name {b.name!r} used twice")
        box_names.add(b.name)
        for a in atoms(net.edges[b.conclusions[-1]]):
            if a.name in outputs:
                err(f"boxes {outputs[a.name]!r} and {b.name!r} both output {a.name!r}")
            outputs[a.name] = b.name
        for e in b.conclusions[:-1]:
            a = net.edges[e]
            if isinstance(a, Atom) and a.kind == "qubit":
                if a.name in q_inputs and q_inputs[a.name] != b.name:
                    err(f"boxes {q_inputs[a.name]!r} and {b.name!r} both take {a.name}- as input")
                q_inputs[a.name] = b.name
        if b.cpt is None:
            err(f"box {b.name!r} carries no Q-CPT")
            continue
        try:
            role = box_role(b, net)
            check_scope(b.cpt, role)
        except ValueError as e:
            err(f"box {b.name!r}: {e}")
            continue
        if not check_generalized_qcpt(b.cpt, role, tol):
            err(f"box {b.name!r}: Q-CPT condition fails")
    return report


# -- correctness -----------------------------------------------------------------

def _links(net: ProofNet) -> list[tuple[str, str, str]]:
    """Undirected links ``(edge, u, v)`` for edges with both endpoints."""
    out = []
    for e in net.edges:
        s, d = net.src(e), net.dst(e)
        if s is not None and d is not None:
            out.append((e, s[0], d[0]))
    return out


def _prune(links: list[tuple[str, str, str]]) -> list[tuple[str, str, str]]:
    """Drop links that cannot lie on a cycle (repeatedly remove degree-1 nodes)."""
    links = list(links)
    while True:
        deg: dict[str, int] = {}
        for _, u, v in links:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        keep = [l for l in links if deg[l[1]] > 1 and deg[l[2]] > 1]
        if len(keep) == len(links):
            return keep
        links = keep


def _has_cycle(links: Iterable[tuple[str, str, str]]) -> bool:
    parent: dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, u, v in links:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def correctness_witness(net: ProofNet) -> dict[str, str] | None:
    """A switching (switch node -> removed premise) leaving a cycle, or ``None``.

    Every cycle uses both premises of some par or contraction node exactly when
    each graph obtained by deleting one premise of every such node is acyclic.
    """
    links = _prune(_links(net))
    present = {e for e, _, _ in links}
    choices = []
    for n in net.nodes.values():
        if n.kind in SWITCH_KINDS and len(n.premises) == 2 and all(p in present for p in n.premises):
            choices.append((n.id, n.premises))
    if 2 ** len(choices) > MAX_SWITCHINGS:
        raise ValueError(f"{len(choices)} switch nodes: too many switchings to enumerate")
    for pick in itertools.product((0, 1), repeat=len(choices)):
        removed = {prem[i] for (_, prem), i in zip(choices, pick)}
        kept = _prune([l for l in links if l[0] not in removed])
        if _has_cycle(kept):
            return {nid: prem[i] for (nid, prem), i in zip(choices, pick)}
    return None


def check_correct(net: ProofNet) -> bool:
    return correctness_witness(net) is None


# -- polarity orientation ----------------------------------------------------------

@dataclass(frozen=True)
class Orientation:
    graph: nx.DiGraph
    cycle: list[tuple[str, str]] | None

    @property
    def is_dag(self) -> bool:
        return self.cycle is None


def orient_polarized(net: ProofNet) -> Orientation:
    """Orient positive edges downward (source to target node) and negative ones upward.

    Raises ``ValueError`` if some edge label is not strictly polarized.
    """
    g = nx.DiGraph()
    g.add_nodes_from(net.nodes)
    for e, f in net.edges.items():
        p = polarity(f)
        if p is None:
            raise ValueError(f"edge {e!r} has unpolarized label {f}")
        s, d = net.src(e), net.dst(e)
        if s is None or d is None:
            continue
        u, v = (s[0], d[0]) if p == "positive" else (d[0], s[0])
        if g.has_edge(u, v):
            g[u][v]["edges"].append(e)
        else:
            g.add_edge(u, v, edges=[e])
    try:
        cycle = [(u, v) for u, v in nx.find_cycle(g)]
    except nx.NetworkXNoCycle:
        cycle = None
    return Orientation(g, cycle)


def induced_dag(net: ProofNet) -> nx.DiGraph:
    """DAG on box names: ``b -> b'`` when a directed path avoids other boxes.

    Raises ``ValueError`` on an unpolarized net or a cyclic orientation.
    """
    orient = orient_polarized(net)
    if not orient.is_dag:
        raise ValueError(f"orientation has a directed cycle {orient.cycle}")
    g = orient.graph
    dag = nx.DiGraph()
    boxes = {b.id: b.name for b in net.boxes()}
    dag.add_nodes_from(boxes.values())
    for bid, name in boxes.items():
        stack, seen = list(g.successors(bid)), set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            if v in boxes:
                dag.add_edge(name, boxes[v])
            else:
                stack.extend(g.successors(v))
    return dag


# -- building helpers ------------------------------------------------------------

class NetBuilder:
    """Incremental construction with generated ids."""

    def __init__(self, prefix: str = ""):
        self.prefix = prefix
        self.nodes: dict[str, dict] = {}
        self.edges: dict[str, Formula] = {}
        self._n = itertools.count(1)
        self._e = itertools.count(1)

    def edge(self, label: Formula) -> str:
        e = f"{self.prefix}e{next(self._e)}"
        self.edges[e] = label
        return e

    def node(self, kind: str, premises: Sequence[str] = (), conclusions: Sequence[str] = (),
             name: str | None = None, cpt: QFactor | None = None, id: str | None = None) -> str:
        nid = id or f"{self.prefix}{kind[:3]}{next(self._n)}"
        if nid in self.nodes:
            raise ValueError(f"duplicate node id {nid!r}")
        self.nodes[nid] = dict(kind=kind, premises=list(premises), conclusions=list(conclusions),
                               name=name, cpt=cpt)
        return nid

    def box(self, name: str, inputs: Sequence[Formula], output: Formula, cpt: QFactor | None = None) -> tuple[list[str], str]:
        ins = [self.edge(f) for f in inputs]
        out = self.edge(output)
        self.node("box", (), ins + [out], name=name, cpt=cpt, id=f"{self.prefix}b_{name}")
        return ins, out

    def ax(self, atom: Atom) -> tuple[str, str]:
        """Axiom with conclusions ``(atom⊥, atom)``."""
        a, b = self.edge(dual(atom)), self.edge(atom)
        self.node("ax", (), (a, b))
        return a, b

    def cut(self, e1: str, e2: str) -> str:
        return self.node("cut", (e1, e2))

    def binary(self, kind: str, e1: str, e2: str) -> str:
        f1, f2 = self.edges[e1], self.edges[e2]
        out = self.edge(Tensor(f1, f2) if kind == "tensor" else Par(f1, f2))
        self.node(kind, (e1, e2), (out,))
        return out

    def contraction(self, e1: str, e2: str) -> str:
        out = self.edge(self.edges[e1])
        self.node("contraction", (e1, e2), (out,))
        return out

    def weakening(self, atom: Atom) -> str:
        out = self.edge(atom)
        self.node("weakening", (), (out,))
        return out

    def build(self) -> ProofNet:
        nodes = [PNode(nid, d["kind"], tuple(d["premises"]), tuple(d["conclusions"]), d["name"], d["cpt"])
                 for nid, d in self.nodes.items()]
        return ProofNet(nodes, self.edges)
