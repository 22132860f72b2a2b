"""Cut elimination on proof-nets, canonical serialization and polarized cores."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .formula import connectives, polarity
from .net import PNode, ProofNet


@dataclass(frozen=True)
class Redex:
    cut: str
    rule: str  # "ax" or "mult"


def redexes(net: ProofNet) -> list[Redex]:
    """All reducible cuts, sorted by cut id.

    A cut is an ``ax`` redex when one premise comes from an axiom, and a
    ``mult`` redex when its premises come from a tensor and a par. Cuts
    against boxes, contractions or weakenings are not redexes.
    """
    out = []
    for n in sorted(net.nodes.values(), key=lambda n: n.id):
        if n.kind != "cut" or len(n.premises) != 2:
            continue
        srcs = [net.src(e) for e in n.premises]
        kinds = [net.nodes[s[0]].kind if s else None for s in srcs]
        if "ax" in kinds:
            out.append(Redex(n.id, "ax"))
        elif sorted(k for k in kinds if k) == ["par", "tensor"]:
            out.append(Redex(n.id, "mult"))
    return out


def _fresh(net: ProofNet, base: str) -> str:
    nid, k = base, 1
    while nid in net.nodes:
        k += 1
        nid = f"{base}_{k}"
    return nid


def _with_port(node: PNode, side: str, port: int, edge: str) -> PNode:
    ports = list(getattr(node, side))
    ports[port] = edge
    return PNode(node.id, node.kind, node.premises if side == "conclusions" else tuple(ports),
                 tuple(ports) if side == "conclusions" else node.conclusions, node.name, node.cpt)


def reduce_step(net: ProofNet, cut_id: str) -> ProofNet:
    """Fire the redex at ``cut_id``.

    Axiom rule: an axiom with conclusions ``u, v`` where ``v`` meets ``w`` at
    the cut becomes the single edge ``u`` whose source is now the source of
    ``w``. Multiplicative rule: ``(A * B)`` cut against ``(A⊥ | B⊥)`` becomes
    two cuts ``A / A⊥`` and ``B / B⊥``, tensor-side premise first.
    """
    cut = net.nodes[cut_id]
    if cut.kind != "cut":
        raise ValueError(f"{cut_id!r} is not a cut")
    nodes = dict(net.nodes)
    edges = dict(net.edges)
    srcs = [net.src(e) for e in cut.premises]
    kinds = [net.nodes[s[0]].kind if s else None for s in srcs]
    if "ax" in kinds:
        i = kinds.index("ax")
        v, w = cut.premises[i], cut.premises[1 - i]
        ax = net.nodes[srcs[i][0]]
        u = ax.conclusions[1 - srcs[i][1]]
        if u == w:
            raise ValueError(f"cut {cut_id!r} closes a loop on an axiom")
        del nodes[ax.id], nodes[cut_id]
        del edges[v], edges[w]
        ws = srcs[1 - i]
        if ws is not None:
            nodes[ws[0]] = _with_port(nodes[ws[0]], "conclusions", ws[1], u)
        return ProofNet(nodes.values(), edges)
    if sorted(k for k in kinds if k) == ["par", "tensor"]:
        ti = kinds.index("tensor")
        t = net.nodes[srcs[ti][0]]
        p = net.nodes[srcs[1 - ti][0]]
        del nodes[t.id], nodes[p.id], nodes[cut_id]
        for e in cut.premises:
            del edges[e]
        c1 = _fresh(net, f"{cut_id}.1")
        c2 = _fresh(net, f"{cut_id}.2")
        nodes[c1] = PNode(c1, "cut", (t.premises[0], p.premises[0]))
        nodes[c2] = PNode(c2, "cut", (t.premises[1], p.premises[1]))
        return ProofNet(nodes.values(), edges)
    raise ValueError(f"cut {cut_id!r} is not a redex")


@dataclass(frozen=True)
class Reduction:
    net: ProofNet
    steps: list[Redex]
    trace: list[ProofNet]

    @property
    def ax_steps(self) -> int:
        return sum(r.rule == "ax" for r in self.steps)

    @property
    def mult_steps(self) -> int:
        return sum(r.rule == "mult" for r in self.steps)


def step_bound(net: ProofNet) -> tuple[int, int]:
    """Upper bounds on (multiplicative steps, axiom steps).

    Each multiplicative step consumes one connective of some cut formula and
    each axiom step removes one axiom.
    """
    mult = sum(connectives(net.edges[n.premises[0]]) for n in net.nodes.values()
               if n.kind == "cut" and n.premises)
    ax = sum(n.kind == "ax" for n in net.nodes.values())
    return mult, ax


def reduce_to_normal_form(net: ProofNet, strategy: str = "leftmost", seed: int | None = None,
                          keep_trace: bool = False, max_steps: int = 100_000) -> Reduction:
    """Reduce until no redex is left.

    ``strategy`` is ``"leftmost"`` (smallest cut id first) or ``"random"``
    (uniform choice, driven by ``seed``).
    """
    if strategy not in ("leftmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = np.random.default_rng(seed)
    steps, trace = [], [net] if keep_trace else []
    for _ in range(max_steps):
        rs = redexes(net)
        if not rs:
            return Reduction(net, steps, trace)
        r = rs[0] if strategy == "leftmost" else rs[int(rng.integers(len(rs)))]
        net = reduce_step(net, r.cut)
        steps.append(r)
        if keep_trace:
            trace.append(net)
    raise RuntimeError(f"no normal form within {max_steps} steps")


def is_normal(net: ProofNet) -> bool:
    return not redexes(net)


# -- canonical form -------------------------------------------------------------

def _signature(n: PNode, net: ProofNet) -> tuple:
    return (n.kind, n.name or "", tuple(str(net.edges[e]) for e in n.premises),
            tuple(str(net.edges[e]) for e in n.conclusions))


def canonical_form(net: ProofNet) -> str:
    """Id-independent serialization.

    Nodes are renumbered breadth-first, starting from the conclusions in
    order and following ports in order; remaining components are entered at
    their boxes (by name) and then at other nodes (by signature). Edges are
    renumbered the same way and listed sorted.
    """
    node_ids: dict[str, int] = {}
    edge_ids: dict[str, int] = {}
    queue: deque[str] = deque()

    def visit_edge(e: str):
        if e not in edge_ids:
            edge_ids[e] = len(edge_ids)
            for end in (net.src(e), net.dst(e)):
                if end is not None and end[0] not in node_ids:
                    node_ids[end[0]] = len(node_ids)
                    queue.append(end[0])

    def drain():
        while queue:
            n = net.nodes[queue.popleft()]
            for e in n.premises + n.conclusions:
                visit_edge(e)

    for e in net.conclusions():
        visit_edge(e)
        drain()
    rest = [n for n in net.nodes.values() if n.id not in node_ids]
    rest.sort(key=lambda n: (n.kind != "box", n.name or "", _signature(n, net)))
    for n in rest:
        if n.id not in node_ids:
            node_ids[n.id] = len(node_ids)
            queue.append(n.id)
            drain()
    for e in net.edges:
        visit_edge(e)
    lines = []
    for n in sorted(net.nodes.values(), key=lambda n: node_ids[n.id]):
        prem = ",".join(f"e{edge_ids[e]}" for e in n.premises)
        conc = ",".join(f"e{edge_ids[e]}" for e in n.conclusions)
        box = f" {n.name}" if n.kind == "box" else ""
        lines.append(f"n{node_ids[n.id]} {n.kind}{box} [{prem}] -> [{conc}]")
    for e, i in sorted(edge_ids.items(), key=lambda kv: kv[1]):
        lines.append(f"e{i} : {net.edges[e]}")
    lines.append("conclusions " + " ".join(f"e{edge_ids[e]}" for e in net.conclusions()))
    return "\n".join(lines)


# -- polarized core ---------------------------------------------------------------

def polarized_core(net: ProofNet) -> ProofNet:
    """Strip the formula trees below a normal net's polarized part.

    For each conclusion with an unpolarized label produced by a tensor or a
    par, that node is removed and its premises become conclusions; this is
    repeated until every conclusion is polarized or not produced by a
    connective. Raises ``ValueError`` when the net is not normal.
    """
    if not is_normal(net):
        raise ValueError("polarized core is only defined on normal nets")
    nodes = dict(net.nodes)
    edges = dict(net.edges)
    changed = True
    while changed:
        changed = False
        current = ProofNet(nodes.values(), edges)
        for e in current.conclusions():
            s = current.src(e)
            if polarity(edges[e]) is None and s is not None and nodes[s[0]].kind in ("tensor", "par"):
                del nodes[s[0]]
                del edges[e]
                changed = True
                break
    return ProofNet(nodes.values(), edges)

