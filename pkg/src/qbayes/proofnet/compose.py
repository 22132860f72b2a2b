"""Typed composition of proof-nets by a cut on dual conclusions."""
from __future__ import annotations

from .formula import Formula, dual, names, pretty
from .net import PNode, ProofNet


class TypeMismatchError(ValueError):
    def __init__(self, f1: Formula | None, f2: Formula | None, message: str | None = None):
        self.f1, self.f2 = f1, f2
        super().__init__(message or f"incompatible types: {pretty(f1)} is not the dual of {pretty(f2)}")


class NameClashError(ValueError):
    pass


def _resolve(net: ProofNet, f: str | Formula, which: str) -> str:
    if isinstance(f, str):
        if f not in net.conclusions():
            raise KeyError(f"{which}: {f!r} is not a conclusion edge")
        return f
    hits = [e for e in net.conclusions() if net.edges[e] == f]
    if not hits:
        raise TypeMismatchError(f, None, f"{which} has no conclusion {pretty(f)}; its conclusions are "
                                f"{[pretty(g) for g in net.conclusion_labels()]}")
    return hits[0]


def _rename(net: ProofNet, taken_nodes: set[str], taken_edges: set[str]) -> tuple[ProofNet, dict[str, str]]:
    def fresh(x: str, taken: set[str]) -> str:
        while x in taken:
            x = x + "'"
        return x

    emap = {e: fresh(e, taken_edges) for e in net.edges}
    nodes = [PNode(fresh(n.id, taken_nodes), n.kind, tuple(emap[e] for e in n.premises),
                   tuple(emap[e] for e in n.conclusions), n.name, n.cpt) for n in net.nodes.values()]
    return ProofNet(nodes, {emap[e]: f for e, f in net.edges.items()}), emap


def compose_cut(r1: ProofNet, f1: str | Formula, r2: ProofNet, f2: str | Formula) -> ProofNet:
    """Join conclusion ``f1`` of ``r1`` and ``f2`` of ``r2`` with a fresh cut.

    ``f1``/``f2`` are conclusion edge ids or formulas. The labels must be
    dual, and the two nets may share only the names of the cut formula.
    """
    e1 = _resolve(r1, f1, "first net")
    if isinstance(f2, str):
        e2 = _resolve(r2, f2, "second net")
    else:
        hits = [e for e in r2.conclusions() if r2.edges[e] == f2]
        if not hits:
            raise TypeMismatchError(r1.edges[e1], f2, f"second net has no conclusion {pretty(f2)}")
        e2 = hits[0]
    a, b = r1.edges[e1], r2.edges[e2]
    if b != dual(a):
        raise TypeMismatchError(a, b)
    shared = r1.names() & r2.names()
    allowed = names(a)
    if shared - allowed:
        raise NameClashError(f"names {sorted(shared - allowed)} occur in both nets outside the cut formula")
    k1, k2 = r1.kinds(), r2.kinds()
    clash = [n for n in shared if k1[n] != k2[n]]
    if clash:
        raise NameClashError(f"names {sorted(clash)} have different kinds in the two nets")
    box_clash = {b.name for b in r1.boxes()} & {b.name for b in r2.boxes()}
    if box_clash:
        raise NameClashError(f"box names {sorted(box_clash)} occur in both nets")
    r2, emap = _rename(r2, set(r1.nodes), set(r1.edges))
    cut_id = "cut"
    while cut_id in r1.nodes or cut_id in r2.nodes:
        cut_id += "'"
    nodes = list(r1.nodes.values()) + list(r2.nodes.values()) + [PNode(cut_id, "cut", (e1, emap[e2]))]
    return ProofNet(nodes, {**r1.edges, **r2.edges})


def compose_on(r1: ProofNet, r2: ProofNet, formula: Formula) -> ProofNet:
    """Cut the conclusion ``formula`` of ``r1`` against the conclusion ``formula⊥`` of ``r2``."""
    e1 = _resolve(r1, formula, "first net")
    want = dual(formula)
    if want not in r2.conclusion_labels():
        raise TypeMismatchError(formula, None,
                                f"incompatible types: second net has no conclusion {pretty(want)} "
                                f"dual to {pretty(formula)}; its conclusions are "
                                f"{[pretty(g) for g in r2.conclusion_labels()]}")
    return compose_cut(r1, e1, r2, want)


def plug(r1: ProofNet, r2: ProofNet, pairs: list[tuple[str | Formula, str | Formula]]) -> ProofNet:
    """Join several dual conclusion pairs by cuts, with no check on shared names.

    This is the untyped plugging of two graphs along matching wires; unlike
    :func:`compose_cut` it may create cycles in the polarity orientation.
    """
    ends = []
    for f1, f2 in pairs:
        e1, e2 = _resolve(r1, f1, "first net"), _resolve(r2, f2, "second net")
        if r2.edges[e2] != dual(r1.edges[e1]):
            raise TypeMismatchError(r1.edges[e1], r2.edges[e2])
        ends.append((e1, e2))
    r2, emap = _rename(r2, set(r1.nodes), set(r1.edges))
    cuts = [PNode(f"plug{i}", "cut", (e1, emap[e2])) for i, (e1, e2) in enumerate(ends)]
    return ProofNet(list(r1.nodes.values()) + list(r2.nodes.values()) + cuts, {**r1.edges, **r2.edges})
