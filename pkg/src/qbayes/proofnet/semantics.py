"""Denotation of quantum proof-nets and its compositionality."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..qbn import eliminate, min_weight_order
from ..qfactor import EQUAL_TOL, QFactor, equal_within, product, sum_out
from .formula import names
from .net import ProofNet


def interface_names(net: ProofNet) -> frozenset[str]:
    """Names on the open edges of ``net``: its conclusions and pending premises."""
    out: set[str] = set()
    for e in net.conclusions() + net.pending_premises():
        out |= names(net.edges[e])
    return frozenset(out)


def qpn_semantics(net: ProofNet) -> QFactor:
    """Product of every box Q-CPT, with every name off the interface summed out.

    A net without boxes denotes the trivial factor. The sum-outs are
    interleaved with the products by variable elimination, which yields the
    same factor as the plain product followed by the sums.
    """
    factors = [b.cpt for b in net.boxes()]
    if any(f is None for f in factors):
        raise ValueError("every box needs a Q-CPT")
    if not factors:
        return QFactor.trivial()
    hidden = net.names() - interface_names(net)
    scope = frozenset().union(*(f.scope for f in factors))
    hidden = sorted(hidden & scope)
    return eliminate(factors, min_weight_order(factors, hidden))


@dataclass(frozen=True)
class Split:
    left: ProofNet
    right: ProofNet


def split_net(net: ProofNet, nodes: Iterable[str]) -> Split:
    """Cut ``net`` into the sub-graph on ``nodes`` and the sub-graph on the rest.

    Every edge incident to a side is kept in that side, so a crossing edge is
    a pending conclusion on its source side and a pending premise on its
    target side.
    """
    chosen = set(nodes)
    unknown = chosen - set(net.nodes)
    if unknown:
        raise KeyError(f"unknown nodes {sorted(unknown)}")

    def side(ids: set[str]) -> ProofNet:
        ns = [n for n in net.nodes.values() if n.id in ids]
        used = {e for n in ns for e in n.premises + n.conclusions}
        return ProofNet(ns, {e: f for e, f in net.edges.items() if e in used})

    return Split(side(chosen), side(set(net.nodes) - chosen))


def composed_semantics(split: Split, net: ProofNet) -> QFactor:
    """``sum over (Nm(Δ1) ∪ Nm(Δ2)) − Nm(Δ) of ⟦R1⟧ ⊙ ⟦R2⟧``."""
    s1, s2 = qpn_semantics(split.left), qpn_semantics(split.right)
    hidden = (interface_names(split.left) | interface_names(split.right)) - interface_names(net)
    return sum_out(product(s1, s2), hidden)


def check_compositionality(net: ProofNet, nodes: Iterable[str], tol: float = EQUAL_TOL) -> bool:
    """Whether both sides of the compositionality equation agree for this split."""
    split = split_net(net, nodes)
    return equal_within(qpn_semantics(net), composed_semantics(split, net), tol)

