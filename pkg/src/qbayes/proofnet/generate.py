"""Generators of typed graphs and identity nets, used for property checks.

Small polarized typed graphs are grown one node at a time from a fixed
alphabet of node templates. Each port of a new node either binds an open
edge of the graph built so far (a pending conclusion for a premise port, a
pending premise for a conclusion port) or opens a fresh edge. Requiring
every new node after the first to bind at least one port yields exactly the
connected graphs; disconnected graphs are unions of these, and both
correctness and acyclicity are decided componentwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .formula import Atom, Formula, Tensor, dual, neg, pos
from .net import NetBuilder, PNode, ProofNet


@dataclass(frozen=True)
class Template:
    """A node kind with fixed premise and conclusion labels."""

    kind: str
    premises: tuple[Formula, ...]
    conclusions: tuple[Formula, ...]
    name: str | None = None


def _templates() -> tuple[Template, ...]:
    X, Y = pos("X"), pos("Y")
    XY = Tensor(X, Y)
    out = []
    for a in (X, Y):
        out.append(Template("ax", (), (dual(a), a)))
        out.append(Template("cut", (a, dual(a)), ()))
    out.append(Template("cut", (XY, dual(XY)), ()))
    out.append(Template("tensor", (X, Y), (XY,)))
    out.append(Template("par", (neg("X"), neg("Y")), (dual(XY),)))
    out.append(Template("contraction", (neg("X"),) * 2, (neg("X"),)))
    out.append(Template("weakening", (), (neg("X"),)))
    out.append(Template("box", (), (X,), "b"))
    out.append(Template("box", (), (neg("X"), Y), "b"))
    out.append(Template("box", (), (neg("Y"), X), "b"))
    return tuple(out)


TEMPLATES = _templates()


@dataclass(frozen=True)
class _Graph:
    """Immutable growth state: nodes as (template index, premises, conclusions)."""

    nodes: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]
    labels: tuple[Formula, ...]
    has_src: frozenset[int]
    has_dst: frozenset[int]


def _extend(g: _Graph, t: int, require_bind: bool) -> Iterator[_Graph]:
    tpl = TEMPLATES[t]
    open_conc = [e for e in range(len(g.labels)) if e in g.has_src and e not in g.has_dst]
    open_prem = [e for e in range(len(g.labels)) if e in g.has_dst and e not in g.has_src]
    prem_opts = [[e for e in open_conc if g.labels[e] == f] + [None] for f in tpl.premises]
    conc_opts = [[e for e in open_prem if g.labels[e] == f] + [None] for f in tpl.conclusions]
    for choice in itertools.product(*prem_opts, *conc_opts):
        bound = [e for e in choice if e is not None]
        if len(set(bound)) != len(bound):
            continue
        if require_bind and not bound:
            continue
        labels = list(g.labels)
        ids = []
        for e, f in zip(choice, tpl.premises + tpl.conclusions):
            if e is None:
                labels.append(f)
                e = len(labels) - 1
            ids.append(e)
        k = len(tpl.premises)
        prem, conc = tuple(ids[:k]), tuple(ids[k:])
        yield _Graph(g.nodes + ((t, prem, conc),), tuple(labels),
                     g.has_src | frozenset(conc), g.has_dst | frozenset(prem))


def _links(g: _Graph) -> list[tuple[int, int, int, int]]:
    """Bound edges as ``(src node, conclusion port, dst node, premise port)``."""
    src, dst = {}, {}
    for i, (_, prem, conc) in enumerate(g.nodes):
        for port, e in enumerate(conc):
            src[e] = (i, port)
        for port, e in enumerate(prem):
            dst[e] = (i, port)
    return [src[e] + dst[e] for e in src if e in dst]


def _canonical_key(g: _Graph) -> tuple:
    """Exact isomorphism invariant: templates and links under the least node ordering.

    Every port of every node carries an edge, so a graph is determined by
    its node templates and its bound edges. Colour refinement splits the
    nodes into classes and only orderings within classes are tried.
    """
    n = len(g.nodes)
    links = _links(g)
    colour = [g.nodes[i][0] for i in range(n)]
    while True:
        sig = [(colour[i],
                tuple(sorted(("out", cp, colour[d], pp) for s, cp, d, pp in links if s == i)),
                tuple(sorted(("in", pp, colour[s], cp) for s, cp, d, pp in links if d == i)))
               for i in range(n)]
        ranks = {v: k for k, v in enumerate(sorted(set(sig)))}
        new = [ranks[x] for x in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    classes = [[i for i in range(n) if colour[i] == c] for c in sorted(set(colour))]
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [i for p in perms for i in p]
        pos_of = {v: k for k, v in enumerate(order)}
        key = (tuple(g.nodes[i][0] for i in order),
               tuple(sorted((pos_of[s], cp, pos_of[d], pp) for s, cp, d, pp in links)))
        if best is None or key < best:
            best = key
    return best


def _to_net(g: _Graph, prefix: str = "") -> ProofNet:
    nodes = []
    for i, (t, prem, conc) in enumerate(g.nodes):
        tpl = TEMPLATES[t]
        name = f"{tpl.name}{i}" if tpl.kind == "box" else None
        nodes.append(PNode(f"{prefix}n{i}", tpl.kind, tuple(f"{prefix}e{e}" for e in prem),
                           tuple(f"{prefix}e{e}" for e in conc), name))
    return ProofNet(nodes, {f"{prefix}e{e}": f for e, f in enumerate(g.labels)})


def small_polarized_graphs(max_nodes: int = 6) -> list[ProofNet]:
    """Every connected typed graph over the template alphabet with at most ``max_nodes`` nodes.

    Graphs are deduplicated up to isomorphism preserving node kinds, ports
    and labels.
    """
    level = [next(iter(_extend(_Graph((), (), frozenset(), frozenset()), t, False))) for t in range(len(TEMPLATES))]
    found = list(level)
    for _ in range(max_nodes - 1):
        seen: set[tuple] = set()
        nxt = []
        for g in level:
            for t in range(len(TEMPLATES)):
                for h in _extend(g, t, True):
                    key = _canonical_key(h)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(h)
        found.extend(nxt)
        level = nxt
    return [_to_net(g) for g in found]


def random_polarized_graph(n_nodes: int, rng: np.random.Generator, bind_bias: float = 0.8) -> ProofNet:
    """A random connected typed graph over the template alphabet.

    Growth stops early if the graph closes up before reaching ``n_nodes``.
    """
    g = next(iter(_extend(_Graph((), (), frozenset(), frozenset()), int(rng.integers(len(TEMPLATES))), False)))
    while len(g.nodes) < n_nodes:
        per_template = [opts for t in range(len(TEMPLATES)) if (opts := list(_extend(g, t, True)))]
        if not per_template:
            break  # closed graph: nothing can attach
        options = per_template[int(rng.integers(len(per_template)))]
        # favour options that bind many ports, so that cycles are common
        fresh = np.array([len(h.labels) for h in options], dtype=float)
        w = np.where(fresh == fresh.min(), bind_bias, 1 - bind_bias) + 1e-9
        g = options[int(rng.choice(len(options), p=w / w.sum()))]
    return _to_net(g)


def identity_net(formula: Formula, prefix: str = "id") -> ProofNet:
    """The eta-expanded axiom net with conclusions ``formula⊥, formula``."""
    b = NetBuilder(prefix)

    def expand(f: Formula) -> tuple[str, str]:
        if isinstance(f, Atom):
            return b.ax(f)
        l_dual, l = expand(f.left)
        r_dual, r = expand(f.right)
        if isinstance(f, Tensor):
            return b.binary("par", l_dual, r_dual), b.binary("tensor", l, r)
        return b.binary("tensor", l_dual, r_dual), b.binary("par", l, r)

    d, e = expand(formula)
    net = b.build()
    order = [d, e]
    return ProofNet(net.nodes.values(), {k: net.edges[k] for k in order + [k for k in net.edges if k not in order]})
