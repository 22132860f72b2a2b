"""Quantum Bayesian networks over Q-factors, and exact inference on them.

A network is a DAG whose nodes are classical binary variables and quantum
registers. Each node carries a Q-CPT for the node given the variables and
qubits on its in-edges. Its semantics is the product of all Q-CPTs, a
distribution over the classical variables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from .densemat import DEFAULT_TOL
from .qcpt import QcptRole, check_generalized_qcpt, check_scope
from .qfactor import (
    QFactor, assignments, marginalize_to, product_all, sum_out_classical,
    sum_out_qubit, value_index,
)

UNDEFINED_EVIDENCE = 1e-12


class InvalidModelError(ValueError):
    """Raised when an operation needs a valid model and gets an invalid one."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.errors))
        self.report = report


@dataclass(frozen=True)
class InEdge:
    """Edge from ``source`` labelled by a variable name or a set of qubits."""

    source: str
    label: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "label", tuple(self.label))


@dataclass(frozen=True)
class Node:
    name: str
    kind: str  # "classical" or "quantum"
    cpt: QFactor
    parents: tuple[InEdge, ...] = ()
    qubits: tuple[str, ...] = ()  # the register, for quantum nodes

    def __post_init__(self):
        if self.kind not in ("classical", "quantum"):
            raise ValueError(f"node kind must be 'classical' or 'quantum', got {self.kind!r}")
        object.__setattr__(self, "parents", tuple(
            p if isinstance(p, InEdge) else InEdge(*p) for p in self.parents))
        object.__setattr__(self, "qubits", tuple(self.qubits))

    @property
    def parent_variables(self) -> tuple[str, ...]:
        return tuple(p.label[0] for p in self.parents if len(p.label) == 1 and p.label[0] == p.source)

    @property
    def parent_qubits(self) -> tuple[str, ...]:
        return tuple(q for p in self.parents if not (len(p.label) == 1 and p.label[0] == p.source)
                     for q in p.label)

    @property
    def role(self) -> QcptRole:
        if self.kind == "classical":
            return QcptRole.classical(self.name, self.parent_variables, self.parent_qubits)
        return QcptRole.quantum(self.qubits, self.parent_variables, self.parent_qubits)


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.valid


class QbnModel:
    """An immutable quantum Bayesian network.

    ``nodes`` may be given in any order; ``observed`` names the classical
    variables of interest (it only affects proof-net encoding and reports).
    """

    def __init__(self, nodes: Iterable[Node], observed: Iterable[str] = ()):
        nodes = list(nodes)
        self.nodes: dict[str, Node] = {}
        for n in nodes:
            if n.name in self.nodes:
                raise ValueError(f"duplicate node name {n.name!r}")
            self.nodes[n.name] = n
        self.observed = tuple(observed)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(n.name for n in self.nodes.values() if n.kind == "classical")

    @property
    def registers(self) -> dict[str, tuple[str, ...]]:
        return {n.name: n.qubits for n in self.nodes.values() if n.kind == "quantum"}

    @property
    def qubits(self) -> tuple[str, ...]:
        return tuple(q for r in self.registers.values() for q in r)

    def edges(self) -> list[tuple[str, str, tuple[str, ...]]]:
        """``(source, target, label)`` for every in-edge in the model."""
        return [(p.source, n.name, p.label) for n in self.nodes.values() for p in n.parents]

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        for s, t, label in self.edges():
            g.add_edge(s, t, label=label)
        return g

    def topological_order(self) -> list[str]:
        return list(nx.lexicographical_topological_sort(self.graph()))

    def children(self, name: str) -> list[tuple[str, tuple[str, ...]]]:
        return [(t, label) for s, t, label in self.edges() if s == name]

    def consumed_qubits(self, name: str) -> set[str]:
        return {q for _, label in self.children(name) for q in label}

    def dangling_qubits(self) -> tuple[str, ...]:
        """Qubits produced by a register node but consumed by no node."""
        out = []
        for name, reg in self.registers.items():
            used = self.consumed_qubits(name)
            out.extend(q for q in reg if q not in used)
        return tuple(sorted(out))

    def factors(self) -> list[QFactor]:
        return [n.cpt for n in self.nodes.values()]

    def graph_is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph())

    def __repr__(self) -> str:
        return f"QbnModel(variables={list(self.variables)}, registers={self.registers})"


def validate(model: QbnModel, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check every structural and numerical condition on ``model``."""
    report = ValidationReport()
    err = report.errors.append
    registers = model.registers
    variables = set(model.variables)

    owner: dict[str, str] = {}
    for name, reg in registers.items():
        if not reg:
            err(f"register {name!r} is empty")
        for q in reg:
            if q in owner:
                err(f"qubit {q!r} belongs to registers {owner[q]!r} and {name!r}")
            owner.setdefault(q, name)
            if q in model.nodes:
                err(f"qubit name {q!r} clashes with a node name")

    for node in model.nodes.values():
        if node.kind == "classical" and node.qubits:
            err(f"classical node {node.name!r} declares a register")
        for p in node.parents:
            if p.source not in model.nodes:
                err(f"node {node.name!r}: unknown parent {p.source!r}")
                continue
            src = model.nodes[p.source]
            if src.kind == "classical":
                if p.label != (src.name,):
                    err(f"edge {src.name}->{node.name}: classical out-edge must be labelled "
                        f"{src.name!r}, got {list(p.label)}")
            else:
                if not p.label:
                    err(f"edge {src.name}->{node.name}: empty register label")
                bad = [q for q in p.label if q not in src.qubits]
                if bad:
                    err(f"edge {src.name}->{node.name}: qubits {bad} not in register {src.name!r}")

    for name in registers:
        labels = [label for _, label in model.children(name)]
        flat = [q for label in labels for q in label]
        if len(flat) != len(set(flat)):
            err(f"register {name!r}: out-edge labels overlap, not a partition")

    if not model.graph_is_acyclic():
        cycle = nx.find_cycle(model.graph())
        err("cycle found: " + " -> ".join([cycle[0][0]] + [e[1] for e in cycle]))

    counts: dict[str, list[str]] = {}
    for node in model.nodes.values():
        for q in node.cpt.qubits:
            counts.setdefault(q, []).append(node.name)
    for q, holders in counts.items():
        if len(holders) > 2:
            err(f"qubit {q!r} appears in {len(holders)} node scopes {holders}")

    for node in model.nodes.values():
        try:
            role = node.role
            check_scope(node.cpt, role)
        except ValueError as e:
            err(f"node {node.name!r}: {e}")
            continue
        if not check_generalized_qcpt(node.cpt, role, tol):
            err(f"node {node.name!r}: Q-CPT condition fails")
    for v in model.observed:
        if v not in variables:
            err(f"observed name {v!r} is not a classical variable")
    return report


def _require_valid(model: QbnModel, tol: float = DEFAULT_TOL) -> None:
    report = validate(model, tol)
    if not report.valid:
        raise InvalidModelError(report)


# -- elimination -------------------------------------------------------------

def _qubit_holders(factors: Sequence[QFactor]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for phi in factors:
        for q in phi.qubits:
            counts[q] = counts.get(q, 0) + 1
    return counts


def eliminate(factors: Sequence[QFactor], order: Sequence[str]) -> QFactor:
    """Generalized variable elimination.

    For each name in ``order``: a qubit held by two factors is removed by
    their product; a qubit held by one factor is traced out; a classical
    variable is summed out of the product of all factors that mention it.
    Names no longer present are skipped. Returns the product of survivors.
    """
    pool = list(factors)
    bad = [q for q, c in _qubit_holders(pool).items() if c > 2]
    if bad:
        raise ValueError(f"qubits {sorted(bad)} appear in three or more factor scopes")
    for name in order:
        touching = [phi for phi in pool if name in phi.scope]
        if not touching:
            continue
        pool = [phi for phi in pool if name not in phi.scope]
        merged = product_all(touching)
        if name in merged.variables:
            merged = sum_out_classical(merged, name)
        elif name in merged.qubits:
            merged = sum_out_qubit(merged, name)
        pool.append(merged)
    return product_all(pool)


def _merged_scope(scopes: Sequence[tuple[frozenset, frozenset]]) -> tuple[frozenset, frozenset]:
    variables, qubits = frozenset(), frozenset()
    for v, q in scopes:
        variables, qubits = variables | v, qubits ^ q
    return variables, qubits


def _weight(scope: tuple[frozenset, frozenset]) -> int:
    return 2 ** len(scope[0]) * 4 ** len(scope[1])


def min_weight_order(factors: Sequence[QFactor], names: Iterable[str]) -> list[str]:
    """Greedy min-weight elimination order, ties broken lexicographically.

    The weight of a name is the entry count of the product of all factors
    that mention it (classical variables count 2, qubits 4).
    """
    scopes = [(frozenset(f.variables), frozenset(f.qubits)) for f in factors]
    remaining = set(names)
    order = []
    while remaining:
        best = None
        for name in sorted(remaining):
            touching = [s for s in scopes if name in s[0] or name in s[1]]
            w = _weight(_merged_scope(touching)) if touching else 0
            if best is None or w < best[0]:
                best = (w, name)
        _, name = best
        order.append(name)
        remaining.discard(name)
        scopes = _eliminate_scope(scopes, name)
    return order


def _eliminate_scope(scopes, name):
    touching = [s for s in scopes if name in s[0] or name in s[1]]
    if not touching:
        return scopes
    rest = [s for s in scopes if not (name in s[0] or name in s[1])]
    v, q = _merged_scope(touching)
    return rest + [(v - {name}, q - {name})]


def elimination_cost(factors: Sequence[QFactor], order: Sequence[str]) -> int:
    """Largest intermediate factor (in complex entries) that ``eliminate`` builds."""
    scopes = [(frozenset(f.variables), frozenset(f.qubits)) for f in factors]
    worst = max((_weight(s) for s in scopes), default=1)
    for name in order:
        touching = [s for s in scopes if name in s[0] or name in s[1]]
        acc = (frozenset(), frozenset())
        for s in touching:
            acc = _merged_scope([acc, s])
            worst = max(worst, _weight(acc))
        scopes = _eliminate_scope(scopes, name)
    acc = (frozenset(), frozenset())
    for s in scopes:
        acc = _merged_scope([acc, s])
        worst = max(worst, _weight(acc))
    return worst


def naive_cost(factors: Sequence[QFactor]) -> int:
    """Largest intermediate of the plain left-to-right full product."""
    acc = (frozenset(), frozenset())
    worst = 1
    for f in factors:
        acc = _merged_scope([acc, (frozenset(f.variables), frozenset(f.qubits))])
        worst = max(worst, _weight(acc))
    return worst


# -- queries -----------------------------------------------------------------

@dataclass(frozen=True)
class Query:
    targets: tuple[str, ...]
    evidence: tuple[str, ...] = ()
    mode: str = "marginal"

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "evidence", tuple(self.evidence))
        if set(self.targets) & set(self.evidence):
            raise ValueError("targets and evidence overlap")
        if self.mode not in ("marginal", "conditional"):
            raise ValueError(f"unknown query mode {self.mode!r}")


def joint_semantics(model: QbnModel, tol: float = DEFAULT_TOL) -> QFactor:
    """Product of every Q-CPT, with unconsumed qubits traced out."""
    _require_valid(model, tol)
    joint = product_all(n.cpt for n in model.nodes.values())
    for q in joint.qubits:
        joint = sum_out_qubit(joint, q)
    return joint


def subnetwork_semantics(model: QbnModel, nodes: Iterable[str]) -> QFactor:
    """Product of the Q-CPTs of ``nodes`` (no tracing of open qubits)."""
    nodes = list(nodes)
    unknown = [n for n in nodes if n not in model.nodes]
    if unknown:
        raise KeyError(f"unknown nodes {unknown}")
    return product_all(model.nodes[n].cpt for n in nodes)


def marginal(model: QbnModel, targets: Iterable[str], order: Sequence[str] | None = None,
             tol: float = DEFAULT_TOL) -> QFactor:
    """Marginal distribution over ``targets`` by variable elimination.

    ``order`` fixes the elimination order; it must list exactly the
    non-target variables and all qubits. By default a min-weight order is used.
    """
    targets = list(targets)
    _require_valid(model, tol)
    unknown = [t for t in targets if t not in model.variables]
    if unknown:
        raise KeyError(f"unknown target variables {unknown}")
    names = [v for v in model.variables if v not in targets] + list(model.qubits)
    factors = model.factors()
    if order is None:
        order = min_weight_order(factors, names)
    elif sorted(order) != sorted(names):
        raise ValueError(f"elimination order must be a permutation of {sorted(names)}")
    return eliminate(factors, order)


@dataclass(frozen=True)
class ConditionalTable:
    """``Pr(targets | evidence)``; ``rows[e]`` is ``None`` when ``Pr(e)`` vanishes."""

    targets: tuple[str, ...]
    evidence: tuple[str, ...]
    rows: dict[tuple[str, ...], np.ndarray | None]

    def prob(self, target_values: Mapping[str, str], evidence_values: Mapping[str, str]) -> float | None:
        row = self.rows[tuple(evidence_values[e] for e in self.evidence)]
        if row is None:
            return None
        return float(row[tuple(value_index(target_values[t]) for t in self.targets)])


def conditional(model: QbnModel, targets: Iterable[str], evidence: Iterable[str] = (),
                order: Sequence[str] | None = None, tol: float = DEFAULT_TOL) -> ConditionalTable:
    targets = tuple(targets)
    evidence = tuple(evidence)
    Query(targets, evidence, "conditional")
    if order is not None:
        order = list(order)
    joint = marginal(model, targets + evidence, order, tol)
    ev_marg = joint
    for t in targets:
        ev_marg = sum_out_classical(ev_marg, t)
    rows: dict[tuple[str, ...], np.ndarray | None] = {}
    for ev in assignments(evidence):
        p_e = float(ev_marg(ev).real[0, 0])
        key = tuple(ev[e] for e in evidence)
        if p_e <= UNDEFINED_EVIDENCE:
            rows[key] = None
            continue
        table = np.zeros((2,) * len(targets))
        for tv in assignments(targets):
            table[tuple(value_index(tv[t]) for t in targets)] = joint({**tv, **ev}).real[0, 0] / p_e
        rows[key] = table
    return ConditionalTable(targets, evidence, rows)


def distribution(phi: QFactor, order: Sequence[str] | None = None) -> dict[tuple[str, ...], float]:
    """Flatten a classical factor into ``{values: probability}``."""
    order = tuple(order) if order is not None else phi.variables
    phi = marginalize_to(phi, order)
    return {tuple(a[v] for v in order): float(phi(a).real[0, 0]) for a in assignments(order)}


def random_partition(names: Sequence[str], rng: np.random.Generator) -> tuple[list[str], list[str]]:
    mask = rng.integers(0, 2, size=len(names)).astype(bool)
    left = [n for n, m in zip(names, mask) if m]
    right = [n for n, m in zip(names, mask) if not m]
    return left, right


def classical_model(parents: Mapping[str, Sequence[str]], cpts: Mapping[str, np.ndarray],
                    observed: Iterable[str] = ()) -> QbnModel:
    """Build a register-free network.

    ``cpts[X]`` has shape ``(2,) * (1 + len(parents[X]))`` with the head first.
    """
    nodes = []
    for name, ps in parents.items():
        phi = QFactor.classical((name,) + tuple(ps), np.asarray(cpts[name], dtype=float))
        nodes.append(Node(name, "classical", phi, tuple(InEdge(p, (p,)) for p in ps)))
    return QbnModel(nodes, observed)


def random_cpt(n_parents: int, rng: np.random.Generator) -> np.ndarray:
    """Random CPT of shape ``(2,)*(1+n_parents)`` normalized over the first axis."""
    p = rng.random((2,) + (2,) * n_parents)
    return p / p.sum(axis=0, keepdims=True)


def enumerate_joint(model: QbnModel) -> dict[tuple[str, ...], float]:
    """Brute-force product of CPT entries over every assignment (registers must be empty)."""
    if model.qubits:
        raise ValueError("enumeration is only defined for register-free networks")
    variables = model.variables
    out = {}
    for values in itertools.product("tf", repeat=len(variables)):
        a = dict(zip(variables, values))
        p = 1.0
        for node in model.nodes.values():
            p *= float(node.cpt(a).real[0, 0])
        out[values] = p
    return out
