"""Reference semantics by explicit density-matrix simulation.

Nodes are visited in topological order. Every partial assignment of the
classical variables seen so far owns an unnormalized joint state over the
qubits that are currently alive. Each node acts on its branch through the
instrument recovered from its Q-CPT, so no Q-factor product is ever formed
and agreement with the factor engine is independent evidence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .densemat import DEFAULT_TOL, permute_qubits
from .instruments import Instrument, KrausMap, apply_instrument, instrument_from_qcpt
from .qbn import QbnModel, _require_valid
from .qfactor import VALUES, QFactor

MAX_VARIABLES = 12
MAX_LIVE_QUBITS = 10


class SizeCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SimTrace:
    """Joint probabilities over ``variables`` keyed by value tuples."""

    variables: tuple[str, ...]
    probabilities: dict[tuple[str, ...], float]

    def total(self) -> float:
        return float(sum(self.probabilities.values()))

    def prob(self, assignment) -> float:
        return self.probabilities[tuple(assignment[v] for v in self.variables)]

    def marginal(self, targets) -> dict[tuple[str, ...], float]:
        idx = [self.variables.index(t) for t in targets]
        out = {k: 0.0 for k in itertools.product(VALUES, repeat=len(idx))}
        for key, p in self.probabilities.items():
            out[tuple(key[i] for i in idx)] += p
        return out

    def conditional(self, targets, evidence) -> dict[tuple[str, ...], dict[tuple[str, ...], float] | None]:
        """``Pr(targets | evidence)`` row by evidence row, ``None`` for null rows."""
        joint = self.marginal(tuple(targets) + tuple(evidence))
        n = len(tuple(targets))
        rows = {}
        for ev in itertools.product(VALUES, repeat=len(tuple(evidence))):
            p_e = sum(p for k, p in joint.items() if k[n:] == ev)
            rows[ev] = None if p_e <= 1e-12 else {k[:n]: p / p_e for k, p in joint.items() if k[n:] == ev}
        return rows

    def as_factor(self) -> QFactor:
        table = np.zeros((2,) * len(self.variables))
        for key, p in self.probabilities.items():
            table[tuple(VALUES.index(v) for v in key)] = p
        return QFactor.classical(self.variables, table, check=False)


def _embed(op: np.ndarray, rest_dim: int) -> np.ndarray:
    return np.kron(np.eye(rest_dim), op)


def simulate_joint(model: QbnModel, tol: float = DEFAULT_TOL) -> SimTrace:
    """Joint distribution of ``model`` by branch-wise instrument application."""
    _require_valid(model, tol)
    if len(model.variables) > MAX_VARIABLES:
        raise SizeCapExceeded(f"oracle supports at most {MAX_VARIABLES} classical variables")
    # each branch: assignment -> (unnormalized state, live qubit order)
    branches: dict[tuple[tuple[str, str], ...], tuple[np.ndarray, list[str]]] = {
        (): (np.ones((1, 1), dtype=complex), [])}
    for name in model.topological_order():
        node = model.nodes[name]
        role = node.role
        fam = instrument_from_qcpt(node.cpt, role, tol)
        inputs = list(fam.input_qubits)
        outputs = list(fam.output_qubits)
        new_branches = {}
        for key, (state, live) in branches.items():
            a = dict(key)
            rest = [q for q in live if q not in inputs]
            if len(rest) + len(outputs) > MAX_LIVE_QUBITS:
                raise SizeCapExceeded(f"more than {MAX_LIVE_QUBITS} live qubits")
            state = permute_qubits(state, live, rest + inputs)
            inst = fam[tuple(a[v] for v in fam.parent_variables)]
            p = float(np.trace(state).real)
            if p <= 0.0:
                for outcome in inst.branches:
                    dim = 2 ** (len(rest) + len(outputs))
                    new_key = tuple(sorted({**a, **dict(zip(fam.outcome_variables, outcome))}.items()))
                    new_branches[new_key] = (np.zeros((dim, dim), dtype=complex), rest + outputs)
                continue
            rest_dim = 2 ** len(rest)
            lifted = Instrument(fam.outcome_variables, {
                outcome: KrausMap(tuple(_embed(k, rest_dim) for k in kraus.operators))
                for outcome, kraus in inst.branches.items()})
            for outcome, (prob, post) in apply_instrument(lifted, state / p, tol).items():
                new_key = tuple(sorted({**a, **dict(zip(fam.outcome_variables, outcome))}.items()))
                dim = 2 ** (len(rest) + len(outputs))
                new_state = p * prob * post if post is not None else np.zeros((dim, dim), dtype=complex)
                new_branches[new_key] = (new_state, rest + outputs)
        branches = new_branches
    variables = tuple(sorted(model.variables))
    probs = {}
    for key, (state, _) in branches.items():
        a = dict(key)
        probs[tuple(a[v] for v in variables)] = float(np.trace(state).real)
    return SimTrace(variables, dict(sorted(probs.items())))
