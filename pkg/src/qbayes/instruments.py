"""Quantum instruments in Kraus form and their correspondence with Q-CPTs.

A branch of an instrument is a completely positive map given by Kraus
operators ``K`` of shape ``(2**n_out, 2**n_in)``. The Q-factor of a family of
instruments stores, for every outcome and parent assignment, the Choi matrix

    J = sum_ij |i><j| (x) E(|i><j|)

over the input qubits followed by the output qubits (the unnormalized
maximally entangled "cap" pushed through ``id (x) E``). Applying the inverse
map contracts a state against the input half of ``J`` coefficient-wise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .densemat import check_positive, permute_qubits
from .qcpt import QcptRole, check_generalized_qcpt
from .qfactor import VALUES, QFactor

KRAUS_EIG_CUTOFF = 1e-10
NULL_BRANCH = 1e-12


@dataclass(frozen=True)
class KrausMap:
    """The completely positive map ``rho -> sum_k K rho K^dagger``."""

    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.atleast_2d(np.asarray(k, dtype=complex)) for k in self.operators)
        if not ops:
            raise ValueError("a Kraus map needs at least one operator")
        if len({k.shape for k in ops}) != 1:
            raise ValueError(f"Kraus operators have mixed shapes {[k.shape for k in ops]}")
        object.__setattr__(self, "operators", ops)

    @property
    def input_dim(self) -> int:
        return self.operators[0].shape[1]

    @property
    def output_dim(self) -> int:
        return self.operators[0].shape[0]

    def __call__(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        return sum(k @ rho @ k.conj().T for k in self.operators)

    def completeness(self) -> np.ndarray:
        """``sum_k K^dagger K``."""
        return sum(k.conj().T @ k for k in self.operators)


@dataclass(frozen=True)
class Instrument:
    """Outcome-indexed CP maps summing to a trace-preserving map.

    ``branches`` is keyed by tuples of values of ``outcome_variables``; an
    instrument with no outcome variables has the single key ``()``.
    """

    outcome_variables: tuple[str, ...]
    branches: Mapping[tuple[str, ...], KrausMap]
    tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "outcome_variables", tuple(self.outcome_variables))
        branches = {tuple(k): (v if isinstance(v, KrausMap) else KrausMap(tuple(v)))
                    for k, v in self.branches.items()}
        expected = set(itertools.product(VALUES, repeat=len(self.outcome_variables)))
        if set(branches) != expected:
            raise ValueError(f"branches {sorted(branches)} do not cover outcomes of {self.outcome_variables}")
        shapes = {(m.output_dim, m.input_dim) for m in branches.values()}
        if len(shapes) != 1:
            raise ValueError(f"branches have inconsistent shapes {shapes}")
        object.__setattr__(self, "branches", dict(sorted(branches.items())))
        total = sum(m.completeness() for m in branches.values())
        if np.max(np.abs(total - np.eye(self.input_dim))) > self.tol:
            raise ValueError("instrument branches do not sum to a trace-preserving map")

    @property
    def input_dim(self) -> int:
        return next(iter(self.branches.values())).input_dim

    @property
    def output_dim(self) -> int:
        return next(iter(self.branches.values())).output_dim


@dataclass(frozen=True)
class InstrumentFamily:
    """One instrument per assignment of the parent variables."""

    outcome_variables: tuple[str, ...]
    parent_variables: tuple[str, ...]
    input_qubits: tuple[str, ...]
    output_qubits: tuple[str, ...]
    instruments: Mapping[tuple[str, ...], Instrument]

    def __post_init__(self):
        for f in ("outcome_variables", "parent_variables", "input_qubits", "output_qubits"):
            object.__setattr__(self, f, tuple(getattr(self, f)))
        expected = set(itertools.product(VALUES, repeat=len(self.parent_variables)))
        insts = {tuple(k): v for k, v in self.instruments.items()}
        if set(insts) != expected:
            raise ValueError(f"family must hold one instrument per assignment of {self.parent_variables}")
        din, dout = 2 ** len(self.input_qubits), 2 ** len(self.output_qubits)
        for key, inst in insts.items():
            if inst.outcome_variables != self.outcome_variables:
                raise ValueError(f"instrument at {key} has outcomes {inst.outcome_variables}")
            if (inst.input_dim, inst.output_dim) != (din, dout):
                raise ValueError(f"instrument at {key} maps {inst.input_dim}->{inst.output_dim}, "
                                 f"expected {din}->{dout}")
        object.__setattr__(self, "instruments", dict(sorted(insts.items())))

    @property
    def role(self) -> QcptRole:
        return QcptRole(self.outcome_variables, self.output_qubits,
                        self.parent_variables, self.input_qubits)

    def __getitem__(self, parent_values) -> Instrument:
        return self.instruments[tuple(parent_values)]


def apply_instrument(inst: Instrument, rho, tol: float = 1e-9) -> dict[tuple[str, ...], tuple[float, np.ndarray | None]]:
    """Outcome probabilities ``tr E_a(rho)`` and normalized post-measurement states.

    A branch of probability at most 1e-12 has post-state ``None``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (inst.input_dim, inst.input_dim):
        raise ValueError(f"state has shape {rho.shape}, instrument expects dimension {inst.input_dim}")
    if not check_positive(rho, tol) or abs(np.trace(rho) - 1) > tol:
        raise ValueError("input is not a density matrix")
    out = {}
    for outcome, branch in inst.branches.items():
        post = branch(rho)
        p = float(np.trace(post).real)
        out[outcome] = (p, post / p if p > NULL_BRANCH else None)
    return out


def choi_matrix(kraus: KrausMap) -> np.ndarray:
    """``sum_ij |i><j| (x) E(|i><j|)`` with the input factor most significant."""
    dim = kraus.input_dim * kraus.output_dim
    j = np.zeros((dim, dim), dtype=complex)
    for k in kraus.operators:
        v = k.T.reshape(-1)  # v[(i, a)] = K[a, i]
        j += np.outer(v, v.conj())
    return j


def choi_from_instrument(fam: InstrumentFamily) -> QFactor:
    """The Q-factor over ``(outcomes + parents, inputs + outputs)`` of ``fam``."""
    nvars = len(fam.outcome_variables) + len(fam.parent_variables)
    qubits = fam.input_qubits + fam.output_qubits
    if set(fam.input_qubits) & set(fam.output_qubits):
        raise ValueError("input and output qubits must be disjoint")
    d = 2 ** len(qubits)
    data = np.zeros((2,) * nvars + (d, d), dtype=complex)
    for y, inst in fam.instruments.items():
        for x, branch in inst.branches.items():
            idx = tuple(VALUES.index(v) for v in x + y)
            data[idx] = choi_matrix(branch)
    return QFactor(fam.outcome_variables + fam.parent_variables, qubits, data, check=False)


def instrument_from_qcpt(phi: QFactor, role: QcptRole, tol: float = 1e-9) -> InstrumentFamily:
    """Inverse of :func:`choi_from_instrument`.

    Each Choi block is eigendecomposed; eigenpairs with eigenvalue above
    ``1e-10`` become Kraus operators ``sqrt(lam) * reshape(v).T``.
    """
    if not check_generalized_qcpt(phi, role, tol):
        raise ValueError("factor is not a Q-CPT for the given role")
    inputs = tuple(sorted(role.parent_qubits))
    outputs = tuple(sorted(role.head_qubits))
    din, dout = 2 ** len(inputs), 2 ** len(outputs)
    outcome_vars = tuple(role.head_variables)
    parent_vars = tuple(role.parent_variables)
    instruments = {}
    for y in itertools.product(VALUES, repeat=len(parent_vars)):
        branches = {}
        for x in itertools.product(VALUES, repeat=len(outcome_vars)):
            assignment = dict(zip(outcome_vars + parent_vars, x + y))
            block = permute_qubits(phi(assignment), phi.qubits, inputs + outputs)
            block = (block + block.conj().T) / 2
            lam, vecs = np.linalg.eigh(block)
            ops = [np.sqrt(l) * vecs[:, i].reshape(din, dout).T
                   for i, l in enumerate(lam) if l > KRAUS_EIG_CUTOFF]
            if not ops:
                ops = [np.zeros((dout, din), dtype=complex)]
            branches[x] = KrausMap(tuple(ops))
        instruments[y] = Instrument(outcome_vars, branches)
    return InstrumentFamily(outcome_vars, parent_vars, inputs, outputs, instruments)


def channel_action(kraus: KrausMap) -> np.ndarray:
    """Images of all matrix units, shape ``(din, din, dout, dout)``."""
    din = kraus.input_dim
    out = np.zeros((din, din, kraus.output_dim, kraus.output_dim), dtype=complex)
    for i in range(din):
        for j in range(din):
            e = np.zeros((din, din), dtype=complex)
            e[i, j] = 1
            out[i, j] = kraus(e)
    return out


def random_instrument_family(outcome_variables: Sequence[str], parent_variables: Sequence[str],
                             input_qubits: Sequence[str], output_qubits: Sequence[str],
                             rng: np.random.Generator, kraus_per_branch: int = 2) -> InstrumentFamily:
    """Random family: a random isometry cut into branch-wise Kraus operators."""
    din, dout = 2 ** len(input_qubits), 2 ** len(output_qubits)
    n_out = 2 ** len(outcome_variables)
    # the stacked operators need at least din rows to form an isometry
    kraus_per_branch = max(kraus_per_branch, -(-din // (n_out * dout)))
    instruments = {}
    for y in itertools.product(VALUES, repeat=len(parent_variables)):
        rows = n_out * kraus_per_branch * dout
        g = rng.normal(size=(rows, din)) + 1j * rng.normal(size=(rows, din))
        q, _ = np.linalg.qr(g)  # columns orthonormal: stacked Kraus ops sum to identity
        blocks = q.reshape(n_out, kraus_per_branch, dout, din)
        branches = {x: KrausMap(tuple(blocks[i, k] for k in range(kraus_per_branch)))
                    for i, x in enumerate(itertools.product(VALUES, repeat=len(outcome_variables)))}
        instruments[y] = Instrument(tuple(outcome_variables), branches)
    return InstrumentFamily(tuple(outcome_variables), tuple(parent_variables),
                            tuple(input_qubits), tuple(output_qubits), instruments)
