"""Normalization conditions that make a Q-factor a legal node annotation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .densemat import DEFAULT_TOL
from .qfactor import QFactor, is_positive, sum_out_classical, sum_out_qubit


@dataclass(frozen=True)
class QcptRole:
    """Which names of a factor are the head and which are the parents.

    The general form is "``(head_variables, head_qubits)`` given
    ``(parent_variables, parent_qubits)``". A classical node has a single head
    variable and no head qubits; a register node has head qubits only.
    """

    head_variables: tuple[str, ...] = ()
    head_qubits: tuple[str, ...] = ()
    parent_variables: tuple[str, ...] = ()
    parent_qubits: tuple[str, ...] = ()

    def __post_init__(self):
        for f in ("head_variables", "head_qubits", "parent_variables", "parent_qubits"):
            object.__setattr__(self, f, tuple(getattr(self, f)))
        names = self.head_variables + self.head_qubits + self.parent_variables + self.parent_qubits
        if len(set(names)) != len(names):
            raise ValueError(f"role names must be pairwise distinct: {names}")

    @classmethod
    def classical(cls, head: str, parents: Iterable[str] = (), qubits: Iterable[str] = ()) -> "QcptRole":
        return cls((head,), (), tuple(parents), tuple(qubits))

    @classmethod
    def quantum(cls, head: Iterable[str], parents: Iterable[str] = (), qubits: Iterable[str] = ()) -> "QcptRole":
        return cls((), tuple(head), tuple(parents), tuple(qubits))

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(self.head_variables + self.parent_variables)

    @property
    def qubits(self) -> frozenset[str]:
        return frozenset(self.head_qubits + self.parent_qubits)


def check_scope(phi: QFactor, role: QcptRole) -> None:
    if set(phi.variables) != role.variables or set(phi.qubits) != role.qubits:
        raise ValueError(
            f"factor over ({sorted(phi.variables)}, {sorted(phi.qubits)}) does not match role "
            f"({sorted(role.variables)}, {sorted(role.qubits)})")


def identity_defect(phi: QFactor, role: QcptRole) -> float:
    """Largest entry deviation of the normalization sum from the identity.

    Sums out the head variables, traces out the head qubits, and compares
    each remaining matrix with the identity on the parent qubits.
    """
    check_scope(phi, role)
    reduced = phi
    for v in role.head_variables:
        reduced = sum_out_classical(reduced, v)
    for q in role.head_qubits:
        reduced = sum_out_qubit(reduced, q)
    eye = np.broadcast_to(np.eye(reduced.dim), reduced.data.shape)
    scale = np.maximum(1.0, np.abs(reduced.data))
    return float(np.max(np.abs(reduced.data - eye) / scale, initial=0.0))


def check_generalized_qcpt(phi: QFactor, role: QcptRole, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``phi`` is a Q-CPT for the head of ``role`` given its parents.

    Raises ``ValueError`` when the scope of ``phi`` does not match the role.
    """
    if identity_defect(phi, role) > tol:
        return False
    return is_positive(phi, tol)


def check_qcpt_classical_head(phi: QFactor, role: QcptRole, tol: float = DEFAULT_TOL) -> bool:
    if len(role.head_variables) != 1 or role.head_qubits:
        raise ValueError("role must have exactly one head variable and no head qubits")
    return check_generalized_qcpt(phi, role, tol)


def check_qcpt_quantum_head(phi: QFactor, role: QcptRole, tol: float = DEFAULT_TOL) -> bool:
    if role.head_variables or not role.head_qubits:
        raise ValueError("role must have head qubits and no head variables")
    return check_generalized_qcpt(phi, role, tol)
