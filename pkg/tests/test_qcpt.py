import itertools

import numpy as np
import pytest

from qbayes.corpus import PHI_PLUS, alice_qcpt
from qbayes.densemat import projector
from qbayes.qcpt import (QcptRole, check_generalized_qcpt, check_qcpt_classical_head, check_qcpt_quantum_head,
                         identity_defect)
from qbayes.qfactor import QFactor


def test_alice_is_qcpt():
    phi, role = alice_qcpt()
    assert check_qcpt_classical_head(phi, role)
    assert identity_defect(phi, role) < 1e-12


def test_coin_is_qcpt():
    assert check_qcpt_classical_head(QFactor.classical(["X"], [0.5, 0.5]), QcptRole.classical("X"))


def test_doubled_entry_fails():
    phi, role = alice_qcpt()
    data = phi.data.copy()
    data[0, 0] *= 2
    assert not check_qcpt_classical_head(QFactor(phi.variables, phi.qubits, data), role)


def test_bell_state_is_quantum_qcpt():
    phi = QFactor.operator(["q1", "q2"], projector(PHI_PLUS))
    assert check_qcpt_quantum_head(phi, QcptRole.quantum(["q1", "q2"]))


def test_identity_channel_choi():
    v = np.eye(2).T.reshape(-1)
    choi = np.outer(v, v)
    phi = QFactor.operator(["a", "b"], choi)
    assert check_qcpt_quantum_head(phi, QcptRole.quantum(["b"], (), ["a"]))
    # the unnormalized identity on two qubits is not a state
    assert not check_qcpt_quantum_head(QFactor.operator(["a", "b"], np.eye(4)), QcptRole.quantum(["a", "b"]))


def test_non_positive_fails_even_if_normalized():
    # entries sum to one but one of them is negative
    phi = QFactor.classical(["X", "Y"], [[1.5, 0.5], [-0.5, 0.5]], check=False)
    assert not check_generalized_qcpt(phi, QcptRole.classical("X", ["Y"]))


def test_scope_mismatch_raises():
    with pytest.raises(ValueError):
        check_generalized_qcpt(QFactor.classical(["X"], [0.5, 0.5]), QcptRole.classical("Y"))
    with pytest.raises(ValueError):
        check_qcpt_classical_head(QFactor.operator(["q"], np.eye(2) / 2), QcptRole.quantum(["q"]))


def test_classical_tables_exhaustive():
    # on a grid of tables the check agrees with "columns sum to one and entries are non-negative"
    grid = [-0.25, 0.0, 0.25, 0.5, 0.75, 1.0]
    role = QcptRole.classical("X", ["Y"])
    for a, b, c, d in itertools.product(grid, repeat=4):
        table = np.array([[a, b], [c, d]])
        want = bool(np.all(table >= 0) and np.allclose(table.sum(axis=0), 1))
        phi = QFactor.classical(["X", "Y"], table, check=False)
        assert check_generalized_qcpt(phi, role) == want


def test_role_validation():
    with pytest.raises(ValueError):
        QcptRole(("X",), (), ("X",), ())
