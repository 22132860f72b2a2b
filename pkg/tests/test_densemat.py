import numpy as np
import pytest
from hypothesis import given, strategies as st

from qbayes.densemat import (canonical_qubits, check_positive, identity, ket, partial_trace, permute_qubits,
                             projector, random_density, random_psd, tensor_product, trace)

PHI_PLUS = (ket("00") + ket("11")) / np.sqrt(2)
EXAMPLE = np.array([[2, 0, 0, 1], [0, 2, 0, 0], [0, 0, 2, -1], [1, 0, -1, 2]], dtype=complex)


def test_tensor_identities():
    assert np.allclose(tensor_product(identity(1), identity(1)), identity(2))


def test_tensor_basis_projectors():
    out = tensor_product(projector(ket("0")), projector(ket("1")))
    assert np.allclose(out, np.diag([0, 1, 0, 0]))


def test_tensor_trace_multiplicative(rng):
    a, b = rng.normal(size=(2, 2)), rng.normal(size=(2, 2))
    assert np.isclose(trace(tensor_product(a, b)), np.trace(a) * np.trace(b))
    # against a hand-written Kronecker product
    direct = np.block([[a[i, j] * b for j in range(2)] for i in range(2)])
    assert np.allclose(tensor_product(a, b), direct)


def test_partial_trace_identity():
    assert np.allclose(partial_trace(identity(2), ["q1", "q2"], "q1"), 2 * np.eye(2))


def test_partial_trace_bell_is_maximally_mixed():
    bell = projector(PHI_PLUS)
    # block sum of the explicit 4x4 matrix
    blocks = bell[:2, :2] + bell[2:, 2:]
    assert np.allclose(partial_trace(bell, ["q1", "q2"], "q1"), blocks)
    assert np.allclose(blocks, np.eye(2) / 2)


def test_partial_trace_second_qubit(rng):
    rho, sigma = random_density(2, rng), random_density(2, rng)
    m = tensor_product(rho, sigma)
    assert np.allclose(partial_trace(m, ["a", "b"], "a"), np.trace(rho) * sigma)
    assert np.allclose(partial_trace(m, ["a", "b"], "b"), np.trace(sigma) * rho)


def test_partial_trace_unknown_qubit():
    with pytest.raises((KeyError, ValueError)):
        partial_trace(identity(2), ["q1", "q2"], "q3")


def test_permute_qubits_swaps_factors(rng):
    a, b = random_psd(2, rng), random_psd(2, rng)
    swapped = permute_qubits(tensor_product(a, b), ["x", "y"], ["y", "x"])
    assert np.allclose(swapped, tensor_product(b, a))


def test_canonical_qubits_sorted():
    assert canonical_qubits(["q2", "q10", "a"]) == tuple(sorted(["q2", "q10", "a"]))


def test_check_positive_example_matrix():
    assert check_positive(EXAMPLE)
    # leading minors of the {1,3,4} submatrix
    sub = EXAMPLE[np.ix_([0, 2, 3], [0, 2, 3])].real
    minors = [np.linalg.det(sub[:k, :k]) for k in (1, 2, 3)]
    assert np.allclose(minors, [2, 4, 4])


def test_check_positive_rejects():
    assert not check_positive(-np.eye(2))
    assert not check_positive(np.array([[1, 1], [0, 1]]))  # not Hermitian
    assert check_positive(np.zeros((2, 2)))


@given(st.integers(0, 2**31 - 1), st.integers(1, 3))
def test_random_psd_is_positive(seed, n):
    m = random_psd(2**n, np.random.default_rng(seed))
    assert check_positive(m)


@given(st.integers(0, 2**31 - 1))
def test_partial_trace_preserves_trace(seed):
    m = random_psd(8, np.random.default_rng(seed))
    for q in ("a", "b", "c"):
        assert np.isclose(trace(partial_trace(m, ["a", "b", "c"], q)), trace(m))
