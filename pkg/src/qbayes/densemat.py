"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. A matrix over a
register of ``k`` qubits has shape ``(2**k, 2**k)``; a scalar is a ``(1, 1)``
matrix. Rows and columns are indexed by bitstrings over the qubits of the
register, taken in ascending lexicographic name order with the first qubit as
the most significant bit.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9


def canonical_qubits(qubits: Iterable[str]) -> tuple[str, ...]:
    """Return the qubit names in index order, rejecting duplicates."""
    names = tuple(qubits)
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate qubit names in {names}")
    return tuple(sorted(names))


def as_matrix(m, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {arr.shape[0]}")
    return arr


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product, ``a``'s qubits most significant."""
    return np.kron(as_matrix(a), as_matrix(b))


def to_tensor(m: np.ndarray, n: int) -> np.ndarray:
    """View a ``2**n`` square matrix as a tensor with axes (rows..., cols...)."""
    return np.asarray(m).reshape((2,) * (2 * n))


def from_tensor(t: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(t).reshape(2**n, 2**n)


def permute_qubits(m, qubits: Sequence[str], new_order: Sequence[str]) -> np.ndarray:
    """Re-index ``m`` from the qubit order ``qubits`` to ``new_order``."""
    qubits = list(qubits)
    if sorted(qubits) != sorted(new_order) or len(set(qubits)) != len(qubits):
        raise ValueError(f"{list(new_order)} is not a permutation of {qubits}")
    n = len(qubits)
    m = as_matrix(m, 2**n)
    if list(new_order) == qubits:
        return m
    perm = [qubits.index(q) for q in new_order]
    axes = perm + [n + p for p in perm]
    return from_tensor(to_tensor(m, n).transpose(axes), n)


def partial_trace(m, qubits: Sequence[str], traced: str | Iterable[str]) -> np.ndarray:
    """Trace out one or more named qubits.

    ``qubits`` lists the qubit names of ``m`` in index order. The result is
    indexed by the remaining qubits in their original relative order.

    >>> partial_trace(np.eye(4), ["a", "b"], "a")
    array([[2.+0.j, 0.+0.j],
           [0.+0.j, 2.+0.j]])
    """
    qubits = list(qubits)
    n = len(qubits)
    m = as_matrix(m, 2**n)
    names = [traced] if isinstance(traced, str) else list(traced)
    for name in names:
        if name not in qubits:
            raise KeyError(f"unknown qubit {name!r}; register is {qubits}")
    t = to_tensor(m, n)
    # trace the highest axes first so lower positions stay valid
    for pos in sorted((qubits.index(q) for q in names), reverse=True):
        cur = t.ndim // 2
        t = np.trace(t, axis1=pos, axis2=cur + pos)
    return from_tensor(t, n - len(names))


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def check_positive(m, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``m`` is a positive (Hermitian, PSD) operator up to ``tol``.

    Hermiticity is tested on the max-entry norm relative to ``max(1, |m|)``;
    eigenvalues of the Hermitian part must be at least ``-tol * max(1, ||m||_2)``.
    Non-square or non-Hermitian input returns ``False``.
    """
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    if not np.all(np.isfinite(arr)):
        return False
    if arr.size == 0:
        return True
    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(arr - arr.conj().T)) > tol * scale:
        return False
    herm = (arr + arr.conj().T) / 2
    eig = np.linalg.eigvalsh(herm)
    spectral = max(1.0, float(np.max(np.abs(eig))))
    return bool(eig[0] >= -tol * spectral)


def ket(bits: str) -> np.ndarray:
    """Computational-basis column vector, e.g. ``ket("01")``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2) if bits else 0] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def identity(n_qubits: int) -> np.ndarray:
    return np.eye(2**n_qubits, dtype=complex)


def basis_matrix(i: int, j: int, dim: int) -> np.ndarray:
    """The matrix unit ``|i><j|``."""
    e = np.zeros((dim, dim), dtype=complex)
    e[i, j] = 1.0
    return e


def random_psd(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    return g @ g.conj().T


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rho = random_psd(dim, rng, rank)
    return rho / np.trace(rho).real
