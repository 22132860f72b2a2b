"""Q-factors: maps from classical assignments to positive operators.

A :class:`QFactor` over classical variables ``X`` and a qubit register ``Q``
stores one ``2**|Q|`` square matrix per assignment of ``X``. Classical
variables are binary with values ``"t"`` and ``"f"`` (array index 0 and 1).
The data array has shape ``(2,) * |X| + (2**|Q|, 2**|Q|)``, with both the
variable axes and the qubit bits in ascending lexicographic name order.

Products share classical variables (pointwise, as for ordinary factors) and
contract shared qubits coefficient-wise over the basis ``e^{ab} = |a><b|``, so
the register of a product is the symmetric difference of the two registers.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .densemat import DEFAULT_TOL, canonical_qubits, check_positive

VALUES = ("t", "f")
EQUAL_TOL = 1e-10


def value_index(v) -> int:
    if v in ("t", True):
        return 0
    if v in ("f", False):
        return 1
    raise ValueError(f"binary value must be 't' or 'f', got {v!r}")


def assignments(variables: Sequence[str]) -> Iterator[dict[str, str]]:
    """All assignments over ``variables``, ``t`` before ``f``, first variable slowest."""
    for values in itertools.product(VALUES, repeat=len(variables)):
        yield dict(zip(variables, values))


def _canonical_variables(variables: Iterable[str]) -> tuple[str, ...]:
    names = tuple(variables)
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    return tuple(sorted(names))


class QFactor:
    """A Q-factor over ``(variables, qubits)``.

    ``data`` is laid out according to the orders in which ``variables`` and
    ``qubits`` are given; the constructor re-indexes it into canonical
    (sorted) order. Every matrix must be positive unless ``check=False``.
    """

    __slots__ = ("variables", "qubits", "data")

    def __init__(self, variables: Sequence[str], qubits: Sequence[str], data,
                 *, check: bool = True, tol: float = DEFAULT_TOL):
        variables = tuple(variables)
        qubits = tuple(qubits)
        cvars = _canonical_variables(variables)
        cqubits = canonical_qubits(qubits)
        if set(cvars) & set(cqubits):
            raise ValueError(f"names used both as variable and qubit: {set(cvars) & set(cqubits)}")
        nv, nq = len(cvars), len(cqubits)
        d = 2**nq
        arr = np.asarray(data, dtype=complex)
        if arr.shape != (2,) * nv + (d, d):
            raise ValueError(f"data shape {arr.shape} does not match "
                             f"{nv} variables and {nq} qubits")
        if variables != cvars:
            arr = arr.transpose([variables.index(v) for v in cvars] + [nv, nv + 1])
        if qubits != cqubits:
            perm = [qubits.index(q) for q in cqubits]
            t = arr.reshape((2,) * nv + (2,) * (2 * nq))
            t = t.transpose(list(range(nv)) + [nv + p for p in perm] + [nv + nq + p for p in perm])
            arr = t.reshape((2,) * nv + (d, d))
        arr = np.array(arr, dtype=complex)
        arr.flags.writeable = False
        object.__setattr__(self, "variables", cvars)
        object.__setattr__(self, "qubits", cqubits)
        object.__setattr__(self, "data", arr)
        if check:
            for x, m in self.items():
                if not check_positive(m, tol):
                    raise ValueError(f"matrix at {x} is not positive")

    @classmethod
    def _raw(cls, variables: tuple[str, ...], qubits: tuple[str, ...], data: np.ndarray) -> "QFactor":
        # canonical inputs only; skips re-indexing and validation
        self = object.__new__(cls)
        data = np.ascontiguousarray(data, dtype=complex)
        data.flags.writeable = False
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "data", data)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("QFactor is immutable")

    @classmethod
    def from_table(cls, variables: Sequence[str], qubits: Sequence[str],
                   table: Mapping, **kw) -> "QFactor":
        """Build from ``{assignment: matrix}``.

        Keys are tuples of values (in ``variables`` order), strings such as
        ``"tf"``, or dicts mapping variable to value.
        """
        variables = tuple(variables)
        d = 2 ** len(qubits)
        data = np.zeros((2,) * len(variables) + (d, d), dtype=complex)
        seen = set()
        for key, m in table.items():
            if isinstance(key, Mapping):
                vals = tuple(key[v] for v in variables)
            elif isinstance(key, str):
                vals = tuple(key)
            else:
                vals = tuple(key)
            idx = tuple(value_index(v) for v in vals)
            if len(idx) != len(variables):
                raise ValueError(f"assignment {key!r} does not cover {variables}")
            seen.add(idx)
            data[idx] = np.asarray(m, dtype=complex).reshape(d, d)
        if len(seen) != 2 ** len(variables):
            raise ValueError("table must have exactly one entry per assignment")
        return cls(variables, qubits, data, **kw)

    @classmethod
    def classical(cls, variables: Sequence[str], values, **kw) -> "QFactor":
        """A factor with empty register from an array of shape ``(2,)*n``."""
        arr = np.asarray(values, dtype=complex).reshape((2,) * len(variables) + (1, 1))
        return cls(variables, (), arr, **kw)

    @classmethod
    def operator(cls, qubits: Sequence[str], m, **kw) -> "QFactor":
        """A factor with empty classical scope holding the single matrix ``m``."""
        return cls((), qubits, np.asarray(m, dtype=complex), **kw)

    @classmethod
    def trivial(cls, value: float = 1.0) -> "QFactor":
        return cls._raw((), (), np.full((1, 1), value, dtype=complex))

    @property
    def scope(self) -> frozenset[str]:
        return frozenset(self.variables) | frozenset(self.qubits)

    @property
    def dim(self) -> int:
        return 2 ** len(self.qubits)

    @property
    def size(self) -> int:
        """Number of complex entries stored."""
        return self.data.size

    def __call__(self, assignment: Mapping | Sequence | str = ()) -> np.ndarray:
        if isinstance(assignment, Mapping):
            missing = [v for v in self.variables if v not in assignment]
            if missing:
                raise KeyError(f"assignment missing variables {missing}")
            idx = tuple(value_index(assignment[v]) for v in self.variables)
        else:
            vals = tuple(assignment)
            if len(vals) != len(self.variables):
                raise KeyError(f"assignment {assignment!r} does not cover {self.variables}")
            idx = tuple(value_index(v) for v in vals)
        return self.data[idx]

    def items(self) -> Iterator[tuple[tuple[str, ...], np.ndarray]]:
        for values in itertools.product(VALUES, repeat=len(self.variables)):
            yield values, self.data[tuple(value_index(v) for v in values)]

    def values(self) -> np.ndarray:
        """Real table of shape ``(2,)*n`` for a factor with empty register."""
        if self.qubits:
            raise ValueError("factor has a non-empty register")
        return self.data[..., 0, 0].real.copy()

    def __mul__(self, other: "QFactor") -> "QFactor":
        return product(self, other)

    def __repr__(self) -> str:
        return f"QFactor(variables={list(self.variables)}, qubits={list(self.qubits)})"


def coefficient(phi: QFactor, x: Mapping[str, str] | Sequence, e: Mapping[str, Sequence]) -> complex:
    """Entry of ``phi(x)`` selected by one basis element ``e^{ab}`` per qubit.

    ``e`` maps each qubit to its ``(row bit, column bit)`` pair, given as a
    tuple or a two-character string such as ``"01"``.
    """
    m = phi(x)
    missing = [q for q in phi.qubits if q not in e]
    if missing:
        raise KeyError(f"basis selector missing qubits {missing}")
    row = col = 0
    for q in phi.qubits:
        a, b = (int(c) for c in e[q])
        row = 2 * row + a
        col = 2 * col + b
    return complex(m[row, col])


def product(phi1: QFactor, phi2: QFactor) -> QFactor:
    """The product: classical variables shared, common qubits contracted."""
    labels: dict[tuple[str, str], int] = {}

    def label(kind: str, name: str) -> int:
        return labels.setdefault((kind, name), len(labels))

    def operand(phi: QFactor) -> tuple[np.ndarray, list[int]]:
        nv, nq = len(phi.variables), len(phi.qubits)
        t = phi.data.reshape((2,) * nv + (2,) * (2 * nq))
        sub = ([label("v", v) for v in phi.variables]
               + [label("r", q) for q in phi.qubits]
               + [label("c", q) for q in phi.qubits])
        return t, sub

    t1, s1 = operand(phi1)
    t2, s2 = operand(phi2)
    variables = tuple(sorted(set(phi1.variables) | set(phi2.variables)))
    qubits = tuple(sorted(set(phi1.qubits) ^ set(phi2.qubits)))
    out = ([label("v", v) for v in variables]
           + [label("r", q) for q in qubits]
           + [label("c", q) for q in qubits])
    res = np.einsum(t1, s1, t2, s2, out, optimize=len(labels) > 12)
    d = 2 ** len(qubits)
    return QFactor._raw(variables, qubits, res.reshape((2,) * len(variables) + (d, d)))


def product_all(factors: Iterable[QFactor]) -> QFactor:
    result = QFactor.trivial()
    for phi in factors:
        result = product(result, phi)
    return result


def sum_out_classical(phi: QFactor, name: str) -> QFactor:
    if name not in phi.variables:
        raise KeyError(f"{name!r} is not a classical variable of {phi!r}")
    pos = phi.variables.index(name)
    return QFactor._raw(phi.variables[:pos] + phi.variables[pos + 1:], phi.qubits,
                        phi.data.sum(axis=pos))


def sum_out_qubit(phi: QFactor, name: str) -> QFactor:
    """Partial trace over one qubit, for every classical assignment."""
    if name not in phi.qubits:
        raise KeyError(f"{name!r} is not a qubit of {phi!r}")
    nv, nq = len(phi.variables), len(phi.qubits)
    pos = phi.qubits.index(name)
    t = phi.data.reshape((2,) * nv + (2,) * (2 * nq))
    t = np.trace(t, axis1=nv + pos, axis2=nv + nq + pos)
    d = 2 ** (nq - 1)
    return QFactor._raw(phi.variables, phi.qubits[:pos] + phi.qubits[pos + 1:],
                        t.reshape((2,) * nv + (d, d)))


def sum_out(phi: QFactor, names: str | Iterable[str]) -> QFactor:
    """Sum out classical variables and/or qubits; names outside the scope are ignored."""
    names = [names] if isinstance(names, str) else list(names)
    for name in names:
        if name in phi.variables:
            phi = sum_out_classical(phi, name)
        elif name in phi.qubits:
            phi = sum_out_qubit(phi, name)
    return phi


def marginalize_to(phi: QFactor, keep: Iterable[str]) -> QFactor:
    keep = set(keep)
    return sum_out(phi, [n for n in phi.variables + phi.qubits if n not in keep])


def equal_within(phi1: QFactor, phi2: QFactor, tol: float = EQUAL_TOL) -> bool:
    """Same scope and entries within ``tol`` (absolute up to 1, relative above)."""
    if set(phi1.variables) != set(phi2.variables) or set(phi1.qubits) != set(phi2.qubits):
        return False
    a, b = phi1.data, phi2.data
    if a.shape != b.shape:
        return False
    bound = tol * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all(np.abs(a - b) <= bound))


def max_difference(phi1: QFactor, phi2: QFactor) -> float:
    """Largest scaled entry difference, or ``inf`` for mismatched scopes."""
    if phi1.scope != phi2.scope or phi1.data.shape != phi2.data.shape:
        return float("inf")
    a, b = phi1.data, phi2.data
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))))


def is_positive(phi: QFactor, tol: float = DEFAULT_TOL) -> bool:
    return all(check_positive(m, tol) for _, m in phi.items())


def random_qfactor(variables: Sequence[str], qubits: Sequence[str],
                   rng: np.random.Generator, rank: int | None = None) -> QFactor:
    """Random factor with PSD values, entries of order one."""
    d = 2 ** len(qubits)
    r = d if rank is None else rank
    shape = (2,) * len(variables)
    g = rng.normal(size=shape + (d, r)) + 1j * rng.normal(size=shape + (d, r))
    data = g @ np.conj(np.swapaxes(g, -1, -2)) / max(1, r)
    return QFactor(variables, qubits, data, check=False)
