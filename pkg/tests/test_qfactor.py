import itertools

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from qbayes.acceptance import example_factor
from qbayes.corpus import PHI_PLUS
from qbayes.densemat import partial_trace, projector
from qbayes.qfactor import (QFactor, coefficient, equal_within, is_positive, product, random_qfactor, sum_out,
                            sum_out_classical, sum_out_qubit)

VARS = ["U", "V", "W"]
QUBITS = ["p", "q", "r"]

scopes = st.tuples(st.sets(st.sampled_from(VARS)), st.sets(st.sampled_from(QUBITS), max_size=2))
seeds = st.integers(0, 2**31 - 1)


def rand(scope, seed):
    vs, qs = scope
    return random_qfactor(sorted(vs), sorted(qs), np.random.default_rng(seed))


def test_coefficients_of_example():
    phi = example_factor()
    assert coefficient(phi, {"X1": "t", "X2": "t"}, {"q1": "00", "q2": "00"}) == 1
    assert coefficient(phi, {"X1": "f", "X2": "f"}, {"q1": "11", "q2": "01"}) == -1
    assert coefficient(phi, ("f", "f"), {"q1": (0, 0), "q2": (1, 1)}) == 2


def test_coefficient_scalar():
    phi = QFactor.classical(["X"], [0.3, 0.7])
    assert coefficient(phi, {"X": "f"}, {}) == 0.7


def test_rejects_non_positive():
    with pytest.raises(ValueError):
        QFactor.operator(["q"], -np.eye(2))


def test_rejects_shared_name():
    with pytest.raises(ValueError):
        QFactor(["a"], ["a"], np.zeros((2, 2, 2)))


def test_trivial_is_unit(rng):
    phi = example_factor()
    assert equal_within(product(phi, QFactor.trivial()), phi)


def test_classical_product_pointwise():
    a = QFactor.classical(["X"], [0.2, 0.8])
    b = QFactor.classical(["X", "Y"], [[0.1, 0.9], [0.6, 0.4]])
    c = product(a, b)
    for x, y in itertools.product("tf", repeat=2):
        want = a({"X": x})[0, 0] * b({"X": x, "Y": y})[0, 0]
        assert c({"X": x, "Y": y})[0, 0] == pytest.approx(want)


def test_bell_source_alice_contraction():
    bell = QFactor.operator(["q1", "q2"], projector(PHI_PLUS))
    from qbayes.corpus import alice_qcpt
    alice, _ = alice_qcpt()
    out = product(bell, alice)
    assert set(out.variables) == {"A", "X"} and out.qubits == ("q2",)
    # measuring q1 of |Phi+> in |0> leaves q2 in |0><0|/2 (unnormalized)
    assert np.allclose(out({"A": "t", "X": "t"}), np.diag([0.5, 0]))
    assert np.allclose(out({"A": "f", "X": "f"}), projector((np.array([1, -1]) / np.sqrt(2))) / 2)


def test_contraction_matches_explicit_sum(rng):
    # shared qubit s: rows and columns of s are summed against each other, no conjugation
    a = random_qfactor([], ["a", "s"], rng)
    b = random_qfactor([], ["s", "t"], rng)
    A = a(()).reshape(2, 2, 2, 2)  # (a, s), (a', s')
    B = b(()).reshape(2, 2, 2, 2)  # (s, t), (s', t')
    want = np.einsum("xiyj,itjs->xtys", A, B).reshape(4, 4)
    assert np.allclose(product(a, b)(()), want)


def test_sum_out_examples():
    cpt = QFactor.classical(["X", "Y"], [[0.3, 0.6], [0.7, 0.4]])
    assert equal_within(sum_out_classical(cpt, "X"), QFactor.classical(["Y"], [1.0, 1.0]))
    bell = QFactor.operator(["q1", "q2"], projector(PHI_PLUS))
    assert np.allclose(sum_out_qubit(bell, "q1")(()), np.eye(2) / 2)
    ident = QFactor.operator(["q", "r"], np.eye(4))
    assert np.allclose(sum_out_qubit(ident, "q")(()), 2 * np.eye(2))


def test_sum_out_alice_slice():
    from qbayes.corpus import alice_qcpt
    alice, _ = alice_qcpt()
    s = sum_out_classical(alice, "A")
    for x in "tf":
        assert np.allclose(s({"X": x}), np.eye(2))


def test_sum_out_unknown():
    phi = QFactor.classical(["X"], [0.5, 0.5])
    with pytest.raises(KeyError):
        sum_out_classical(phi, "Y")
    with pytest.raises(KeyError):
        sum_out_qubit(phi, "q")


def test_equal_within_reordered_scope(rng):
    phi = random_qfactor(["A", "B"], ["q"], rng)
    data = np.swapaxes(phi.data, 0, 1)
    assert equal_within(phi, QFactor(["B", "A"], ["q"], data, check=False))
    assert not equal_within(phi, random_qfactor(["A", "B"], ["q"], rng))


def test_full_trace_is_classical(rng):
    phi = random_qfactor(["A"], ["p", "q"], rng)
    s = sum_out(phi, ["p", "q"])
    for x in "tf":
        assert np.isclose(s({"A": x})[0, 0], np.trace(phi({"A": x})))


def test_quantum_reduction_partial_trace(rng):
    phi = random_qfactor([], ["a", "b", "c"], rng)
    assert np.allclose(sum_out_qubit(phi, "b")(()), partial_trace(phi(()), ["a", "b", "c"], "b"))


def test_classical_reduction_exhaustive():
    rng = np.random.default_rng(0)
    names = ["A", "B", "C"]
    for r1, r2 in itertools.product(range(4), repeat=2):
        for s1 in itertools.combinations(names, r1):
            for s2 in itertools.combinations(names, r2):
                t1 = rng.random((2,) * len(s1))
                t2 = rng.random((2,) * len(s2))
                f1, f2 = QFactor.classical(s1, t1), QFactor.classical(s2, t2)
                prod = product(f1, f2)
                for a in itertools.product("tf", repeat=3):
                    asg = dict(zip(names, a))
                    want = t1[tuple("tf".index(asg[v]) for v in s1)] * t2[tuple("tf".index(asg[v]) for v in s2)]
                    got = prod({v: asg[v] for v in prod.variables})[0, 0]
                    assert got == pytest.approx(want, abs=0, rel=1e-15)


@given(scopes, scopes, seeds)
def test_commutativity(s1, s2, seed):
    a, b = rand(s1, seed), rand(s2, seed + 1)
    assert equal_within(product(a, b), product(b, a))


@given(scopes, scopes, scopes, seeds)
def test_conditional_associativity(s1, s2, s3, seed):
    assume(not (s1[1] & s2[1] & s3[1]))
    a, b, c = rand(s1, seed), rand(s2, seed + 1), rand(s3, seed + 2)
    assert equal_within(product(product(a, b), c), product(a, product(b, c)))


@given(scopes, seeds, st.data())
def test_sum_out_exchange(s, seed, data):
    phi = rand(s, seed)
    names = sorted(phi.scope)
    assume(len(names) >= 2)
    u, v = data.draw(st.permutations(names))[:2]
    assert equal_within(sum_out(sum_out(phi, [u]), [v]), sum_out(sum_out(phi, [v]), [u]))


@given(scopes, scopes, seeds, st.data())
def test_distributivity(s1, s2, seed, data):
    a, b = rand(s1, seed), rand(s2, seed + 1)
    free = sorted(a.scope - b.scope)
    assume(free)
    v = data.draw(st.sampled_from(free))
    assert equal_within(sum_out(product(a, b), [v]), product(sum_out(a, [v]), b))


@given(scopes, scopes, seeds)
def test_positivity_closure(s1, s2, seed):
    a, b = rand(s1, seed), rand(s2, seed + 1)
    assert is_positive(product(a, b))
    for name in a.scope:
        assert is_positive(sum_out(a, [name]))
