"""Example networks used by the tests, the demos and the shipped data files."""
from __future__ import annotations

import numpy as np

from .densemat import ket, projector
from .instruments import Instrument, InstrumentFamily, KrausMap, choi_from_instrument
from .qbn import InEdge, Node, QbnModel, classical_model
from .qcpt import QcptRole
from .qfactor import QFactor

PHI_PLUS = (ket("00") + ket("11")) / np.sqrt(2)
PLUS = (ket("0") + ket("1")) / np.sqrt(2)
MINUS = (ket("0") - ket("1")) / np.sqrt(2)

COMPUTATIONAL = (projector(ket("0")), projector(ket("1")))
HADAMARD = (projector(PLUS), projector(MINUS))


def alice_qcpt() -> tuple[QFactor, QcptRole]:
    """Alice's Q-CPT: computational basis when ``X = t``, Hadamard basis when ``X = f``."""
    p, m = PLUS, MINUS
    table = {
        ("t", "t"): np.diag([1.0, 0.0]),
        ("f", "t"): np.diag([0.0, 1.0]),
        ("t", "f"): np.outer(p, p.conj()).T,
        ("f", "f"): np.outer(m, m.conj()).T,
    }
    phi = QFactor.from_table(("A", "X"), ("q1",), table, check=False)
    return phi, QcptRole.classical("A", ("X",), ("q1",))


def coin(name: str, p_true: float = 0.5) -> Node:
    return Node(name, "classical", QFactor.classical((name,), [p_true, 1 - p_true]))


def measurement_node(name: str, setting: str, register: str, qubit: str,
                     bases: dict[str, tuple[np.ndarray, np.ndarray]]) -> Node:
    """Node ``name`` measuring ``qubit`` in ``bases[setting value]``.

    Each basis is a pair of effects ``(M_t, M_f)``. The Q-CPT stores the
    transposed effects, which is the Choi image of the measurement.
    """
    table = {}
    for s, (m_t, m_f) in bases.items():
        table[("t", s)] = np.asarray(m_t).T
        table[("f", s)] = np.asarray(m_f).T
    cpt = QFactor.from_table((name, setting), (qubit,), table)
    return Node(name, "classical", cpt, (InEdge(setting, (setting,)), InEdge(register, (qubit,))))


def bell_model(p_x: float = 0.5, p_y: float = 0.5,
               alice: dict | None = None, bob: dict | None = None,
               observed=("A", "B")) -> QbnModel:
    """A source ``Q`` shares ``|Phi+>`` with Alice and Bob, who pick a basis by coin.

    By default both parties measure in the computational basis on ``t`` and
    the Hadamard basis on ``f``; outcome ``t`` is ``|0>`` or ``|+>``.
    """
    alice = alice or {"t": COMPUTATIONAL, "f": HADAMARD}
    bob = bob or {"t": COMPUTATIONAL, "f": HADAMARD}
    q = Node("Q", "quantum", QFactor.operator(("q1", "q2"), projector(PHI_PLUS)), qubits=("q1", "q2"))
    nodes = [q, coin("X", p_x), coin("Y", p_y),
             measurement_node("A", "X", "Q", "q1", alice),
             measurement_node("B", "Y", "Q", "q2", bob)]
    return QbnModel(nodes, observed)


def _rotated_basis(theta: float) -> tuple[np.ndarray, np.ndarray]:
    v = np.array([np.cos(theta / 2), np.sin(theta / 2)], dtype=complex)
    w = np.array([-np.sin(theta / 2), np.cos(theta / 2)], dtype=complex)
    return projector(v), projector(w)


def chsh_model() -> QbnModel:
    """Bell set-up with the CHSH-optimal angles (0, pi/2 for Alice; +-pi/4 for Bob)."""
    alice = {"t": _rotated_basis(0.0), "f": _rotated_basis(np.pi / 2)}
    bob = {"t": _rotated_basis(np.pi / 4), "f": _rotated_basis(-np.pi / 4)}
    return bell_model(alice=alice, bob=bob, observed=("A", "B", "X", "Y"))


_BITFLIP = np.array([[0, 1], [1, 0]], dtype=complex)


def relay_model(p_y: float = 0.3) -> QbnModel:
    """The four-node compositionality example.

    ``Q1`` prepares a partially entangled pair on ``q1a, q1b``. ``q1b`` goes
    through ``Q2``, an identity channel when the hidden coin ``Y`` is ``t``
    and a bit flip otherwise. ``X`` measures ``q1a`` jointly with the output
    ``q2`` using a two-outcome POVM.
    """
    psi = np.cos(0.3) * ket("00") + np.sin(0.3) * ket("11")
    q1 = Node("Q1", "quantum", QFactor.operator(("q1a", "q1b"), projector(psi)), qubits=("q1a", "q1b"))
    y = coin("Y", p_y)
    fam = InstrumentFamily((), ("Y",), ("q1b",), ("q2",), {
        ("t",): Instrument((), {(): KrausMap((np.eye(2),))}),
        ("f",): Instrument((), {(): KrausMap((_BITFLIP,))}),
    })
    q2 = Node("Q2", "quantum", choi_from_instrument(fam),
              (InEdge("Y", ("Y",)), InEdge("Q1", ("q1b",))), qubits=("q2",))
    # effect for x^t: Bell projector plus half of |01><01|, a genuine POVM element
    m_t = projector(PHI_PLUS) + 0.5 * projector(ket("01"))
    m_f = np.eye(4) - m_t
    cpt = QFactor.from_table(("X",), ("q1a", "q2"), {("t",): m_t.T, ("f",): m_f.T})
    x = Node("X", "classical", cpt, (InEdge("Q1", ("q1a",)), InEdge("Q2", ("q2",))))
    return QbnModel([q1, y, q2, x], observed=("X",))


RELAY_PARTITION = (("Q1", "X"), ("Y", "Q2"))


def sprinkler_model() -> QbnModel:
    """Cloudy / sprinkler / rain / wet grass."""
    parents = {"C": (), "S": ("C",), "R": ("C",), "W": ("S", "R")}
    cpts = {
        "C": np.array([0.5, 0.5]),
        "S": np.array([[0.1, 0.5], [0.9, 0.5]]),
        "R": np.array([[0.8, 0.2], [0.2, 0.8]]),
        "W": np.array([[[0.99, 0.9], [0.9, 0.0]], [[0.01, 0.1], [0.1, 1.0]]]),
    }
    return classical_model(parents, cpts, observed=("W",))


def corpus_models() -> dict[str, QbnModel]:
    """Every named example model."""
    return {
        "bell": bell_model(),
        "bell_deterministic": bell_model(1.0, 1.0),
        "chsh": chsh_model(),
        "relay": relay_model(),
        "sprinkler": sprinkler_model(),
    }


# -- proof-nets -------------------------------------------------------------------

def _modular_cpt(head: str, parents: tuple[str, ...], rng: np.random.Generator) -> QFactor:
    p = rng.uniform(0.05, 0.95, size=(2,) * len(parents))
    table = np.stack([p, 1 - p])
    return QFactor.classical((head,) + parents, table)


def modular_nets(seed: int = 8):
    """The three modularity nets ``R0 ⊢ A+ -o C+``, ``R1 ⊢ (A+ -o C+)⊥, D+``, ``R2 ⊢ C+ -o A+, D+``.

    Box CPTs are random classical tables drawn from ``seed``.
    """
    from .proofnet.formula import neg, pos
    from .proofnet.net import NetBuilder

    rng = np.random.default_rng(seed)
    A, B, C, D, E = (pos(x) for x in "ABCDE")

    b0 = NetBuilder()
    (a_in,), b_out = b0.box("B", [neg("A")], B, _modular_cpt("B", ("A",), rng))
    (b_in,), c_out = b0.box("C", [neg("B")], C, _modular_cpt("C", ("B",), rng))
    b0.cut(b_out, b_in)
    b0.binary("par", a_in, c_out)
    r0 = b0.build()

    b1 = NetBuilder()
    _, e_out = b1.box("E", [], E, _modular_cpt("E", (), rng))
    (e_a,), a_out = b1.box("A", [neg("E")], A, _modular_cpt("A", ("E",), rng))
    (e_d, c_in), _ = b1.box("D", [neg("E"), neg("C")], D, _modular_cpt("D", ("E", "C"), rng))
    b1.cut(e_out, b1.contraction(e_a, e_d))
    b1.binary("tensor", a_out, c_in)
    r1 = b1.build()

    b2 = NetBuilder()
    _, e_out = b2.box("E", [], E, _modular_cpt("E", (), rng))
    (e_d, c_in), d_out = b2.box("D", [neg("E"), neg("C")], D, _modular_cpt("D", ("E", "C"), rng))
    (e_a, d_a), a_out = b2.box("A", [neg("E"), neg("D")], A, _modular_cpt("A", ("E", "D"), rng))
    b2.cut(e_out, b2.contraction(e_d, e_a))
    d_ax, _ = b2.ax(D)
    b2.cut(d_out, b2.contraction(d_a, d_ax))
    b2.binary("par", c_in, a_out)
    r2 = b2.build()
    return r0, r1, r2


def bell_net():
    """The Bell set-up as a proof-net with conclusions ``A+``, ``B+``."""
    from .proofnet.encode import encode_qbn

    return encode_qbn(bell_model(), ("A", "B"))


def corpus_nets() -> dict:
    r0, r1, r2 = modular_nets()
    return {"bell": bell_net(), "r0": r0, "r1": r1, "r2": r2}


def data_files() -> dict[str, str]:
    """Text of every shipped data file, keyed by file name."""
    import json

    from .io import factor_to_json, instrument_family_to_json, model_to_json, net_to_text

    out = {}
    for name, model in (("bell", bell_model()), ("chsh", chsh_model()),
                        ("relay", relay_model()), ("sprinkler", sprinkler_model())):
        out[f"{name}.qbn"] = json.dumps(model_to_json(model), indent=1) + "\n"
    for name, net in corpus_nets().items():
        out[f"{name}.pnet"] = net_to_text(net)
    fam = InstrumentFamily((), ("Y",), ("q1b",), ("q2",), {
        ("t",): Instrument((), {(): KrausMap((np.eye(2),))}),
        ("f",): Instrument((), {(): KrausMap((_BITFLIP,))}),
    })
    out["bitflip.json"] = json.dumps(instrument_family_to_json(fam), indent=1) + "\n"
    phi, role = alice_qcpt()
    record = factor_to_json(phi)
    record["role"] = {"head_variables": list(role.head_variables), "head_qubits": [],
                      "parent_variables": list(role.parent_variables), "parent_qubits": list(role.parent_qubits)}
    out["alice.json"] = json.dumps(record, indent=1) + "\n"
    return out


def write_data_files(directory) -> list[str]:
    from pathlib import Path

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, text in data_files().items():
        (d / name).write_text(text)
    return sorted(data_files())


def data_path(name: str):
    """Path of a shipped data file."""
    from importlib.resources import files

    return files("qbayes") / "data" / name
