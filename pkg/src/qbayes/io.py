"""File formats: JSON for factors, models and instruments; a line format for nets.

Complex numbers are ``[re, im]`` pairs and matrices are lists of rows.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .instruments import Instrument, InstrumentFamily, KrausMap
from .qbn import InEdge, InvalidModelError, Node, QbnModel, ValidationReport
from .qfactor import QFactor, assignments, value_index


class FormatError(ValueError):
    """Malformed input file."""


# -- matrices and factors ----------------------------------------------------------

def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as e:
        raise FormatError(f"bad matrix: {e}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise FormatError(f"matrix entries must be [re, im] pairs, got array of shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def factor_to_json(phi: QFactor) -> dict:
    return {
        "classical_scope": list(phi.variables),
        "register": list(phi.qubits),
        "entries": [{"assignment": a, "matrix": matrix_to_json(phi(a))} for a in assignments(phi.variables)],
    }


def factor_from_json(d: dict, check: bool = True) -> QFactor:
    try:
        variables = list(d["classical_scope"])
        qubits = list(d["register"])
        table = {}
        for entry in d["entries"]:
            a = entry["assignment"]
            if set(a) != set(variables):
                raise FormatError(f"assignment {a} does not match scope {variables}")
            table[tuple(a[v] for v in variables)] = matrix_from_json(entry["matrix"])
    except (KeyError, TypeError) as e:
        raise FormatError(f"bad factor record: missing or malformed {e}") from None
    try:
        return QFactor.from_table(variables, qubits, table, check=check)
    except ValueError as e:
        raise FormatError(f"bad factor: {e}") from None


# -- models ------------------------------------------------------------------------

def model_to_json(model: QbnModel) -> dict:
    nodes = []
    for node in model.nodes.values():
        rec: dict[str, Any] = {"name": node.name, "kind": node.kind}
        rec["parents"] = [{"node": p.source, "label": p.label[0] if model.nodes[p.source].kind == "classical"
                           else list(p.label)} for p in node.parents]
        if node.kind == "quantum":
            out = [{"to": t, "label": list(label)} for t, label in model.children(node.name)]
            dangling = [q for q in node.qubits if q not in model.consumed_qubits(node.name)]
            if dangling:
                out.append({"to": None, "label": dangling})
            rec["out_edges"] = out
        rec["cpt"] = factor_to_json(node.cpt)
        nodes.append(rec)
    return {
        "variables": list(model.variables),
        "registers": {k: list(v) for k, v in model.registers.items()},
        "nodes": nodes,
        "observed": list(model.observed),
    }


def model_from_json(d: dict) -> QbnModel:
    """Build a model, checking declared out-edges against the register partition.

    Raises :class:`FormatError` on malformed records and
    :class:`InvalidModelError` when declared out-edges are inconsistent.
    """
    try:
        registers = {k: tuple(v) for k, v in d.get("registers", {}).items()}
        variables = list(d.get("variables", []))
        nodes, errors = [], []
        for rec in d["nodes"]:
            name, kind = rec["name"], rec["kind"]
            parents = []
            for p in rec.get("parents", []):
                label = p["label"]
                parents.append(InEdge(p["node"], (label,) if isinstance(label, str) else tuple(label)))
            qubits = registers.get(name, ()) if kind == "quantum" else ()
            if kind == "quantum" and name not in registers:
                errors.append(f"quantum node {name!r} has no declared register")
            if kind == "classical" and name not in variables:
                errors.append(f"classical node {name!r} is not a declared variable")
            nodes.append((Node(name, kind, factor_from_json(rec["cpt"], check=False), tuple(parents), qubits),
                          rec.get("out_edges")))
        model = QbnModel([n for n, _ in nodes], d.get("observed", []))
    except (KeyError, TypeError) as e:
        raise FormatError(f"bad model record: missing or malformed {e}") from None
    except ValueError as e:
        raise FormatError(str(e)) from None
    for node, out_edges in nodes:
        if out_edges is None or node.kind != "quantum":
            continue
        declared = [tuple(o["label"]) for o in out_edges]
        flat = [q for label in declared for q in label]
        if sorted(flat) != sorted(node.qubits):
            errors.append(f"register {node.name!r}: out-edge labels {declared} do not partition {list(node.qubits)}")
        actual = sorted((t, tuple(label)) for t, label in model.children(node.name))
        listed = sorted((o["to"], tuple(o["label"])) for o in out_edges if o["to"] is not None)
        if actual != listed:
            errors.append(f"register {node.name!r}: out-edges {listed} disagree with consumer parents {actual}")
    missing = [v for v in variables if v not in model.nodes]
    if missing:
        errors.append(f"declared variables {missing} have no node")
    if errors:
        raise InvalidModelError(ValidationReport(errors))
    return model


# -- instruments ---------------------------------------------------------------------

def _values(assignment: dict, names) -> tuple[str, ...]:
    for v in assignment.values():
        value_index(v)
    return tuple(assignment[n] for n in names)


def _value_order(item) -> tuple[int, ...]:
    return tuple(value_index(v) for v in item[0])


def instrument_family_to_json(fam: InstrumentFamily) -> dict:
    return {
        "outcome_variables": list(fam.outcome_variables),
        "parent_variables": list(fam.parent_variables),
        "input_qubits": list(fam.input_qubits),
        "output_qubits": list(fam.output_qubits),
        "instruments": [
            {"given": dict(zip(fam.parent_variables, y)),
             "branches": [{"outcome": dict(zip(fam.outcome_variables, x)),
                           "kraus": [matrix_to_json(k) for k in kraus.operators]}
                          for x, kraus in sorted(inst.branches.items(), key=_value_order)]}
            for y, inst in sorted(fam.instruments.items(), key=_value_order)],
    }


def instrument_family_from_json(d: dict) -> InstrumentFamily:
    try:
        outs, pars = tuple(d["outcome_variables"]), tuple(d["parent_variables"])
        insts = {}
        for rec in d["instruments"]:
            branches = {_values(b["outcome"], outs): KrausMap(tuple(matrix_from_json(k) for k in b["kraus"]))
                        for b in rec["branches"]}
            insts[_values(rec["given"], pars)] = Instrument(outs, branches)
        return InstrumentFamily(outs, pars, tuple(d["input_qubits"]), tuple(d["output_qubits"]), insts)
    except (KeyError, TypeError) as e:
        raise FormatError(f"bad instrument record: missing or malformed {e}") from None


# -- files -------------------------------------------------------------------------

def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON: {e}") from None


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def load_model(path) -> QbnModel:
    return model_from_json(read_json(path))


def save_model(model: QbnModel, path) -> None:
    write_json(model_to_json(model), path)


# -- nets --------------------------------------------------------------------------

def net_to_text(net) -> str:
    """Line format: declarations, nodes, edges, boxes, conclusions."""
    kinds = net.kinds()
    lines = []
    for kind in ("var", "qubit"):
        ns = sorted(n for n, k in kinds.items() if k == kind)
        if ns:
            lines.append(f"{kind} " + " ".join(ns))
    for n in net.nodes.values():
        lines.append(f"node {n.id} {n.kind}" + (f" {n.name}" if n.kind == "box" else ""))
    for e, f in net.edges.items():
        s, d = net.src(e), net.dst(e)
        fs = f"{s[0]}.{s[1]}" if s else "."
        ds = f"{d[0]}.{d[1]}" if d else "."
        lines.append(f"edge {e} {fs} -> {ds} : {f}")
    for n in net.boxes():
        if n.cpt is not None:
            lines.append(f"box {n.id} " + json.dumps(factor_to_json(n.cpt), separators=(",", ":")))
    lines.append("conclusions " + " ".join(net.conclusions()))
    return "\n".join(lines) + "\n"


def _endpoint(text: str, lineno: int):
    if text == ".":
        return None
    nid, sep, port = text.rpartition(".")
    if not sep or not port.isdigit():
        raise FormatError(f"line {lineno}: bad endpoint {text!r}")
    return nid, int(port)


def net_from_text(text: str):
    from .proofnet.formula import FormulaSyntaxError, NameKindError, parse_declarations, parse_formula
    from .proofnet.net import PNode, ProofNet

    kinds: dict[str, str] = {}
    node_specs: dict[str, tuple[str, str | None]] = {}
    edges: dict[str, Any] = {}
    prem: dict[str, dict[int, str]] = {}
    conc: dict[str, dict[int, str]] = {}
    cpts: dict[str, QFactor] = {}
    declared_conclusions = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split(None, 1)[0]
        try:
            if head in ("var", "qubit"):
                kinds = parse_declarations([line], kinds)
            elif head == "node":
                parts = line.split()
                if len(parts) not in (3, 4):
                    raise FormatError(f"line {lineno}: expected 'node <id> <kind> [<box name>]'")
                if parts[1] in node_specs:
                    raise FormatError(f"line {lineno}: duplicate node {parts[1]!r}")
                node_specs[parts[1]] = (parts[2], parts[3] if len(parts) == 4 else None)
            elif head == "edge":
                left, sep, formula = line.partition(":")
                parts = left.split()
                if not sep or len(parts) != 5 or parts[3] != "->":
                    raise FormatError(f"line {lineno}: expected 'edge <id> <from>.<port> -> <to>.<port> : <formula>'")
                eid = parts[1]
                if eid in edges:
                    raise FormatError(f"line {lineno}: duplicate edge {eid!r}")
                edges[eid] = parse_formula(formula.strip(), kinds)
                s, d = _endpoint(parts[2], lineno), _endpoint(parts[4], lineno)
                for end, table in ((s, conc), (d, prem)):
                    if end is None:
                        continue
                    slots = table.setdefault(end[0], {})
                    if end[1] in slots:
                        raise FormatError(f"line {lineno}: port {end[0]}.{end[1]} used twice")
                    slots[end[1]] = eid
            elif head == "box":
                _, nid, payload = line.split(None, 2)
                cpts[nid] = factor_from_json(json.loads(payload), check=False)
            elif head == "conclusions":
                declared_conclusions = line.split()[1:]
            else:
                raise FormatError(f"line {lineno}: unknown directive {head!r}")
        except (FormulaSyntaxError, NameKindError) as e:
            raise FormatError(f"line {lineno}: {e}") from None
        except json.JSONDecodeError as e:
            raise FormatError(f"line {lineno}: bad box factor: {e}") from None
    unknown = (set(prem) | set(conc) | set(cpts)) - set(node_specs)
    if unknown:
        raise FormatError(f"edges or boxes refer to undeclared nodes {sorted(unknown)}")

    def ordered(slots: dict[int, str], nid: str, what: str) -> tuple[str, ...]:
        if sorted(slots) != list(range(len(slots))):
            raise FormatError(f"node {nid!r}: {what} ports {sorted(slots)} are not contiguous from 0")
        return tuple(slots[i] for i in range(len(slots)))

    try:
        nodes = [PNode(nid, kind, ordered(prem.get(nid, {}), nid, "premise"),
                       ordered(conc.get(nid, {}), nid, "conclusion"), name, cpts.get(nid))
                 for nid, (kind, name) in node_specs.items()]
        net = ProofNet(nodes, edges)
    except ValueError as e:
        raise FormatError(str(e)) from None
    if declared_conclusions is not None and declared_conclusions != net.conclusions():
        raise FormatError(f"declared conclusions {declared_conclusions} differ from pending edges {net.conclusions()}")
    return net


def load_net(path):
    return net_from_text(Path(path).read_text())


def save_net(net, path) -> None:
    Path(path).write_text(net_to_text(net))
