"""Command-line front end.

Every subcommand prints one JSON report on standard output and exits with
0 (success), 1 (validation failure or type mismatch), 2 (IO or parse error)
or 3 (numeric check failure). Floats are rounded to 12 significant digits.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .densemat import DEFAULT_TOL
from .instruments import choi_from_instrument, instrument_from_qcpt
from .io import (FormatError, factor_from_json, factor_to_json, instrument_family_from_json,
                 instrument_family_to_json, load_model, load_net, net_to_text, read_json)
from .oracle import SizeCapExceeded, simulate_joint
from .qbn import InvalidModelError, QbnModel, conditional, distribution, marginal, validate
from .qcpt import QcptRole, check_generalized_qcpt, identity_defect
from .qfactor import QFactor, assignments, equal_within, marginalize_to, max_difference

OK, INVALID, IO_ERROR, NUMERIC = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    code: int
    report: dict

    def text(self) -> str:
        return json.dumps(_round(self.report), indent=2, ensure_ascii=False) + "\n"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}") + 0.0
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.generic):
        return _round(obj.item())
    return obj


def _names(text: str | None) -> list[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


# -- report pieces -----------------------------------------------------------------

def _table(probs: dict[tuple[str, ...], float], names) -> list[dict]:
    return [{"assignment": dict(zip(names, k)), "p": float(v)} for k, v in sorted(probs.items(), key=_key)]


def _key(item):
    return tuple("tf".index(v) for v in item[0])


def _dist_report(phi: QFactor, names) -> list[dict]:
    return _table(distribution(phi, names), names)


def _conditional_rows(targets, evidence, rows: dict) -> list[dict]:
    out = []
    for ev in sorted(rows, key=lambda k: tuple("tf".index(v) for v in k)):
        row = rows[ev]
        out.append({"given": dict(zip(evidence, ev)),
                    "distribution": None if row is None else _table(row, targets),
                    "undefined": row is None})
    return out


def _table_rows(table) -> dict:
    """ConditionalTable rows as ``{evidence: {targets: p} | None}``."""
    out = {}
    for ev, row in table.rows.items():
        if row is None:
            out[ev] = None
            continue
        out[ev] = {tuple(a[t] for t in table.targets): float(row[tuple("tf".index(a[t]) for t in table.targets)])
                   for a in assignments(table.targets)}
    return out


# -- commands ----------------------------------------------------------------------

def _load_valid(args) -> QbnModel:
    model = load_model(args.model)
    report = validate(model, args.tol)
    if not report.valid:
        raise InvalidModelError(report)
    return model


def _order(args):
    return _names(args.order) or None


def _oracle_check(model, phi: QFactor, targets, tol) -> dict:
    sim = simulate_joint(model).as_factor()
    ref = marginalize_to(sim, targets)
    return {"oracle_agrees": equal_within(phi, ref, tol), "oracle_max_difference": max_difference(phi, ref)}


def cmd_validate(args) -> CommandOutcome:
    model = load_model(args.model)
    report = validate(model, args.tol)
    status = "valid" if report.valid else "invalid"
    return CommandOutcome(OK if report.valid else INVALID,
                          {"command": "validate", "status": status, "errors": report.errors,
                           "variables": list(model.variables), "qubits": list(model.qubits),
                           "edges": [[s, d, list(label)] for s, d, label in model.edges()]})


def cmd_joint(args) -> CommandOutcome:
    model = _load_valid(args)
    names = list(model.variables)
    phi = marginal(model, names, _order(args), args.tol)
    report = {"command": "joint", "status": "ok", "variables": names, "distribution": _dist_report(phi, names)}
    total = float(sum(d["p"] for d in report["distribution"]))
    report["total"] = total
    code = OK
    if abs(total - 1) > max(args.tol, 1e-9):
        report["status"], code = "numeric-failure", NUMERIC
    if args.check:
        report.update(_oracle_check(model, phi, names, max(args.tol, 1e-9)))
        if not report["oracle_agrees"]:
            report["status"], code = "numeric-failure", NUMERIC
    return CommandOutcome(code, report)


def cmd_marginal(args) -> CommandOutcome:
    model = _load_valid(args)
    targets = _names(args.targets)
    phi = marginal(model, targets, _order(args), args.tol)
    report = {"command": "marginal", "status": "ok", "targets": targets, "distribution": _dist_report(phi, targets)}
    code = OK
    if args.check:
        report.update(_oracle_check(model, phi, targets, max(args.tol, 1e-9)))
        if not report["oracle_agrees"]:
            report["status"], code = "numeric-failure", NUMERIC
    return CommandOutcome(code, report)


def cmd_conditional(args) -> CommandOutcome:
    model = _load_valid(args)
    targets, evidence = _names(args.targets), _names(args.given)
    table = conditional(model, targets, evidence, _order(args), args.tol)
    return CommandOutcome(OK, {"command": "conditional", "status": "ok", "targets": targets, "given": evidence,
                               "rows": _conditional_rows(targets, evidence, _table_rows(table))})


def cmd_oracle(args) -> CommandOutcome:
    model = _load_valid(args)
    trace = simulate_joint(model, args.tol)
    report = {"command": "oracle", "status": "ok", "variables": list(trace.variables),
              "distribution": _table(trace.probabilities, trace.variables), "total": trace.total()}
    targets, evidence = _names(args.targets), _names(args.given)
    if targets and evidence:
        report.update({"targets": targets, "given": evidence,
                       "rows": _conditional_rows(targets, evidence, trace.conditional(targets, evidence))})
    elif targets:
        report.update({"targets": targets, "marginal": _table(trace.marginal(targets), targets)})
    return CommandOutcome(OK, report)


def cmd_choi(args) -> CommandOutcome:
    fam = instrument_family_from_json(read_json(args.file))
    phi = choi_from_instrument(fam)
    role = fam.role
    ok = check_generalized_qcpt(phi, role, args.tol)
    return CommandOutcome(OK if ok else NUMERIC,
                          {"command": "choi", "status": "ok" if ok else "numeric-failure",
                           "role": _role_json(role), "qcpt": ok, "identity_defect": identity_defect(phi, role),
                           "factor": factor_to_json(phi)})


def _role_json(role: QcptRole) -> dict:
    return {"head_variables": list(role.head_variables), "head_qubits": list(role.head_qubits),
            "parent_variables": list(role.parent_variables), "parent_qubits": list(role.parent_qubits)}


def _role_from(d: dict, phi: QFactor, head: list[str]) -> QcptRole:
    if "role" in d:
        r = d["role"]
        return QcptRole(r.get("head_variables", ()), r.get("head_qubits", ()),
                        r.get("parent_variables", ()), r.get("parent_qubits", ()))
    if not head:
        raise FormatError("factor file has no 'role' record; pass --head")
    unknown = [h for h in head if h not in phi.scope]
    if unknown:
        raise FormatError(f"--head names {unknown} are not in the factor scope")
    return QcptRole(tuple(v for v in phi.variables if v in head), tuple(q for q in phi.qubits if q in head),
                    tuple(v for v in phi.variables if v not in head), tuple(q for q in phi.qubits if q not in head))


def cmd_instrument(args) -> CommandOutcome:
    d = read_json(args.file)
    phi = factor_from_json(d, check=False)
    role = _role_from(d, phi, _names(args.head))
    if not check_generalized_qcpt(phi, role, args.tol):
        return CommandOutcome(INVALID, {"command": "instrument", "status": "invalid", "role": _role_json(role),
                                        "errors": [f"not a Q-CPT for this role: identity defect "
                                                   f"{identity_defect(phi, role):.3e} or non-positive entry"]})
    fam = instrument_from_qcpt(phi, role, args.tol)
    back = choi_from_instrument(fam)
    ok = equal_within(back, phi, 1e-9)
    return CommandOutcome(OK if ok else NUMERIC,
                          {"command": "instrument", "status": "ok" if ok else "numeric-failure",
                           "role": _role_json(role), "round_trip_max_difference": max_difference(back, phi),
                           "instrument": instrument_family_to_json(fam)})


def _write_net(net, args) -> dict:
    text = net_to_text(net)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
        return {"written": args.out}
    return {"net": text.splitlines()}


def _pretty_conclusions(net) -> list[str]:
    from .proofnet import pretty
    return [pretty(f) for f in net.conclusion_labels()]


def cmd_pn_check(args) -> CommandOutcome:
    from .proofnet import check_correct, check_qpn, check_typed_graph, orient_polarized
    from .proofnet.net import correctness_witness
    net = load_net(args.net)
    typing = check_typed_graph(net)
    report = {"command": "pn-check", "conclusions": [str(f) for f in net.conclusion_labels()],
              "pretty": _pretty_conclusions(net), "well_typed": typing.valid, "errors": list(typing.errors),
              "pending_premises": net.pending_premises()}
    if typing.valid:
        report["correct"] = check_correct(net)
        report["switching_witness"] = correctness_witness(net)
        qpn = check_qpn(net, args.tol)
        report["qpn"] = qpn.valid
        report["errors"] = list(qpn.errors)
        report["polarized"] = net.is_polarized()
        if net.is_polarized():
            orient = orient_polarized(net)
            report["orientation_acyclic"] = orient.is_dag
            report["orientation_cycle"] = [list(e) for e in orient.cycle] if orient.cycle else None
    ok = typing.valid and report.get("correct", False)
    report["status"] = "ok" if ok else "invalid"
    return CommandOutcome(OK if ok else INVALID, report)


def cmd_pn_reduce(args) -> CommandOutcome:
    from .proofnet import check_correct, check_typed_graph, reduce_to_normal_form, step_bound
    net = load_net(args.net)
    typing = check_typed_graph(net)
    if not (typing.valid and check_correct(net)):
        return CommandOutcome(INVALID, {"command": "pn-reduce", "status": "invalid",
                                        "errors": list(typing.errors) or ["net is not correct"]})
    red = reduce_to_normal_form(net, args.strategy, args.seed)
    conn, axs = step_bound(net)
    report = {"command": "pn-reduce", "status": "ok", "steps": [[r.cut, r.rule] for r in red.steps],
              "mult_steps": red.mult_steps, "ax_steps": red.ax_steps,
              "bound": {"connectives_in_cuts": conn, "axioms": axs},
              "conclusions": [str(f) for f in red.net.conclusion_labels()]}
    report.update(_write_net(red.net, args))
    return CommandOutcome(OK, report)


def cmd_pn_compose(args) -> CommandOutcome:
    from .proofnet import NameClashError, TypeMismatchError, check_correct, compose_on, parse_formula, pretty
    r1, r2 = load_net(args.net1), load_net(args.net2)
    kinds = {**r1.kinds(), **r2.kinds()}
    formula = parse_formula(args.on, kinds)
    try:
        net = compose_on(r1, r2, formula)
    except TypeMismatchError as e:
        return CommandOutcome(INVALID, {"command": "pn-compose", "status": "type-mismatch", "message": str(e),
                                        "left": pretty(formula),
                                        "right_conclusions": _pretty_conclusions(r2)})
    except NameClashError as e:
        return CommandOutcome(INVALID, {"command": "pn-compose", "status": "name-clash", "message": str(e)})
    report = {"command": "pn-compose", "status": "ok", "correct": check_correct(net),
              "conclusions": [str(f) for f in net.conclusion_labels()]}
    report.update(_write_net(net, args))
    return CommandOutcome(OK, report)


def cmd_pn_encode(args) -> CommandOutcome:
    from .proofnet import encode_qbn
    model = _load_valid(args)
    observed = _names(args.observed) if args.observed is not None else list(model.observed)
    net = encode_qbn(model, observed)
    report = {"command": "pn-encode", "status": "ok", "observed": observed,
              "conclusions": [str(f) for f in net.conclusion_labels()]}
    report.update(_write_net(net, args))
    return CommandOutcome(OK, report)


def cmd_pn_sem(args) -> CommandOutcome:
    from .proofnet import check_qpn, interface_names, qpn_semantics
    net = load_net(args.net)
    qpn = check_qpn(net, args.tol)
    if not qpn.valid:
        return CommandOutcome(INVALID, {"command": "pn-sem", "status": "invalid", "errors": list(qpn.errors)})
    phi = qpn_semantics(net)
    report = {"command": "pn-sem", "status": "ok", "interface": sorted(interface_names(net)),
              "factor": factor_to_json(phi)}
    if not phi.qubits:
        report["distribution"] = _dist_report(phi, list(phi.variables))
    return CommandOutcome(OK, report)


def cmd_selftest(args) -> CommandOutcome:
    from .acceptance import run_all
    results = run_all(_numbers(args.criteria))
    ok = all(r.passed for r in results)
    return CommandOutcome(OK if ok else NUMERIC,
                          {"command": "selftest", "status": "ok" if ok else "numeric-failure",
                           "criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                                         "detail": r.detail} for r in results]})


def _numbers(text):
    return [int(x) for x in _names(text)] or None


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numeric tolerance (default %(default)g)")
    common.add_argument("--order", help="comma-separated elimination order")
    p = _Parser(prog="qbayes", description="Quantum Bayesian networks and quantum proof-nets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check a model file").add_argument("model")
    for name, fn, help_text in (("joint", cmd_joint, "joint distribution"),
                                ("marginal", cmd_marginal, "marginal distribution")):
        sp = add(name, fn, help_text)
        sp.add_argument("model")
        sp.add_argument("--check", action="store_true", help="cross-check against the oracle")
        if name == "marginal":
            sp.add_argument("--targets", required=True)
    sp = add("conditional", cmd_conditional, "conditional table")
    sp.add_argument("model")
    sp.add_argument("--targets", required=True)
    sp.add_argument("--given", default="")
    sp = add("oracle", cmd_oracle, "brute-force density-matrix simulation")
    sp.add_argument("model")
    sp.add_argument("--targets")
    sp.add_argument("--given")
    add("choi", cmd_choi, "Q-CPT of an instrument family").add_argument("file")
    sp = add("instrument", cmd_instrument, "instrument family of a Q-CPT")
    sp.add_argument("file")
    sp.add_argument("--head", help="head names when the factor file has no role record")
    add("pn-check", cmd_pn_check, "typing and correctness of a net").add_argument("net")
    sp = add("pn-reduce", cmd_pn_reduce, "normal form of a net")
    sp.add_argument("net")
    sp.add_argument("--strategy", choices=("leftmost", "random"), default="leftmost")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp = add("pn-compose", cmd_pn_compose, "compose two nets by a cut")
    sp.add_argument("net1")
    sp.add_argument("net2")
    sp.add_argument("--on", required=True, help="conclusion of the first net, e.g. '(A+ -o C+)'")
    sp.add_argument("--out")
    sp = add("pn-encode", cmd_pn_encode, "proof-net of a model")
    sp.add_argument("model")
    sp.add_argument("--observed")
    sp.add_argument("--out")
    add("pn-sem", cmd_pn_sem, "semantics of a net").add_argument("net")
    add("selftest", cmd_selftest, "run the acceptance suite").add_argument("--criteria", help="e.g. 1,3,8")
    return p


def run(argv=None) -> CommandOutcome:
    from .proofnet import FormulaSyntaxError, NameKindError
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        return CommandOutcome(IO_ERROR, {"command": None, "status": "usage-error", "message": str(e)})
    name = args.command
    try:
        return args.fn(args)
    except InvalidModelError as e:
        return CommandOutcome(INVALID, {"command": name, "status": "invalid", "errors": list(e.report.errors)})
    except (OSError, FormatError, FormulaSyntaxError, NameKindError, json.JSONDecodeError) as e:
        return CommandOutcome(IO_ERROR, {"command": name, "status": "io-error", "message": str(e)})
    except (KeyError, ValueError) as e:
        if isinstance(e, SizeCapExceeded) or isinstance(e, np.linalg.LinAlgError):
            return CommandOutcome(NUMERIC, {"command": name, "status": "numeric-failure", "message": str(e)})
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        return CommandOutcome(INVALID, {"command": name, "status": "invalid", "errors": [str(msg)]})


def main(argv=None) -> int:
    outcome = run(argv)
    sys.stdout.write(outcome.text())
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
