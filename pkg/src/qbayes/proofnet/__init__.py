"""Quantum proof-nets: typed graphs whose boxes carry Q-CPTs."""
from .compose import NameClashError, TypeMismatchError, compose_cut, compose_on, plug
from .encode import encode_qbn, is_closed, qbn_from_net
from .formula import (
    Atom, Formula, FormulaSyntaxError, NameKindError, Par, Tensor, dual, lolli, names, neg, parse_formula,
    polarity, pos, pretty,
)
from .net import (
    NetBuilder, Orientation, PNode, ProofNet, TypingReport, check_correct, check_qpn, check_typed_graph,
    induced_dag, orient_polarized,
)
from .reduce import (
    Reduction, canonical_form, is_normal, polarized_core, reduce_step, reduce_to_normal_form, redexes, step_bound,
)
from .semantics import check_compositionality, composed_semantics, interface_names, qpn_semantics, split_net

__all__ = [
    "NameClashError", "TypeMismatchError", "compose_cut", "compose_on", "plug",
    "encode_qbn", "is_closed", "qbn_from_net",
    "Atom", "Formula", "FormulaSyntaxError", "NameKindError", "Par", "Tensor", "dual", "lolli", "names",
    "neg", "parse_formula", "polarity", "pos", "pretty",
    "NetBuilder", "Orientation", "PNode", "ProofNet", "TypingReport", "check_correct", "check_qpn",
    "check_typed_graph", "induced_dag", "orient_polarized",
    "Reduction", "canonical_form", "is_normal", "polarized_core", "reduce_step", "reduce_to_normal_form",
    "redexes", "step_bound",
    "check_compositionality", "composed_semantics", "interface_names", "qpn_semantics", "split_net",
]
