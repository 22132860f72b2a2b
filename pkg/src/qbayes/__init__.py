"""Exact inference for quantum Bayesian networks over Q-factors."""
from .densemat import check_positive, partial_trace, tensor_product
from .qfactor import QFactor, coefficient, equal_within, product, sum_out, sum_out_classical, sum_out_qubit
from .qcpt import QcptRole, check_generalized_qcpt, check_qcpt_classical_head, check_qcpt_quantum_head
from .qbn import (
    InEdge, InvalidModelError, Node, QbnModel, Query, conditional, joint_semantics, marginal, validate,
)
from .instruments import (
    Instrument, InstrumentFamily, KrausMap, apply_instrument, choi_from_instrument, instrument_from_qcpt,
)
from .oracle import SimTrace, simulate_joint

__all__ = [
    "check_positive", "partial_trace", "tensor_product",
    "QFactor", "coefficient", "equal_within", "product", "sum_out", "sum_out_classical", "sum_out_qubit",
    "QcptRole", "check_generalized_qcpt", "check_qcpt_classical_head", "check_qcpt_quantum_head",
    "InEdge", "InvalidModelError", "Node", "QbnModel", "Query", "conditional", "joint_semantics",
    "marginal", "validate",
    "Instrument", "InstrumentFamily", "KrausMap", "apply_instrument", "choi_from_instrument",
    "instrument_from_qcpt",
    "SimTrace", "simulate_joint",
]
