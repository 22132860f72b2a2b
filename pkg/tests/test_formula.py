import pytest
from hypothesis import given, strategies as st

from qbayes.proofnet.formula import (Atom, FormulaSyntaxError, NameKindError, Par, Tensor, connectives, dual, lolli,
                                     names, neg, parse_formula, polarity, pos, pretty)


def formulas():
    atom = st.builds(Atom, st.sampled_from(["X", "Y", "q1"]), st.just("var"), st.booleans())
    return st.recursive(atom, lambda sub: st.one_of(st.builds(Tensor, sub, sub), st.builds(Par, sub, sub)),
                        max_leaves=8)


def test_lolli_desugars():
    assert parse_formula("(A+ -o C+)") == Par(neg("A"), pos("C"))
    assert lolli(pos("A"), pos("C")) == parse_formula("(A+ -o C+)")


def test_postfix_dual_de_morgan():
    f = parse_formula("qubit q1 q2\n((q1+ * q2+))⊥")
    assert f == Par(neg("q1", "qubit"), neg("q2", "qubit"))
    assert parse_formula("qubit q1 q2\n~(q1+ * q2+)") == f


def test_syntax_error_offset():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("(X+ * ")
    assert info.value.offset == 6


def test_other_syntax_errors():
    for text in ("X", "(X+ Y+)", "(X+ * Y+", "X+ )", "(X+ & Y+)"):
        with pytest.raises(FormulaSyntaxError):
            parse_formula(text)


def test_kind_conflict():
    with pytest.raises(NameKindError):
        parse_formula("var q\nqubit q\nq+")


def test_undeclared_names_are_classical():
    assert parse_formula("X+").kind == "var"
    assert parse_formula("qubit q\nq-").kind == "qubit"


def test_polarity_classes():
    assert polarity(parse_formula("(X+ * Y+)")) == "positive"
    assert polarity(parse_formula("(X- | Y-)")) == "negative"
    assert polarity(parse_formula("(X- | Y+)")) is None
    assert polarity(parse_formula("(X+ | Y+)")) is None


def test_pretty_and_names():
    f = parse_formula("(A+ -o C+)")
    assert pretty(f) == "(A⁻ ⅋ C⁺)"
    assert names(f) == {"A", "C"}
    assert connectives(parse_formula("((A+ * B+) | C-)")) == 2


@given(formulas())
def test_dual_is_involutive(f):
    assert dual(dual(f)) == f


@given(formulas())
def test_dual_swaps_polarity(f):
    p = polarity(f)
    swapped = {"positive": "negative", "negative": "positive", None: None}[p]
    assert polarity(dual(f)) == swapped


@given(formulas())
def test_str_round_trip(f):
    assert parse_formula(str(f)) == f
