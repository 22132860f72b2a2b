"""One test per acceptance criterion; each prints its pass/fail line."""
import pytest

from qbayes.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
