"""Two parties measuring halves of a Bell pair, queried three ways.

Run with ``python3 demos/bell.py``.
"""
import numpy as np

from qbayes.corpus import bell_model
from qbayes.oracle import simulate_joint
from qbayes.proofnet import encode_qbn, induced_dag, qpn_semantics
from qbayes.qbn import conditional, distribution, validate


def main():
    model = bell_model()
    print("valid:", validate(model).valid)

    table = conditional(model, ["A", "B"], ["X", "Y"])
    trace = simulate_joint(model)
    oracle_rows = trace.conditional(["A", "B"], ["X", "Y"])
    print("\nPr(A, B | X, Y), engine vs. direct simulation")
    for (x, y), row in table.rows.items():
        ref = oracle_rows[(x, y)]
        cells = "  ".join(f"{a}{b}:{row['tf'.index(a), 'tf'.index(b)]:.3f}/{ref[(a, b)]:.3f}"
                          for a in "tf" for b in "tf")
        print(f"  X={x} Y={y}  {cells}")

    # same distribution through the proof-net view, with the settings hidden
    net = encode_qbn(model, ("A", "B"))
    print("\nproof-net conclusions:", [str(f) for f in net.conclusion_labels()])
    print("induced DAG:", sorted(induced_dag(net).edges()))
    pab = distribution(qpn_semantics(net), ("A", "B"))
    ref = trace.marginal(("A", "B"))
    print("max |Pr(A,B) net - oracle|:", max(abs(pab[k] - ref[k]) for k in ref))
    assert np.isclose(sum(pab.values()), 1.0)


if __name__ == "__main__":
    main()
