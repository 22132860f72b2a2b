"""Typed composition of three small nets.

``R0`` concludes ``A+ -o C+``, ``R1`` offers its dual, and ``R2`` concludes
``C+ -o A+``. Only the first pair composes; gluing the polarized parts of
``R0`` and ``R2`` by hand produces a directed cycle.
"""
from qbayes.corpus import modular_nets
from qbayes.proofnet import (TypeMismatchError, check_qpn, compose_on, induced_dag, neg, orient_polarized,
                             parse_formula, plug, polarized_core, pos, pretty, qpn_semantics,
                             reduce_to_normal_form)
from qbayes.qbn import distribution


def main():
    r0, r1, r2 = modular_nets()
    on = parse_formula("(A+ -o C+)")

    net = compose_on(r0, r1, on)
    print("R0 . R1 conclusions:", [pretty(f) for f in net.conclusion_labels()], "qpn:", check_qpn(net).valid)
    red = reduce_to_normal_form(net)
    print(f"normalized in {red.mult_steps} multiplicative and {red.ax_steps} axiom steps")
    print("induced DAG:", sorted(induced_dag(red.net).edges()))
    print("Pr(D):", distribution(qpn_semantics(red.net)))

    try:
        compose_on(r0, r2, on)
    except TypeMismatchError as e:
        print("\nR0 . R2 rejected:", e)

    c0 = polarized_core(r0)
    c2 = polarized_core(reduce_to_normal_form(r2).net)
    glued = plug(c0, c2, [(neg("A"), pos("A")), (pos("C"), neg("C"))])
    print("untyped gluing of the cores, directed cycle:", orient_polarized(glued).cycle)


if __name__ == "__main__":
    main()
