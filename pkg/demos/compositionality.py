"""Semantics of a network split in two parts equals the semantics of the whole.

The relay model sends one qubit of an entangled pair through a channel
controlled by a hidden coin, then measures both qubits jointly.
"""
import numpy as np

from qbayes.corpus import RELAY_PARTITION, relay_model
from qbayes.proofnet import check_compositionality, encode_qbn
from qbayes.qbn import distribution, marginal, subnetwork_semantics
from qbayes.qfactor import max_difference, product, sum_out


def main():
    model = relay_model()
    left, right = RELAY_PARTITION
    phi_l = subnetwork_semantics(model, left)
    phi_r = subnetwork_semantics(model, right)
    print("left part:", left, "scope", sorted(phi_l.scope))
    print("right part:", right, "scope", sorted(phi_r.scope))

    glued = product(phi_l, phi_r)
    hidden = [n for n in glued.scope if n != "X"]
    px = sum_out(glued, hidden)
    print("Pr(X) from the parts:", distribution(px))
    print("Pr(X) from the whole:", distribution(marginal(model, ["X"])))
    print("difference:", max_difference(px, marginal(model, ["X"])))

    net = encode_qbn(model, ("X",))
    rng = np.random.default_rng(0)
    ids = list(net.nodes)
    ok = all(check_compositionality(net, [i for i in ids if rng.random() < 0.5]) for _ in range(20))
    print("20 random proof-net splits agree:", ok)


if __name__ == "__main__":
    main()
