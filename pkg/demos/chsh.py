"""CHSH value of the Bell set-up with the optimal measurement angles."""
import itertools

import numpy as np

from qbayes.corpus import chsh_model
from qbayes.qbn import conditional


def correlation(row):
    return row[0, 0] + row[1, 1] - row[0, 1] - row[1, 0]


def main():
    table = conditional(chsh_model(), ["A", "B"], ["X", "Y"])
    s = 0.0
    for x, y in itertools.product("tf", repeat=2):
        e = correlation(table.rows[(x, y)])
        sign = -1 if (x, y) == ("f", "f") else 1
        print(f"E(X={x}, Y={y}) = {e:+.6f}")
        s += sign * e
    print(f"S = {s:.9f}   (2*sqrt(2) = {2 * np.sqrt(2):.9f}, classical bound 2)")


if __name__ == "__main__":
    main()
