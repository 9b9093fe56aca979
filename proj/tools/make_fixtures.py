#!/usr/bin/env python3
"""Regenerates the JSON fixtures under fixtures/.

Matrices are {"rows", "cols", "data"} with row-major [re, im] entries; pairs
are {"dim", "count", "x", "y"}. The form of a pair is sum_j <x, x_j><y_j, x>
with <u, v> = v^H u.
"""

import cmath
import json
import math
import pathlib
import sys

ROOT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures")


def c(z):
    z = complex(z)
    return [z.real, z.imag]


def matrix(rows):
    return {"rows": len(rows), "cols": len(rows[0]), "data": [[c(v) for v in r] for r in rows]}


def pair(xs, ys):
    return {"dim": len(xs[0]), "count": len(xs), "x": [[c(v) for v in x] for x in xs], "y": [[c(v) for v in y] for y in ys]}


def basis(n, i, s=1.0):
    v = [0.0] * n
    v[i] = s
    return v


def diag(values):
    n = len(values)
    return [[values[i] if i == j else 0.0 for j in range(n)] for i in range(n)]


def write(rel, obj):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


def main():
    write("rank_one_rows.json", matrix([[1, 0, 0], [1, 0, 0], [1, 0, 0]]))
    write("identity3.json", matrix(diag([1.0, 1.0, 1.0])))
    write("nilpotent2.json", matrix([[0, 1], [0, 0]]))

    # y_1 = x_1 - x_3, y_2 = 0, y_j = x_j for j >= 3, truncated to n = 8.
    n = 8
    ep = [[0.0] * n for _ in range(n)]
    ep[0][0], ep[0][2] = 1.0, -1.0
    for j in range(2, n):
        ep[j][j] = 1.0
    write("ep_truncated_n8.json", matrix(ep))

    # Three equiangular vectors in R^2 scaled to a tight frame with bound 1.
    mb = [[math.sqrt(2 / 3) * math.cos(2 * math.pi * k / 3), math.sqrt(2 / 3) * math.sin(2 * math.pi * k / 3)] for k in range(3)]
    write("parseval3/pair.json", pair(mb, mb))

    write("biframe_2x2/pair.json", pair([[1, 0], [0, 1]], [[3, 1], [1, 1]]))

    # K = diag(3, 1, 1); theta = (e^{iz} e1, e2/2, e3), psi = (e^{iz} e1, e2, e3/3).
    write("diagonal_k3/k.json", matrix(diag([3.0, 1.0, 1.0])))
    for z, tag in ((0.0, "0"), (1.0, "1"), (2.5, "2.5")):
        ph = cmath.exp(1j * z)
        theta = [basis(3, 0, ph), basis(3, 1, 0.5), basis(3, 2)]
        psi = [basis(3, 0, ph), basis(3, 1), basis(3, 2, 1 / 3)]
        write(f"diagonal_k3/pair_z{tag}.json", pair(theta, psi))

    # Forward shift on C^16; f_1 = e^{ia} e1, g_1 = e^{ia} e1 / sqrt(2), otherwise the basis.
    n = 16
    shift = [[1.0 if i == j + 1 else 0.0 for j in range(n)] for i in range(n)]
    write("shift_n16/k.json", matrix(shift))
    for a, tag in ((0.0, "0"), (1.0, "1")):
        ph = cmath.exp(1j * a)
        f = [basis(n, 0, ph)] + [basis(n, j) for j in range(1, n)]
        g = [basis(n, 0, ph / math.sqrt(2))] + [basis(n, j) for j in range(1, n)]
        write(f"shift_n16/pair_a{tag}.json", pair(f, g))

    # Two K-frames whose combined form vanishes on e1 while ||K^H e1||^2 = 2.
    for r in (3, 6):
        xs = [basis(r, 0), basis(r, 0)] + [basis(r, j) for j in range(1, r)]
        ys = [basis(r, 0, 0.5), basis(r, 0, -0.5)] + [basis(r, j) for j in range(1, r)]
        write(f"non_kbiframe/pair_r{r}.json", pair(xs, ys))
        write(f"non_kbiframe/k_r{r}.json", matrix(diag([math.sqrt(2)] + [1.0] * (r - 1))))

    # K = [[e^{ia}, e^{-ia}], [0, 0]] with inner inverse L = [[e^{-ia}, 0], [0, 0]].
    a = 0.7
    ea = cmath.exp(1j * a)
    write("inner_inverse_2x2/k.json", matrix([[ea, ea.conjugate()], [0, 0]]))
    write("inner_inverse_2x2/l.json", matrix([[ea.conjugate(), 0], [0, 0]]))
    write("inner_inverse_2x2/pair.json", pair([basis(2, 0, ea), basis(2, 1)], [basis(2, 0, ea), basis(2, 1, 2.0)]))


if __name__ == "__main__":
    main()
