"""Ways of producing new inputs from the bundled examples.

``change_basis`` and ``scale_all`` preserve the structure; the ``corrupt_*``
helpers each break exactly one ingredient.
"""

from __future__ import annotations

import random

from hstlab.algebroid import make_algebra
from hstlab.hst import HstInput
from hstlab.matrix import Matrix
from hstlab.scalars import Scalar


def random_unimodular(n: int, rng: random.Random, steps: int = 6) -> Matrix:
    """A product of a few elementary shears; small integer entries."""
    M = Matrix.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        E = [[int(r == c) for c in range(n)] for r in range(n)]
        E[i][j] = rng.choice([-1, 1])
        M = M @ Matrix(E)
    return M


def change_basis(inp: HstInput, P: Matrix) -> HstInput:
    """Rewrite everything in the basis ``f_j = sum_i P[i][j] e_i``."""
    L = inp.L
    n = L.n
    Pinv = P.inverse()
    c = {}
    for a in range(n):
        for b in range(a + 1, n):
            br = L.bracket(P.column(a), P.column(b))
            for l, v in enumerate(Pinv.apply(br)):
                if v:
                    c[(a, b, l)] = v
    L2 = make_algebra(L.labels, c, L.d)
    return HstInput(L2, tuple(P.T @ G @ P for G in inp.omegas), inp.eps)


def scale_all(inp: HstInput, lam) -> HstInput:
    return HstInput(inp.L, tuple(G.scale(lam) for G in inp.omegas), inp.eps)


def corrupt_scale(inp: HstInput, i: int, lam) -> HstInput:
    omegas = list(inp.omegas)
    omegas[i] = omegas[i].scale(lam)
    return HstInput(inp.L, tuple(omegas), inp.eps)


def corrupt_eps(inp: HstInput, i: int) -> HstInput:
    eps = list(inp.eps)
    eps[i] = -eps[i]
    return HstInput(inp.L, inp.omegas, tuple(eps))


def corrupt_constant(inp: HstInput, key, delta) -> HstInput:
    """Add ``delta`` to one structure constant ``c_{ij}^k`` (and its partner)."""
    c = {k: v for k, v in inp.L.c.items() if k[0] < k[1]}
    i, j, k = key
    if i > j:
        i, j, delta = j, i, -delta
    c[(i, j, k)] = c.get((i, j, k), Scalar(0)) + delta
    return inp.with_algebra(make_algebra(inp.L.labels, c, inp.L.d))


def corrupt_entry(inp: HstInput, form: int, i: int, j: int, delta) -> HstInput:
    """Perturb one antisymmetric pair of entries of one Gram matrix."""
    rows = [list(r) for r in inp.omegas[form].entries]
    rows[i][j] = rows[i][j] + delta
    rows[j][i] = rows[j][i] - delta
    omegas = list(inp.omegas)
    omegas[form] = Matrix(rows, inp.L.d)
    return HstInput(inp.L, tuple(omegas), inp.eps)
