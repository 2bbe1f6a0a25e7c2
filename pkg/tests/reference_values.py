"""Hand transcriptions of the reference values for the bundled examples.

Expressions use the display syntax of :meth:`Superfunction.format`: terms
joined by `` + `` / `` - ``, an optional leading coefficient, then
generator names in the order given (products are re-sorted with sign).
"""

from __future__ import annotations

import re

from hstlab.matrix import Matrix
from hstlab.superalgebra import Superfunction, from_terms


def expr(text: str, labels) -> Superfunction:
    n = len(labels)
    rows = []
    for sign, body in re.findall(r"(^|[+-])\s*([^+-]+)", text.strip().replace(" - ", " -").replace(" + ", " +")):
        tokens = body.split()
        coeff = "1"
        if tokens and (tokens[0] == "r" or tokens[0][0].isdigit()):
            coeff = tokens.pop(0)
            if coeff == "r":
                coeff = "1r"
        if sign == "-":
            coeff = coeff[1:] if coeff.startswith("-") else "-" + coeff
        rows.append((tokens, coeff))
    return from_terms(n, rows, labels)


def minus_identity(n=8):
    return Matrix.identity(n).scale(-1)


R8 = {
    "d_omega": [
        "-a1 b1 c1 + a2 b2 c1",
        "a1 b1 c2 - a2 b2 c2",
        "a1 b1 c3 - a2 b2 c3",
    ],
    "pullback": "a1 b1 z - a2 b2 z",
    "g": minus_identity(),
    "N_sign": -1,
}

SU3 = {
    "d_omega_1": (
        "-r a1 b13 c13 - r a1 b23 c23 + r a2 b12 c12 + r a2 b13 c13"
        " - b12 b13 c23 - b12 b23 c13 - b13 b23 c12 - c12 c13 c23"
    ),
    "pullback": (
        "-a1 b13 c13 + a1 b23 c23 - 2 a1 b12 c12 - a2 b13 c13 - 2 a2 b23 c23"
        " + a2 b12 c12 + b23 c12 c13 + b13 c12 c23 + b12 c13 c23 + b12 b13 b23"
    ),
    # 1/sqrt3 = 1/3r, 2/sqrt3 = 2/3r, sqrt3/2 = 1/2r
    "N": [
        [
            ["-1/3r", "2/3r", 0, 0, 0, 0, 0, 0],
            ["-2/3r", "1/3r", 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, -1, 0, 0],
            [0, 0, 0, 0, 0, 0, -1, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, -1, 0, 0, 0],
        ],
        [
            [0, 0, "-1/3r", 0, 0, 1, 0, 0],
            [0, 0, "-2/3r", 0, 0, 0, 0, 0],
            [0, "1/2r", 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, -1, 0, 0, 0, 0],
            [-1, "1/2", 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, -1, 0],
        ],
        [
            [0, 0, -1, 0, 0, "-1/3r", 0, 0],
            [0, 0, 0, 0, 0, "-2/3r", 0, 0],
            [1, "-1/2", 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, -1],
            [0, 0, 0, 0, 0, 0, -1, None],  # blank in the reference
            [0, "1/2r", 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
        ],
    ],
    "g": Matrix([[-1 if i == j else ("1/2" if {i, j} == {0, 1} else 0) for j in range(8)] for i in range(8)]),
}

S3T5 = {
    "d_omega": ["-2 a1 a3 a4", "-2 a1 a4 a2", "-2 a1 a2 a3"],
    "pullback": "2 a2 a3 a4",
    "g": Matrix.identity(8),
    "N_sign": 1,
}


def reference_matches(M: Matrix, rows) -> tuple[bool, list]:
    """Compare entry by entry, skipping blanks; returns (ok, blank positions)."""
    from hstlab.scalars import as_scalar

    blanks = []
    ok = True
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x is None:
                blanks.append((i, j))
            elif M[i, j] != as_scalar(x):
                ok = False
    return ok, blanks
