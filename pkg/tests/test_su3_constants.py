"""Regenerate the su(3) structure constants from matrix commutators."""

import itertools

import sympy as sp

from hstlab.document import example_raw, load_example


def E(p, q):
    M = sp.zeros(3)
    M[p - 1, q - 1] = 1
    return M


def basis():
    i = sp.I
    out = [i * (E(1, 1) - E(2, 2)), i * (E(2, 2) - E(3, 3))]
    pairs = [(1, 2), (1, 3), (2, 3)]
    out += [E(p, q) - E(q, p) for p, q in pairs]
    out += [i * (E(p, q) + E(q, p)) for p, q in pairs]
    return out


def real_coords(M):
    return [sp.re(x) for x in M] + [sp.im(x) for x in M]


def constants():
    B = basis()
    A = sp.Matrix([real_coords(b) for b in B]).T
    c = {}
    for a, b in itertools.combinations(range(8), 2):
        comm = B[a] * B[b] - B[b] * B[a]
        sol = A.solve_least_squares(sp.Matrix(real_coords(comm)))
        assert A * sol == sp.Matrix(real_coords(comm))
        for k, v in enumerate(sol):
            if v != 0:
                c[(a, b, k)] = sp.Rational(v)
    return c


def test_basis_is_traceless_antihermitian():
    for b in basis():
        assert b.trace() == 0 and b.H == -b


def test_bundled_constants_match_commutators():
    want = constants()
    raw = example_raw("su3")["algebra"]["brackets"]
    got = {(i, j, k): sp.Rational(v) for i, j, k, v in raw}
    assert got == want


def test_bundled_algebra_is_lie():
    assert load_example("su3").L.is_lie
