import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hstlab.algebroid import make_algebra
from hstlab.errors import ArityMismatch, NotAntisymmetric, WrongBidegree
from hstlab.matrix import Matrix
from hstlab.scalars import Scalar
from hstlab.superalgebra import (
    Superfunction,
    big_bracket,
    evaluate,
    from_endomorphism,
    from_gram_bivector,
    from_gram_form,
    from_terms,
    identity_encoding,
    pullback_form,
    to_endomorphism,
    to_gram,
)

from strategies import antisymmetric, homogeneous, matrices, structure_constants

bidegrees = st.tuples(st.integers(0, 2), st.integers(0, 2))


@st.composite
def homogeneous_triple(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    fs = []
    for _ in range(3):
        p, q = draw(bidegrees)
        fs.append(draw(homogeneous(n, min(p, n), min(q, n))))
    return fs


def deg(f):
    return f.total_degree() or 0


def sign(a, b):
    return -1 if (a * b) % 2 else 1


def test_canonical_pairing():
    n = 3
    for i, j in itertools.product(range(n), repeat=2):
        want = Superfunction.constant(n, int(i == j))
        assert big_bracket(Superfunction.e(n, i), Superfunction.xi(n, j)) == want
        assert big_bracket(Superfunction.xi(n, j), Superfunction.e(n, i)) == want


def test_generators_anticommute():
    x, y = Superfunction.xi(3, 0), Superfunction.xi(3, 1)
    assert x.wedge(y) == -(y.wedge(x))
    assert x.wedge(x).is_zero()


@settings(max_examples=200)
@given(homogeneous_triple())
def test_graded_antisymmetry(fs):
    f, g, _ = fs
    assert big_bracket(f, g) == big_bracket(g, f).scale(-sign(deg(f), deg(g)))


@settings(max_examples=200)
@given(homogeneous_triple())
def test_graded_jacobi(fs):
    f, g, h = fs
    lhs = big_bracket(f, big_bracket(g, h))
    rhs = big_bracket(big_bracket(f, g), h) + big_bracket(g, big_bracket(f, h)).scale(sign(deg(f), deg(g)))
    assert lhs == rhs


@settings(max_examples=200)
@given(homogeneous_triple())
def test_graded_leibniz(fs):
    f, g, h = fs
    lhs = big_bracket(f, g.wedge(h))
    rhs = big_bracket(f, g).wedge(h) + g.wedge(big_bracket(f, h)).scale(sign(deg(f), deg(g)))
    assert lhs == rhs


@settings(max_examples=100)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), structure_constants(n))))
def test_derived_bracket_is_the_lie_bracket(data):
    n, c = data
    L = make_algebra([f"x{i}" for i in range(n)], c)
    for i, j in itertools.combinations(range(n), 2):
        X, Y = Superfunction.e(n, i), Superfunction.e(n, j)
        got = big_bracket(big_bracket(X, L.mu), Y)
        want = L.bracket(L.basis(i), L.basis(j))
        assert [got.coefficient(1 << k) for k in range(n)] == want


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), matrices(n))))
def test_endomorphism_encoding(data):
    n, j, R = data
    N = from_endomorphism(R)
    assert to_endomorphism(N) == R
    image = big_bracket(Superfunction.e(n, j), N)
    assert [image.coefficient(1 << i) for i in range(n)] == R.column(j)


@settings(max_examples=100)
@given(st.integers(2, 4).flatmap(antisymmetric))
def test_gram_round_trip(G):
    n = G.rows
    f = from_gram_form(G)
    assert to_gram(f) == G
    assert to_gram(from_gram_bivector(G)) == G
    for i, j in itertools.product(range(n), repeat=2):
        assert evaluate(f, [i, j]) == G[i, j]


def test_identity_anchors():
    n = 3
    L = make_algebra(["a", "b", "c"], {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1})
    ident = identity_encoding(n)
    assert ident == from_endomorphism(Matrix.identity(n))
    assert big_bracket(ident, L.mu) == L.mu
    X = Superfunction.e(n, 1)
    assert big_bracket(X, ident) == X


def test_pullback_of_volume_is_determinant():
    n = 3
    vol = Superfunction.monomial(n, xis=range(3))
    R = Matrix([[2, 1, 0], [0, 1, 0], [1, 0, 3]])
    assert pullback_form(vol, R) == vol.scale(Scalar(6))


def test_bidegree_errors():
    mixed = Superfunction.e(2, 0) + Superfunction.xi(2, 0).wedge(Superfunction.xi(2, 1))
    with pytest.raises(WrongBidegree):
        mixed.bidegree()
    with pytest.raises(WrongBidegree):
        pullback_form(Superfunction.e(2, 0), Matrix.identity(2))
    with pytest.raises(ArityMismatch):
        evaluate(Superfunction.xi(2, 0), [0, 1])
    with pytest.raises(NotAntisymmetric):
        from_gram_form(Matrix([[1, 0], [0, 0]]))


def test_format_and_terms_round_trip():
    labels = ["A1", "B1", "Z"]
    f = from_terms(3, [(["a1", "b1", "z"], "-1"), (["a1"], "1/2r")], labels)
    assert f.format(labels) == "1/2r a1 - a1 b1 z"
    assert from_terms(3, f.to_terms(labels), labels) == f


def test_generator_names():
    f = Superfunction.monomial(3, es=[0], xis=[1, 2], coeff=-2)
    assert f.format() == "-2 e1 x2 x3"
    assert f.format(["a", "b", "c"]) == "-2 a b* c*"
