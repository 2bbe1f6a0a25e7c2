"""Grassmann algebra on A + A* with the big bracket.

Generators are ``e_1..e_n`` (bidegree (1,0), sections of A) and
``xi^1..xi^n`` (bidegree (0,1), sections of A*).  A monomial is an integer
bitmask: bit ``i`` is ``e_{i+1}`` and bit ``n+i`` is ``xi^{i+1}``; the
canonical factor order is ascending bit order, so every ``e`` precedes every
``xi``.

The big bracket is the degree (-1,-1) Poisson bracket fixed by
``{e_i, xi^j} = {xi^j, e_i} = delta_i^j``.  Its sign conventions are not
copied from any formula: the property tests check graded antisymmetry,
Jacobi and Leibniz, and the two anchors ``{id, mu} = mu`` and
``{{X, {N, mu}}, Y} = [X,Y]_N`` pin the encodings below.

Matrix conventions used throughout the package:

* a 2-form with Gram matrix ``G`` is ``sum_{i<j} G[i,j] xi^i xi^j`` and
  ``omega(e_i, e_j) = G[i,j]``; bivectors likewise with ``e`` generators;
* an endomorphism with representing matrix ``R`` acts on columns,
  ``N e_j = sum_i R[i,j] e_i``, so composition is the matrix product in map
  order.  Its superfunction is ``sum_{i,j} R[i,j] xi^j e_i``, for which
  ``{X, N} = N X``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, DimensionMismatch, NotAntisymmetric, WrongBidegree
from .matrix import Matrix
from .scalars import DEFAULT_D, Scalar, as_scalar, format_scalar, parse_scalar


def _popcount(x: int) -> int:
    return x.bit_count()


@lru_cache(maxsize=1 << 17)
def _bits(mask: int) -> tuple[int, ...]:
    out = []
    b = 0
    while mask:
        if mask & 1:
            out.append(b)
        mask >>= 1
        b += 1
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def _product_sign(m1: int, m2: int) -> int:
    """Sign of reordering the concatenation m1*m2 into canonical order."""
    swaps = 0
    for b in _bits(m2):
        swaps += _popcount(m1 >> (b + 1))
    return -1 if swaps & 1 else 1


class Superfunction:
    """Finite sum of monomials with nonzero :class:`Scalar` coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, Scalar] | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Superfunction:
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> Superfunction:
        return cls(n, {0: as_scalar(c)})

    @classmethod
    def e(cls, n: int, i: int) -> Superfunction:
        return cls(n, {1 << i: Scalar(1)})

    @classmethod
    def xi(cls, n: int, i: int) -> Superfunction:
        return cls(n, {1 << (n + i): Scalar(1)})

    @classmethod
    def monomial(cls, n: int, es: Iterable[int] = (), xis: Iterable[int] = (), coeff=1) -> Superfunction:
        """``coeff * e_{es[0]} .. e_{es[-1]} xi^{xis[0]} ..`` in the given order."""
        f = cls.constant(n, coeff)
        for i in es:
            f = f.wedge(cls.e(n, i))
        for i in xis:
            f = f.wedge(cls.xi(n, i))
        return f

    # structure ------------------------------------------------------------

    def bidegree_of(self, mask: int) -> tuple[int, int]:
        low = (1 << self.n) - 1
        return _popcount(mask & low), _popcount(mask >> self.n)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {self.bidegree_of(m) for m in self.terms}

    def bidegree(self) -> tuple[int, int] | None:
        """The common bidegree, or None for zero; raises on mixed input."""
        degs = self.bidegrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise WrongBidegree(f"superfunction is not bihomogeneous: {sorted(degs)}")
        return next(iter(degs))

    def is_bihomogeneous(self, p: int, q: int) -> bool:
        return all(self.bidegree_of(m) == (p, q) for m in self.terms)

    def require(self, p: int, q: int, what: str = "argument") -> None:
        if not self.is_bihomogeneous(p, q):
            raise WrongBidegree(f"{what} must have bidegree ({p},{q}); got {sorted(self.bidegrees())}")

    def component(self, p: int, q: int) -> Superfunction:
        return Superfunction(self.n, {m: c for m, c in self.terms.items() if self.bidegree_of(m) == (p, q)})

    def total_degree(self) -> int | None:
        degs = {sum(d) for d in self.bidegrees()}
        if not degs:
            return None
        if len(degs) > 1:
            raise WrongBidegree("superfunction is not homogeneous in total degree")
        return next(iter(degs))

    def coefficient(self, mask: int) -> Scalar:
        return self.terms.get(mask, Scalar(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # linear structure -----------------------------------------------------

    def _check(self, other: Superfunction):
        if not isinstance(other, Superfunction):
            raise TypeError(f"expected Superfunction, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"dimension {self.n} vs {other.n}")

    def __add__(self, other: Superfunction) -> Superfunction:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Superfunction(self.n, out)

    def __sub__(self, other: Superfunction) -> Superfunction:
        return self + (-other)

    def __neg__(self) -> Superfunction:
        return Superfunction(self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> Superfunction:
        c = as_scalar(c)
        if not c:
            return Superfunction(self.n)
        return Superfunction(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, Superfunction):
            return self.wedge(c)
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def wedge(self, other: Superfunction) -> Superfunction:
        self._check(other)
        out: dict[int, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                v = c1 * c2
                if _product_sign(m1, m2) < 0:
                    v = -v
                m = m1 | m2
                out[m] = out[m] + v if m in out else v
        return Superfunction(self.n, out)

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, Superfunction):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # text -----------------------------------------------------------------

    def generator_names(self, labels: Sequence[str] | None = None) -> list[str]:
        return generator_names(self.n, labels)

    def to_terms(self, labels: Sequence[str] | None = None) -> list[tuple[list[str], str]]:
        names = self.generator_names(labels)
        rows = [([names[b] for b in _bits(m)], format_scalar(c)) for m, c in self.terms.items()]
        return sorted(rows, key=lambda r: (len(r[0]), [names.index(x) for x in r[0]]))

    def format(self, labels: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for gens, coeff in self.to_terms(labels):
            word = "".join(gens) if all(len(g) == 1 for g in gens) else " ".join(gens)
            if not gens:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(word)
            elif coeff == "-1":
                parts.append("-" + word)
            elif coeff in ("1r", "-1r"):
                parts.append(f"{coeff[:-2]}r {word}")
            elif any(ch in coeff[1:] for ch in "+-"):
                parts.append(f"({coeff}) {word}")
            else:
                parts.append(f"{coeff} {word}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Superfunction(n={self.n}, {self.format()})"


def generator_names(n: int, labels: Sequence[str] | None = None) -> list[str]:
    """Names for the 2n generators: labels for e's, lower-cased labels for xi's.

    When lower-casing does not change a label (or would collide) the covector
    name gets a trailing ``*``.
    """
    if labels is None:
        labels = [f"e{i + 1}" for i in range(n)]
        return list(labels) + [f"x{i + 1}" for i in range(n)]
    labels = list(labels)
    lowered = [s.lower() for s in labels]
    ok = len(set(lowered) | set(labels)) == 2 * n and all(a != b for a, b in zip(labels, lowered))
    duals = lowered if ok else [s + "*" for s in labels]
    return labels + duals


def from_terms(n: int, rows, labels: Sequence[str] | None = None, d: int = DEFAULT_D) -> Superfunction:
    """Inverse of :meth:`Superfunction.to_terms`."""
    names = generator_names(n, labels)
    index = {name: b for b, name in enumerate(names)}
    f = Superfunction(n)
    for gens, coeff in rows:
        term = Superfunction.constant(n, parse_scalar(coeff, d))
        for g in gens:
            term = term.wedge(Superfunction(n, {1 << index[g]: Scalar(1)}))
        f = f + term
    return f


# ---------------------------------------------------------------------------
# big bracket


def _right_derivatives(f: Superfunction, lo: int, hi: int):
    """Per generator bit in [lo, hi): list of (reduced mask, signed coeff)."""
    table: dict[int, list[tuple[int, Scalar]]] = {}
    for m, c in f.terms.items():
        for b in _bits(m):
            if lo <= b < hi:
                sign = _popcount(m >> (b + 1)) & 1
                table.setdefault(b - lo, []).append((m & ~(1 << b), -c if sign else c))
    return table


def _left_derivatives(f: Superfunction, lo: int, hi: int):
    table: dict[int, list[tuple[int, Scalar]]] = {}
    for m, c in f.terms.items():
        for b in _bits(m):
            if lo <= b < hi:
                sign = _popcount(m & ((1 << b) - 1)) & 1
                table.setdefault(b - lo, []).append((m & ~(1 << b), -c if sign else c))
    return table


def big_bracket(f: Superfunction, g: Superfunction) -> Superfunction:
    """``{f, g} = sum_i f d<-/de_i  d->/dxi^i g + f d<-/dxi^i  d->/de_i g``."""
    f._check(g)
    n = f.n
    out: dict[int, Scalar] = {}

    def accumulate(left, right):
        for i, lterms in left.items():
            rterms = right.get(i)
            if not rterms:
                continue
            for m1, c1 in lterms:
                for m2, c2 in rterms:
                    if m1 & m2:
                        continue
                    v = c1 * c2
                    if _product_sign(m1, m2) < 0:
                        v = -v
                    m = m1 | m2
                    out[m] = out[m] + v if m in out else v

    accumulate(_right_derivatives(f, 0, n), _left_derivatives(g, n, 2 * n))
    accumulate(_right_derivatives(f, n, 2 * n), _left_derivatives(g, 0, n))
    return Superfunction(n, out)


bb = big_bracket


# ---------------------------------------------------------------------------
# matrices <-> superfunctions


def _check_antisymmetric(G: Matrix):
    if not G.is_square():
        raise NotAntisymmetric("Gram matrix must be square")
    for i in range(G.rows):
        for j in range(i, G.rows):
            if G[i, j] != -G[j, i]:
                raise NotAntisymmetric(f"Gram matrix not antisymmetric at ({i},{j})", witness=(i, j))


def from_gram_form(G: Matrix) -> Superfunction:
    """``sum_{i<j} G[i,j] xi^i xi^j``."""
    _check_antisymmetric(G)
    n = G.rows
    return Superfunction(
        n, {(1 << (n + i)) | (1 << (n + j)): G[i, j] for i in range(n) for j in range(i + 1, n)}
    )


def from_gram_bivector(G: Matrix) -> Superfunction:
    """``sum_{i<j} G[i,j] e_i e_j``."""
    _check_antisymmetric(G)
    n = G.rows
    return Superfunction(n, {(1 << i) | (1 << j): G[i, j] for i in range(n) for j in range(i + 1, n)})


def to_gram(f: Superfunction) -> Matrix:
    """Gram matrix of a 2-form or a bivector."""
    n = f.n
    if f.is_bihomogeneous(0, 2):
        off = n
    elif f.is_bihomogeneous(2, 0):
        off = 0
    else:
        raise WrongBidegree("to_gram expects bidegree (0,2) or (2,0)")
    rows = [[Scalar(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = f.coefficient((1 << (off + i)) | (1 << (off + j)))
            rows[i][j] = c
            rows[j][i] = -c
    return Matrix(rows)


def from_endomorphism(R: Matrix) -> Superfunction:
    """Encode N (``N e_j = sum_i R[i,j] e_i``) as ``sum R[i,j] xi^j e_i``."""
    if not R.is_square():
        raise DimensionMismatch("endomorphism matrix must be square")
    n = R.rows
    # xi^j e_i = -e_i xi^j in canonical order
    return Superfunction(n, {(1 << i) | (1 << (n + j)): -R[i, j] for i in range(n) for j in range(n)})


def to_endomorphism(h: Superfunction) -> Matrix:
    h.require(1, 1, "endomorphism encoding")
    n = h.n
    return Matrix([[-h.coefficient((1 << i) | (1 << (n + j))) for j in range(n)] for i in range(n)])


def identity_encoding(n: int) -> Superfunction:
    return from_endomorphism(Matrix.identity(n))


# ---------------------------------------------------------------------------
# evaluation


def _det(m: list[list[Scalar]]) -> Scalar:
    k = len(m)
    if k == 0:
        return Scalar(1)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Scalar(0)
    for perm in itertools.permutations(range(k)):
        prod = Scalar(1)
        for r, c in enumerate(perm):
            prod = prod * m[r][c]
            if not prod:
                break
        if prod:
            inversions = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
            total = total + (-prod if inversions & 1 else prod)
    return total


def _as_vector(arg, n: int) -> list[Scalar]:
    if isinstance(arg, int):
        if not 0 <= arg < n:
            raise ArityMismatch(f"basis index {arg} out of range")
        return [Scalar(int(i == arg)) for i in range(n)]
    vec = [as_scalar(x) for x in arg]
    if len(vec) != n:
        raise DimensionMismatch("argument has wrong length")
    return vec


def evaluate(f: Superfunction, vectors: Sequence = (), covectors: Sequence = ()) -> Scalar:
    """Value of a bihomogeneous (p,q) element on q vectors and p covectors.

    Arguments are basis indices or coefficient lists.  Determinant
    convention: ``(xi^1 .. xi^k)(X_1..X_k) = det[xi^a(X_b)]``; for mixed
    monomials the e-factor and xi-factor determinants multiply.
    """
    n = f.n
    if not f.terms:
        return Scalar(0)
    p, q = f.bidegree()
    if len(vectors) != q or len(covectors) != p:
        raise ArityMismatch(
            f"bidegree ({p},{q}) needs {q} vectors and {p} covectors, got {len(vectors)} and {len(covectors)}"
        )
    vs = [_as_vector(v, n) for v in vectors]
    cs = [_as_vector(c, n) for c in covectors]
    total = Scalar(0)
    for m, coeff in f.terms.items():
        bits = _bits(m)
        es = bits[:p]
        xs = [b - n for b in bits[p:]]
        de = _det([[c[i] for c in cs] for i in es])
        if not de:
            continue
        dx = _det([[v[i] for v in vs] for i in xs])
        if dx:
            total = total + coeff * de * dx
    return total


# ---------------------------------------------------------------------------
# linear substitutions


def _substitute(phi: Superfunction, images: Sequence[Superfunction], offset: int) -> Superfunction:
    n = phi.n
    out = Superfunction(n)
    for m, c in phi.terms.items():
        bits = _bits(m)
        prod = Superfunction.constant(n, c)
        for b in bits:
            prod = prod.wedge(images[b - offset])
            if not prod:
                break
        out = out + prod
    return out


def pullback_form(phi: Superfunction, R: Matrix) -> Superfunction:
    """``(N* phi)(X_1..X_k) = phi(N X_1, .., N X_k)`` for a (0,k) form."""
    n = phi.n
    if phi and phi.bidegree()[0] != 0:
        raise WrongBidegree("pullback_form expects a form of bidegree (0,k)")
    # N* xi^i = sum_j R[i,j] xi^j
    images = [Superfunction(n, {1 << (n + j): R[i, j] for j in range(n)}) for i in range(n)]
    return _substitute(phi, images, n)


def pullback_by_sharp(phi: Superfunction, R_sharp: Matrix) -> Superfunction:
    """The k-vector ``(a_1..a_k) -> phi(P a_1, .., P a_k)``, P acting on A*."""
    n = phi.n
    if phi and phi.bidegree()[0] != 0:
        raise WrongBidegree("pullback_by_sharp expects a form of bidegree (0,k)")
    # xi^i(P alpha) = sum_j R[i,j] alpha_j: xi^i becomes the vector sum_j R[i,j] e_j
    images = [Superfunction(n, {1 << j: R_sharp[i, j] for j in range(n)}) for i in range(n)]
    return _substitute(phi, images, n)


def pushforward_multivector(P: Superfunction, R: Matrix) -> Superfunction:
    """The k-form ``(X_1..X_k) -> P(F X_1, .., F X_k)`` for F: A -> A*."""
    n = P.n
    if P and P.bidegree()[1] != 0:
        raise WrongBidegree("expects a multivector of bidegree (k,0)")
    # e_i(F X) = sum_j R[i,j] X_j
    images = [Superfunction(n, {1 << (n + j): R[i, j] for j in range(n)}) for i in range(n)]
    return _substitute(P, images, 0)


def swap_generators(f: Superfunction) -> Superfunction:
    """Exchange e_i <-> xi^i, re-reading a structure on A* as one on A.

    The word ``e_I xi^J`` becomes ``xi^I e_J`` which is reordered
    canonically.
    """
    n = f.n
    low = (1 << n) - 1
    out: dict[int, Scalar] = {}
    for m, c in f.terms.items():
        es, xs = m & low, m >> n
        new = (es << n) | xs
        # xi^I e_J -> e_J xi^I costs |I|*|J| transpositions
        if (_popcount(es) * _popcount(xs)) & 1:
            c = -c
        out[new] = c
    return Superfunction(n, out)
