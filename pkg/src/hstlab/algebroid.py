"""Lie algebras viewed as Lie algebroids over a point.

The structure ``mu`` is the bidegree (1,2) superfunction

    mu = -1/2 sum c_{ij}^k xi^i xi^j e_k

whose derived bracket ``{{X, mu}, Y}`` is the Lie bracket ``[X, Y]``, and for
which ``{mu, phi}`` is the Chevalley-Eilenberg differential of a form.
Everything else (Schouten bracket, torsion, Frolicher-Nijenhuis bracket,
deformations, dual structures) is a derived bracket built from ``mu``.

Algebras failing the Jacobi identity are accepted and flagged; this is the
pre-Lie setting in which the torsion identities are stated.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, NotAntisymmetric, NotInverse, WrongBidegree
from .matrix import Matrix
from .scalars import Scalar, as_scalar, format_scalar
from .superalgebra import (
    Superfunction,
    big_bracket,
    evaluate,
    from_endomorphism,
    from_gram_bivector,
    from_gram_form,
    identity_encoding,
)

log = logging.getLogger(__name__)

HALF = Scalar(Fraction(1, 2))


def _vec(f: Superfunction) -> list[Scalar]:
    """Coefficients of a bidegree (1,0) superfunction."""
    f.require(1, 0, "section")
    return [f.coefficient(1 << i) for i in range(f.n)]


def _section(n: int, coeffs: Sequence) -> Superfunction:
    return Superfunction(n, {1 << i: as_scalar(c) for i, c in enumerate(coeffs)})


class LieAlgebra:
    """Structure constants ``c[(i, j, k)]`` with ``[e_i, e_j] = sum_k c e_k``."""

    def __init__(self, labels: Sequence[str], constants: Mapping[tuple[int, int, int], Scalar], d: int = 3):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.d = d
        self.c = {key: as_scalar(v, d) for key, v in constants.items() if as_scalar(v, d)}
        n = self.n
        mu = {}
        for (i, j, k), v in self.c.items():
            if i < j:
                # canonical word e_k xi^i xi^j equals xi^i xi^j e_k
                mu[(1 << k) | (1 << (n + i)) | (1 << (n + j))] = -v
        self.mu = Superfunction(n, mu)
        self._jacobi = None

    @classmethod
    def from_mu(cls, mu: Superfunction, labels: Sequence[str] | None = None, d: int = 3) -> LieAlgebra:
        n = mu.n
        mu.require(1, 2, "Lie structure")
        labels = labels or [f"e{i + 1}" for i in range(n)]
        c = {}
        for k in range(n):
            for i in range(n):
                for j in range(i + 1, n):
                    v = mu.coefficient((1 << k) | (1 << (n + i)) | (1 << (n + j)))
                    if v:
                        c[(i, j, k)] = -v
                        c[(j, i, k)] = v
        return cls(labels, c, d)

    # brackets -------------------------------------------------------------

    def bracket(self, x: Sequence, y: Sequence) -> list[Scalar]:
        out = [Scalar(0)] * self.n
        for (i, j, k), v in self.c.items():
            if x[i] and y[j]:
                out[k] = out[k] + v * x[i] * y[j]
        return out

    def basis(self, i: int) -> list[Scalar]:
        return [Scalar(int(k == i)) for k in range(self.n)]

    def jacobiator(self, x, y, z) -> list[Scalar]:
        b = self.bracket
        terms = [b(b(x, y), z), b(b(y, z), x), b(b(z, x), y)]
        return [p + q + r for p, q, r in zip(*terms)]

    @property
    def jacobi_witness(self) -> tuple[int, int, int] | None:
        """First basis triple on which the Jacobi identity fails."""
        if self._jacobi is None:
            self._jacobi = ()
            for i, j, k in itertools.combinations(range(self.n), 3):
                if any(self.jacobiator(self.basis(i), self.basis(j), self.basis(k))):
                    self._jacobi = (i, j, k)
                    break
        return self._jacobi or None

    @property
    def is_lie(self) -> bool:
        return self.jacobi_witness is None

    def section(self, coeffs) -> Superfunction:
        return _section(self.n, coeffs)

    def __repr__(self):
        return f"LieAlgebra(n={self.n}, labels={self.labels})"

    def structure_list(self) -> list[list]:
        return [
            [i, j, k, format_scalar(v)]
            for (i, j, k), v in sorted(self.c.items())
            if i < j
        ]


def make_algebra(labels: Sequence[str], c: Mapping[tuple[int, int, int], object], d: int = 3) -> LieAlgebra:
    """Build an algebra from structure constants, completing antisymmetry.

    Entries given for both ``(i,j,k)`` and ``(j,i,k)`` must be negatives of
    each other; ``(i,i,k)`` must vanish.  A Jacobi failure is logged, not
    raised.
    """
    n = len(labels)
    full: dict[tuple[int, int, int], Scalar] = {}
    for (i, j, k), v in c.items():
        if not all(0 <= t < n for t in (i, j, k)):
            raise DimensionMismatch(f"structure constant index ({i},{j},{k}) out of range")
        v = as_scalar(v, d)
        if i == j:
            if v:
                raise NotAntisymmetric(f"c[{i},{i},{k}] must vanish", witness=(i, j, k))
            continue
        partner = c.get((j, i, k))
        if partner is not None and as_scalar(partner, d) != -v:
            raise NotAntisymmetric(f"c[{i},{j},{k}] != -c[{j},{i},{k}]", witness=(i, j, k))
        full[(i, j, k)] = v
        full[(j, i, k)] = -v
    alg = LieAlgebra(labels, full, d)
    if not alg.is_lie:
        log.warning("Jacobi identity fails on basis triple %s", alg.jacobi_witness)
    return alg


def abelian(n: int, labels: Sequence[str] | None = None) -> LieAlgebra:
    return LieAlgebra(labels or [f"e{i + 1}" for i in range(n)], {})


def jacobi_defect(L: LieAlgebra) -> Superfunction:
    """``{mu, mu}``; zero exactly when the Jacobi identity holds."""
    return big_bracket(L.mu, L.mu)


# ---------------------------------------------------------------------------
# differential and Schouten bracket


def ce_differential(L: LieAlgebra, phi: Superfunction) -> Superfunction:
    """Chevalley-Eilenberg differential ``{mu, phi}`` of a (0,k) form."""
    if phi and phi.bidegree()[0] != 0:
        raise WrongBidegree("ce_differential expects a form of bidegree (0,k)")
    return big_bracket(L.mu, phi)


def ce_differential_combinatorial(L: LieAlgebra, phi: Superfunction) -> Superfunction:
    """Oracle: ``d phi(X_0..X_k) = sum_{i<j} (-1)^{i+j} phi([X_i,X_j], X_0..^i..^j..X_k)``."""
    n = L.n
    if not phi:
        return Superfunction(n)
    p, k = phi.bidegree()
    if p != 0:
        raise WrongBidegree("ce_differential expects a form of bidegree (0,k)")
    terms = {}
    for idx in itertools.combinations(range(n), k + 1):
        args = [L.basis(i) for i in idx]
        total = Scalar(0)
        for a, b in itertools.combinations(range(k + 1), 2):
            br = L.bracket(args[a], args[b])
            if not any(br):
                continue
            rest = [args[t] for t in range(k + 1) if t not in (a, b)]
            v = evaluate(phi, [br] + rest)
            total = total + (-v if (a + b) & 1 else v)
        if total:
            mask = 0
            for i in idx:
                mask |= 1 << (n + i)
            terms[mask] = total
    return Superfunction(n, terms)


def schouten(L: LieAlgebra, P: Superfunction, Q: Superfunction) -> Superfunction:
    """Schouten-Nijenhuis bracket as the derived bracket ``{{P, mu}, Q}``.

    With this normalization a bivector inverse to a 2-form satisfies
    ``[pi, pi] = 2 d omega(pi#, pi#, pi#)`` where ``pi#`` is built from the
    pairing ``<beta, pi# alpha> = pi(alpha, beta)``.  Only bivectors occur
    in the verification suite; for odd multivectors the sign is that of the
    derived bracket and is convention dependent.
    """
    for f, what in ((P, "first"), (Q, "second")):
        if f and f.bidegree()[1] != 0:
            raise WrongBidegree(f"{what} argument of schouten must be a multivector")
    return big_bracket(big_bracket(P, L.mu), Q)


# ---------------------------------------------------------------------------
# vector-valued 2-forms


@dataclass
class BilinearWitness:
    """Values of an antisymmetric vector-valued 2-form on basis pairs i < j."""

    n: int
    values: dict[tuple[int, int], list[Scalar]]
    superfunction: Superfunction | None = None

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values.values())

    def nonzero(self) -> dict[tuple[int, int], list[Scalar]]:
        return {k: v for k, v in self.values.items() if any(v)}

    def first_nonzero(self):
        for k in sorted(self.values):
            if any(self.values[k]):
                return k, self.values[k]
        return None

    def scaled(self, c) -> BilinearWitness:
        c = as_scalar(c)
        return BilinearWitness(self.n, {k: [c * x for x in v] for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, BilinearWitness):
            return NotImplemented
        return self.n == other.n and all(
            self.values.get(k, [0] * self.n) == other.values.get(k, [0] * self.n)
            for k in set(self.values) | set(other.values)
        )


def derived_pair(F: Superfunction, x: Superfunction, y: Superfunction) -> Superfunction:
    """``{{x, F}, y}``: the bracket on sections determined by ``F``."""
    return big_bracket(big_bracket(x, F), y)


def evaluate_vector_form(F: Superfunction) -> BilinearWitness:
    """Read a bidegree (1,2) superfunction as a map on basis pairs."""
    n = F.n
    values = {}
    for i, j in itertools.combinations(range(n), 2):
        r = derived_pair(F, Superfunction.e(n, i), Superfunction.e(n, j))
        values[(i, j)] = _vec(r) if r else [Scalar(0)] * n
    return BilinearWitness(n, values, F)


def torsion_superfunction(L: LieAlgebra, R: Matrix) -> Superfunction:
    """``1/2 (mu_{N,N} - mu_{N^2})`` with ``mu_{N,N} = {N, {N, mu}}``."""
    N = from_endomorphism(R)
    N2 = from_endomorphism(R @ R)
    mu_nn = big_bracket(N, big_bracket(N, L.mu))
    return (mu_nn - big_bracket(N2, L.mu)).scale(HALF)


def nijenhuis_torsion_sections(L: LieAlgebra, R: Matrix) -> BilinearWitness:
    """``[NX,NY] - N([NX,Y] + [X,NY] - N[X,Y])`` on basis pairs."""
    n = L.n
    cols = [R.column(j) for j in range(n)]
    N = R.apply
    values = {}
    for i, j in itertools.combinations(range(n), 2):
        x, y = L.basis(i), L.basis(j)
        nx, ny = cols[i], cols[j]
        inner = [a + b - c for a, b, c in zip(L.bracket(nx, y), L.bracket(x, ny), N(L.bracket(x, y)))]
        values[(i, j)] = [a - b for a, b in zip(L.bracket(nx, ny), N(inner))]
    return BilinearWitness(n, values)


def nijenhuis_torsion(L: LieAlgebra, R: Matrix) -> BilinearWitness:
    """Nijenhuis torsion of N, computed twice and cross-checked."""
    direct = nijenhuis_torsion_sections(L, R)
    via_mu = evaluate_vector_form(torsion_superfunction(L, R))
    if direct != via_mu:
        raise AssertionError("torsion: section formula and superfunction form disagree")
    return BilinearWitness(L.n, direct.values, via_mu.superfunction)


def fn_superfunction(L: LieAlgebra, RI: Matrix, RJ: Matrix) -> Superfunction:
    """``[I,J]_FN = {{I, mu}, J} + {I o J, mu}``."""
    I, J = from_endomorphism(RI), from_endomorphism(RJ)
    IJ = from_endomorphism(RI @ RJ)
    return big_bracket(big_bracket(I, L.mu), J) + big_bracket(IJ, L.mu)


def fn_bracket(L: LieAlgebra, RI: Matrix, RJ: Matrix) -> BilinearWitness:
    return evaluate_vector_form(fn_superfunction(L, RI, RJ))


def deform(L: LieAlgebra, R: Matrix) -> LieAlgebra:
    """The structure ``mu_N = {N, mu}``; its Jacobi identity is reported, not assumed."""
    mu_n = big_bracket(from_endomorphism(R), L.mu)
    if not mu_n:
        return LieAlgebra(L.labels, {}, L.d)
    return LieAlgebra.from_mu(mu_n, L.labels, L.d)


def deformed_bracket(L: LieAlgebra, R: Matrix, x, y) -> list[Scalar]:
    """``[NX,Y] + [X,NY] - N[X,Y]``."""
    N = R.apply
    return [a + b - c for a, b, c in zip(L.bracket(N(x), y), L.bracket(x, N(y)), N(L.bracket(x, y)))]


# ---------------------------------------------------------------------------
# twisted Poisson bivectors and the dual structure


@dataclass
class DualStructure:
    omega: Superfunction
    pi: Superfunction
    mu_pi: Superfunction
    pi_pi: Superfunction
    gamma: Superfunction
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def is_lie(self) -> bool:
        return self.checks["gamma_gamma_zero"]


def dual_structure(L: LieAlgebra, G_omega: Matrix, G_pi: Matrix | None = None) -> DualStructure:
    """``gamma^pi = mu_pi + 1/2 {omega, [pi, pi]}`` on A*.

    ``G_pi`` defaults to ``G_omega^{-1}``; a supplied matrix must be that
    inverse.  The identities used along the way are recorded in ``checks``.
    """
    n = L.n
    if G_pi is None:
        G_pi = G_omega.inverse()
    elif not (G_omega @ G_pi).is_identity():
        raise NotInverse("bivector Gram matrix is not the inverse of the 2-form Gram matrix")
    omega = from_gram_form(G_omega)
    pi = from_gram_bivector(G_pi)
    mu_pi = big_bracket(pi, L.mu)
    pp = schouten(L, pi, pi)
    gamma = mu_pi + big_bracket(omega, pp).scale(HALF)
    checks = {
        "pi_omega_is_minus_id": big_bracket(pi, omega) == -identity_encoding(n),
        "omega_pp_omega": big_bracket(big_bracket(omega, pp), omega)
        == big_bracket(pi, big_bracket(omega, L.mu)).scale(4),
        "mu_pi_squared": big_bracket(mu_pi, mu_pi) == big_bracket(L.mu, pp),
        "mu_pi_pp_zero": big_bracket(mu_pi, pp).is_zero(),
        "gamma_gamma_zero": big_bracket(gamma, gamma).is_zero(),
    }
    return DualStructure(omega, pi, mu_pi, pp, gamma, checks)


def form(L: LieAlgebra, G: Matrix) -> Superfunction:
    return from_gram_form(G)
