"""Pre-Courant structures on A + A* and their skew endomorphisms.

Sections of ``E = A + A*`` are linear superfunctions; in coordinates they are
vectors of length ``2n`` (the ``e`` coefficients first, then the ``xi``
ones).  A skew endomorphism ``Q`` of ``E`` corresponds to the quadratic
superfunction ``q`` with ``Q(u) = {u, q}``; under this correspondence an
endomorphism ``N`` of ``A`` lifts to ``N + (-N*)`` with the same encoding as
``N`` itself.

The deformation of a function ``F`` by ``q`` is ``F_q = {q, F}`` and
``F_{q,r} = {r, {q, F}}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebroid import LieAlgebra, schouten, torsion_superfunction
from .errors import DimensionMismatch, WrongBidegree
from .matrix import Matrix
from .scalars import Scalar, as_scalar
from .superalgebra import Superfunction, big_bracket, from_endomorphism, from_gram_bivector, from_gram_form

HALF = Scalar(Fraction(1, 2))


# ---------------------------------------------------------------------------
# sections and skew endomorphisms


def section_vector(u: Superfunction) -> list[Scalar]:
    if u and u.total_degree() != 1:
        raise WrongBidegree("a section of A + A* is a linear superfunction")
    return [u.coefficient(1 << k) for k in range(2 * u.n)]


def section(n: int, coords: Sequence) -> Superfunction:
    if len(coords) != 2 * n:
        raise DimensionMismatch(f"a section needs {2 * n} coordinates")
    return Superfunction(n, {1 << k: as_scalar(c) for k, c in enumerate(coords)})


def basis_section(n: int, k: int) -> Superfunction:
    return Superfunction(n, {1 << k: Scalar(1)})


@dataclass(frozen=True)
class BigEndo:
    """A ``2n x 2n`` column matrix acting on section coordinates."""

    Q: Matrix

    @property
    def n(self) -> int:
        return self.Q.rows // 2

    def __call__(self, u: Superfunction) -> Superfunction:
        return section(self.n, self.Q.apply(section_vector(u)))

    def __matmul__(self, other: BigEndo) -> BigEndo:
        return BigEndo(self.Q @ other.Q)

    def scale(self, c) -> BigEndo:
        return BigEndo(self.Q.scale(c))

    def is_skew(self) -> bool:
        """``<Qu, v> + <u, Qv> = 0`` for the pairing ``<u, v> = {u, v}``."""
        J = pairing_matrix(self.n, self.Q.d)
        return (self.Q.T @ J + J @ self.Q).is_zero()

    def encoding(self) -> Superfunction:
        return quadratic_from_endo(self)

    @classmethod
    def from_quadratic(cls, q: Superfunction) -> BigEndo:
        return endo_from_quadratic(q)

    @classmethod
    def diagonal(cls, R: Matrix) -> BigEndo:
        """``D_N = N + (-N*)``."""
        n = R.rows
        Z = Matrix.zeros(n, n, R.d)
        return cls(Matrix.block([[R, Z], [Z, -R.T]]))

    @classmethod
    def identity(cls, n: int) -> BigEndo:
        return cls(Matrix.identity(2 * n))


def pairing_matrix(n: int, d: int = 3) -> Matrix:
    I = Matrix.identity(n, d)
    Z = Matrix.zeros(n, n, d)
    return Matrix.block([[Z, I], [I, Z]])


def endo_from_quadratic(q: Superfunction) -> BigEndo:
    n = q.n
    if q and q.total_degree() != 2:
        raise WrongBidegree("skew endomorphisms are encoded by quadratic superfunctions")
    cols = []
    for k in range(2 * n):
        img = big_bracket(basis_section(n, k), q)
        cols.append(section_vector(img) if img else [Scalar(0)] * (2 * n))
    return BigEndo(Matrix(list(zip(*cols))))


def quadratic_from_endo(E: BigEndo) -> Superfunction:
    """Inverse of :func:`endo_from_quadratic` on skew endomorphisms.

    With ``q = 1/2 sum A_ab g_a g_b`` over all generators, ``A = -Q J``.
    """
    if not E.is_skew():
        raise WrongBidegree("only skew endomorphisms have a quadratic encoding")
    n = E.n
    A = -(E.Q @ pairing_matrix(n, E.Q.d))
    terms = {}
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            if A[a, b]:
                terms[(1 << a) | (1 << b)] = A[a, b]
    return Superfunction(n, terms)


# ---------------------------------------------------------------------------
# pre-Courant structures


@dataclass(frozen=True)
class PreCourant:
    L: LieAlgebra
    psi: Superfunction

    def __post_init__(self):
        if self.psi:
            self.psi.require(3, 0, "psi")

    @property
    def theta(self) -> Superfunction:
        return self.L.mu + self.psi

    def theta_theta(self) -> Superfunction:
        return big_bracket(self.theta, self.theta)


def dorfman(theta: Superfunction, u: Superfunction, v: Superfunction) -> Superfunction:
    """``[[u, v]] = {{u, theta}, v}``."""
    for w in (u, v):
        if w and w.total_degree() != 1:
            raise WrongBidegree("Dorfman bracket arguments must be sections")
    return big_bracket(big_bracket(u, theta), v)


def deformed_dorfman(theta: Superfunction, E: BigEndo, u, v) -> Superfunction:
    return dorfman(theta, E(u), v) + dorfman(theta, u, E(v)) - _apply(E, dorfman(theta, u, v))


def _apply(E: BigEndo, u: Superfunction) -> Superfunction:
    return E(u) if u else u


@dataclass
class PairWitness:
    """Values of a section-valued map on pairs of basis sections of E."""

    n: int
    values: dict[tuple[int, int], Superfunction]

    def is_zero(self) -> bool:
        return all(not v for v in self.values.values())

    def first_nonzero(self):
        for k in sorted(self.values):
            if self.values[k]:
                return k, self.values[k]
        return None


class DorfmanTable:
    """Structure tensor ``[[g_a, g_b]] = sum_c table[a][b][c] g_c`` of a function."""

    def __init__(self, theta: Superfunction):
        n = theta.n
        self.n = n
        m = 2 * n
        zero = [Scalar(0)] * m
        self.table = []
        for a in range(m):
            left = big_bracket(basis_section(n, a), theta)
            row = []
            for b in range(m):
                v = big_bracket(left, basis_section(n, b)) if left else left
                row.append(section_vector(v) if v else zero)
            self.table.append(row)

    def bracket(self, u: Sequence, v: Sequence) -> list[Scalar]:
        m = 2 * self.n
        out = [Scalar(0)] * m
        for a, ua in enumerate(u):
            if not ua:
                continue
            row = self.table[a]
            for b, vb in enumerate(v):
                if not vb:
                    continue
                w = ua * vb
                out = [o + w * t if t else o for o, t in zip(out, row[b])]
        return out

    def component_matrices(self) -> list[Matrix]:
        """``M_c[a][b]``: the ``g_c`` coefficient of ``[[g_a, g_b]]``."""
        m = 2 * self.n
        return [Matrix([[self.table[a][b][c] for b in range(m)] for a in range(m)]) for c in range(m)]


def _mix(Q: Matrix, mats: Sequence[Matrix]) -> list[Matrix]:
    """Apply ``Q`` to the section index: ``out_c = sum_c' Q[c][c'] M_c'``."""
    m = len(mats)
    size = mats[0].rows
    out = []
    for c in range(m):
        acc = [[Scalar(0)] * size for _ in range(size)]
        for cp in range(m):
            q = Q[c, cp]
            if not q:
                continue
            M = mats[cp].entries
            for a in range(size):
                row, src = acc[a], M[a]
                for b in range(size):
                    if src[b]:
                        row[b] = row[b] + q * src[b]
        out.append(Matrix(acc))
    return out


def _pairs_from_components(n: int, mats: Sequence[Matrix]) -> PairWitness:
    m = 2 * n
    return PairWitness(
        n, {(a, b): section(n, [mats[c][a, b] for c in range(m)]) for a in range(m) for b in range(m)}
    )


def courant_torsion(theta: Superfunction, E: BigEndo, table: DorfmanTable | None = None) -> PairWitness:
    """``[[QX, QY]] - Q([[X, Y]]_Q)`` on all ordered pairs of basis sections.

    Computed from the structure tensor by matrix products; see
    :func:`courant_torsion_direct` for the pairwise definition.
    """
    table = table or DorfmanTable(theta)
    Q = E.Q
    M = table.component_matrices()
    QT = Q.T
    both = [QT @ Mc @ Q for Mc in M]
    deformed = [QT @ Mc + Mc @ Q - Xc for Mc, Xc in zip(M, _mix(Q, M))]
    torsion = [b - x for b, x in zip(both, _mix(Q, deformed))]
    return _pairs_from_components(E.n, torsion)


def courant_torsion_direct(theta: Superfunction, E: BigEndo) -> PairWitness:
    n = E.n
    values = {}
    for a in range(2 * n):
        for b in range(2 * n):
            u, v = basis_section(n, a), basis_section(n, b)
            lhs = dorfman(theta, E(u), E(v))
            values[(a, b)] = lhs - _apply(E, deformed_dorfman(theta, E, u, v))
    return PairWitness(n, values)


def concomitant(theta: Superfunction, I: Superfunction, J: Superfunction) -> Superfunction:
    """``{J, {I, theta}} + {I, {J, theta}}``."""
    for q in (I, J):
        if q and q.total_degree() != 2:
            raise WrongBidegree("concomitant arguments must be quadratic encodings")
    return big_bracket(J, big_bracket(I, theta)) + big_bracket(I, big_bracket(J, theta))


def deformation(theta: Superfunction, *qs: Superfunction) -> Superfunction:
    """``theta_{q1, q2, ...} = {q_k, ... {q1, theta}}``."""
    out = theta
    for q in qs:
        out = big_bracket(q, out)
    return out


# ---------------------------------------------------------------------------
# the torsion relation for lifted endomorphisms


def _split(n: int, u: Superfunction) -> tuple[Superfunction, Superfunction]:
    vec_mask = (1 << n) - 1
    a = Superfunction(n, {m: c for m, c in u.terms.items() if m & vec_mask})
    return a, u - a


def torsion_relation_rhs(L: LieAlgebra, R: Matrix, u: Superfunction, v: Superfunction) -> Superfunction:
    """The right side of the identity expressing the torsion of ``N + (-N*)``.

    ``[[u, v]]_T + (N*)^2 [[X, b]] - [[X, (N*)^2 b]] + (N*)^2 [[a, Y]] - [[(N*)^2 a, Y]]``
    where ``u = X + a``, ``v = Y + b`` and ``T`` is the torsion of ``N`` as a
    superfunction.
    """
    n = L.n
    mu = L.mu
    T = torsion_superfunction(L, R)
    Z = Matrix.zeros(n, n, R.d)
    Nstar2 = BigEndo(Matrix.block([[Z, Z], [Z, (R.T @ R.T)]]))
    X, a = _split(n, u)
    Y, b = _split(n, v)
    out = dorfman(T, u, v)
    out = out + _apply(Nstar2, dorfman(mu, X, b)) - dorfman(mu, X, _apply(Nstar2, b))
    out = out + _apply(Nstar2, dorfman(mu, a, Y)) - dorfman(mu, _apply(Nstar2, a), Y)
    return out


@dataclass
class TorsionRelation:
    identity_holds: bool
    lifted_torsion_zero: bool
    torsion_zero: bool
    n_squared_scalar: bool
    failure: tuple | None

    @property
    def equivalence_holds(self) -> bool | None:
        """For ``N^2 = lambda id`` both torsions vanish together."""
        if not self.n_squared_scalar:
            return None
        return self.lifted_torsion_zero == self.torsion_zero


def torsion_relation_check(L: LieAlgebra, R: Matrix) -> TorsionRelation:
    """Both sides of the lifted-torsion identity on every pair of basis sections."""
    from .algebroid import nijenhuis_torsion_sections

    n = L.n
    m = 2 * n
    table = DorfmanTable(L.mu)
    lhs = courant_torsion(L.mu, BigEndo.diagonal(R), table)
    T = torsion_superfunction(L, R)
    t_table = DorfmanTable(T) if T else None
    S = R.T @ R.T  # (N*)^2 on the xi coordinates
    failure = None
    for (a, b), val in sorted(lhs.values.items()):
        rhs = list(t_table.table[a][b]) if t_table else [Scalar(0)] * m
        cross = None
        if a < n <= b:
            # (N*)^2 [[X, b]] - [[X, (N*)^2 b]]
            beta = [Scalar(0)] * n + S.column(b - n)
            cross = (a, beta, False)
        elif b < n <= a:
            alpha = [Scalar(0)] * n + S.column(a - n)
            cross = (b, alpha, True)
        if cross is not None:
            k, moved, swapped = cross
            base = table.table[a][b]
            rhs = [r + x for r, x in zip(rhs, [Scalar(0)] * n + S.apply(base[n:]))]
            unit = [Scalar(int(i == k)) for i in range(m)]
            other = table.bracket(moved, unit) if swapped else table.bracket(unit, moved)
            rhs = [r - x for r, x in zip(rhs, other)]
        if section_vector(val) != rhs:
            failure = (a, b)
            break
    sq = R @ R
    lam = sq[0, 0]
    return TorsionRelation(
        identity_holds=failure is None,
        lifted_torsion_zero=lhs.is_zero(),
        torsion_zero=nijenhuis_torsion_sections(L, R).is_zero(),
        n_squared_scalar=sq == Matrix.identity(n, R.d).scale(lam),
        failure=failure,
    )


def random_involution_type(n: int, rng: random.Random, lam: int = -1, d: int = 3) -> Matrix:
    """A conjugate ``P D P^{-1}`` with ``D^2 = lam id``, entries small integers."""
    while True:
        P = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], d)
        if P.rank() == n:
            break
    if lam == -1:
        if n % 2:
            raise DimensionMismatch("a square root of -id needs even dimension")
        blocks = [[0] * n for _ in range(n)]
        for k in range(0, n, 2):
            blocks[k][k + 1] = -1
            blocks[k + 1][k] = 1
        D = Matrix(blocks, d)
    else:
        signs = [rng.choice([1, -1]) for _ in range(n)]
        D = Matrix([[signs[i] if i == j else 0 for j in range(n)] for i in range(n)], d)
    return P @ D @ P.inverse()


# ---------------------------------------------------------------------------
# S_i and T_i


@dataclass
class CourantLift:
    S: tuple[BigEndo, BigEndo, BigEndo]
    T: tuple[BigEndo, BigEndo, BigEndo]
    S_enc: tuple[Superfunction, Superfunction, Superfunction]
    T_enc: tuple[Superfunction, Superfunction, Superfunction]
    checks: dict[str, object]


def s_and_t(inp) -> CourantLift:
    """``S_i = [[0, eps_i pi_i#], [omega_i b, 0]]`` and ``T_i = eps_{i-1} S_{i-1} S_{i+1}``."""
    from .hst import bivector_grams, flat_matrix, sharp_matrix, transition_morphisms

    n = inp.n
    e = inp.eps
    pis = bivector_grams(inp)
    Ns = transition_morphisms(inp)
    Z = Matrix.zeros(n)
    S = tuple(
        BigEndo(Matrix.block([[Z, sharp_matrix(pis[i]).scale(e[i])], [flat_matrix(inp.omegas[i]), Z]]))
        for i in range(3)
    )
    T = tuple((S[(i - 1) % 3] @ S[(i + 1) % 3]).scale(e[(i - 1) % 3]) for i in range(3))
    S_enc = tuple(s.encoding() for s in S)
    T_enc = tuple(t.encoding() for t in T)
    ident = Matrix.identity(2 * n)
    checks = {
        "S_squared": [(s @ s).Q == ident.scale(e[i]) for i, s in enumerate(S)],
        "S_anticommute": [
            ((S[i] @ S[j]).Q + (S[j] @ S[i]).Q).is_zero() for i, j in itertools.combinations(range(3), 2)
        ],
        "S_skew": [s.is_skew() for s in S],
        "T_is_lifted_N": [T[i] == BigEndo.diagonal(Ns[i]) for i in range(3)],
        "S_encoding": [
            S_enc[i] == from_gram_form(inp.omegas[i]) + from_gram_bivector(pis[i]).scale(e[i]) for i in range(3)
        ],
        "T_encoding": [T_enc[i] == from_endomorphism(Ns[i]) for i in range(3)],
    }
    return CourantLift(S, T, S_enc, T_enc, checks)


def psi_of(inp, k: int = 0) -> Superfunction:
    """``(eps_k / 2) [pi_k, pi_k]``."""
    from .hst import bivector_grams

    P = from_gram_bivector(bivector_grams(inp)[k])
    return schouten(inp.L, P, P).scale(HALF * inp.eps[k])


def hs_on_courant_check(inp, psi: Superfunction | None = None, lift: CourantLift | None = None) -> dict[str, object]:
    """The S-triplet axioms on ``(A + A*, mu + psi)``.

    ``psi`` defaults to the obstruction ``(eps_1 / 2) [pi_1, pi_1]``.
    """
    lift = lift or s_and_t(inp)
    psi = psi_of(inp) if psi is None else psi
    theta = inp.L.mu + psi
    e = inp.eps
    deformed = [deformation(theta, q, q) == theta.scale(e[i]) for i, q in enumerate(lift.S_enc)]
    result = {
        "S_squared": lift.checks["S_squared"],
        "S_anticommute": lift.checks["S_anticommute"],
        "theta_deformation": deformed,
    }
    result["hypersymplectic"] = all(all(v) for v in result.values())
    return result


def suite_checks(inp, rep, duals: dict) -> dict[str, object]:
    """Courant-level items of the theorem suite for a passing input."""
    from .algebroid import dual_structure

    L = inp.L
    e = inp.eps
    lift = s_and_t(inp)
    psi = psi_of(inp)
    theta = L.mu + psi
    pairs = list(itertools.combinations(range(3), 2))
    hs = hs_on_courant_check(inp, psi, lift)
    omega = [inp.form(i) for i in range(3)]
    out = {
        "lift_S_squared": lift.checks["S_squared"],
        "lift_S_anticommute": lift.checks["S_anticommute"],
        "lift_T_block_form": lift.checks["T_is_lifted_N"],
        "lift_S_encoding": lift.checks["S_encoding"],
        "theta_S_deformation": hs["theta_deformation"],
        "theta_T_deformation": [deformation(theta, q, q) == theta.scale(e[i]) for i, q in enumerate(lift.T_enc)],
        "concomitant_S_zero": [concomitant(theta, lift.S_enc[i], lift.S_enc[j]).is_zero() for i, j in pairs],
        "concomitant_T_zero": [concomitant(theta, lift.T_enc[i], lift.T_enc[j]).is_zero() for i, j in pairs],
        "concomitant_S_trivector_zero": [
            concomitant(theta, lift.S_enc[i], lift.S_enc[j]).component(3, 0).is_zero() for i, j in pairs
        ],
        "concomitant_form_T_zero": [
            concomitant(L.mu, omega[i], lift.T_enc[j]).component(0, 3).is_zero()
            for i in range(3)
            for j in range(3)
            if i != j
        ],
        "theta_T_single": [
            deformation(theta, lift.T_enc[i])
            == big_bracket(lift.T_enc[i], L.mu) + big_bracket(lift.T_enc[i], psi)
            for i in range(3)
        ],
    }
    dual_route, mu_omega_bracket = [], []
    for i in range(3):
        gamma = duals[i].gamma if i in duals else dual_structure(L, inp.omegas[i], rep.pis[i]).gamma
        mu_omega = big_bracket(omega[i], L.mu)
        dual_route.append(deformation(theta, lift.S_enc[i]) == gamma.scale(e[i]) + mu_omega)
        # mu_omega carries no eps dependence, and neither does this bracket
        mu_omega_bracket.append(mu_omega == big_bracket(big_bracket(omega[i], gamma), omega[i]).scale(HALF))
    out["theta_S_single"] = dual_route
    out["form_deformation_dual_bracket"] = mu_omega_bracket
    return out
