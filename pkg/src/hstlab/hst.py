"""Hypersymplectic structures with torsion (HST) on a Lie algebra.

A triplet of non-degenerate 2-forms ``omega_1, omega_2, omega_3`` with signs
``eps`` is checked through its transition morphisms

    N_i = pi_{i-1}# o omega_{i+1}b,    R_{N_i} = G_{i-1}^{-1} G_{i+1}

(indices mod 3), which must satisfy ``N_i^2 = eps_i id`` and

    eps_2 N_1 d omega_1 = eps_3 N_2 d omega_2 = eps_1 N_3 d omega_3.

Gram matrices ``G`` carry ``omega(e_i, e_j) = G[i][j]``; endomorphisms are
column matrices, ``N e_j = sum_i R[i][j] e_i``, and compose by matrix
product.  Indices in this module are 0-based, so ``i - 1`` means
``(i - 1) % 3``.
"""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebroid import (
    LieAlgebra,
    ce_differential,
    deform,
    dual_structure,
    fn_bracket,
    nijenhuis_torsion,
    schouten,
)
from .errors import (
    AxiomFailure,
    DimensionMismatch,
    EpsilonProductNotMinusOne,
    HstError,
    JacobiRequired,
    NotAntisymmetric,
    NotHst,
    Singular,
)
from .matrix import Matrix
from .scalars import Scalar
from .superalgebra import (
    Superfunction,
    big_bracket,
    from_endomorphism,
    from_gram_bivector,
    from_gram_form,
    pullback_by_sharp,
    pullback_form,
    swap_generators,
    to_endomorphism,
    to_gram,
)

log = logging.getLogger(__name__)

HALF = Scalar(Fraction(1, 2))


def _prev(i: int) -> int:
    return (i - 1) % 3


def _next(i: int) -> int:
    return (i + 1) % 3


# ---------------------------------------------------------------------------
# input


@dataclass(frozen=True)
class HstInput:
    L: LieAlgebra
    omegas: tuple[Matrix, Matrix, Matrix]
    eps: tuple[int, int, int]

    def __post_init__(self):
        if len(self.omegas) != 3 or len(self.eps) != 3:
            raise DimensionMismatch("exactly three forms and three signs are required")
        object.__setattr__(self, "omegas", tuple(self.omegas))
        object.__setattr__(self, "eps", tuple(int(e) for e in self.eps))
        for e in self.eps:
            if e not in (1, -1):
                raise HstError(f"signs must be +1 or -1, got {e}")
        for idx, G in enumerate(self.omegas):
            if G.shape != (self.L.n, self.L.n):
                raise DimensionMismatch(f"form {idx + 1} has shape {G.shape}, expected {self.L.n}x{self.L.n}")
            if not G.is_antisymmetric():
                raise NotAntisymmetric(f"form {idx + 1} is not antisymmetric")

    @property
    def n(self) -> int:
        return self.L.n

    def form(self, i: int) -> Superfunction:
        return from_gram_form(self.omegas[i])

    def with_algebra(self, L: LieAlgebra) -> HstInput:
        return HstInput(L, self.omegas, self.eps)


def bivector_grams(inp: HstInput) -> tuple[Matrix, Matrix, Matrix]:
    """Gram matrices of the inverse bivectors, ``G_{pi_i} = G_i^{-1}``."""
    out = []
    for idx, G in enumerate(inp.omegas):
        try:
            out.append(G.inverse())
        except Singular as exc:
            raise Singular(f"form {idx + 1} is degenerate", kernel=exc.kernel, index=idx) from None
    return tuple(out)


def flat_matrix(G: Matrix) -> Matrix:
    """Column matrix of ``omega b`` under the pairing ``<omega b X, Y> = omega(X, Y)``."""
    return G.transpose()


def sharp_matrix(P: Matrix) -> Matrix:
    """Column matrix of ``pi #`` under ``<beta, pi# alpha> = pi(alpha, beta)``."""
    return P.transpose()


def transition_morphisms(inp: HstInput) -> tuple[Matrix, Matrix, Matrix]:
    inv = bivector_grams(inp)
    return tuple(inv[_prev(i)] @ inp.omegas[_next(i)] for i in range(3))


def transition_morphisms_bracket(inp: HstInput) -> tuple[Matrix, Matrix, Matrix]:
    """The same maps through ``N_{i+1} = -{pi_i, omega_{i-1}}``."""
    inv = bivector_grams(inp)
    out = [None, None, None]
    for i in range(3):
        enc = -big_bracket(from_gram_bivector(inv[i]), inp.form(_prev(i)))
        out[_next(i)] = to_endomorphism(enc) if enc else Matrix.zeros(inp.n)
    return tuple(out)


# ---------------------------------------------------------------------------
# witnesses


def first_difference(forms: Sequence[Superfunction], n: int, degree: int):
    """First basis tuple on which the given forms do not all agree."""
    masks = set()
    for f in forms:
        masks.update(f.terms)
    for idx in itertools.combinations(range(n), degree):
        mask = 0
        for i in idx:
            mask |= 1 << (n + i)
        if mask not in masks:
            continue
        values = [f.coefficient(mask) for f in forms]
        if any(v != values[0] for v in values):
            return idx, values
    return None


def _n_squared_witness(R: Matrix, eps: int):
    n = R.rows
    sq = R @ R
    for j in range(n):
        col = sq.column(j)
        want = [Scalar(eps if k == j else 0) for k in range(n)]
        if col != want:
            return j, col
    return None


@dataclass
class Witness:
    kind: str
    index: int | None
    basis: tuple
    values: list

    def describe(self, labels: Sequence[str]) -> str:
        names = ",".join(labels[b] for b in self.basis)
        vals = ", ".join(str(v) for v in self.values)
        where = f" (index {self.index + 1})" if self.index is not None else ""
        return f"{self.kind}{where} at ({names}): {vals}"


# ---------------------------------------------------------------------------
# the check


@dataclass
class HstReport:
    inp: HstInput
    pis: tuple[Matrix, Matrix, Matrix]
    Ns: tuple[Matrix, Matrix, Matrix]
    n_squared: list[bool]
    domegas: list[Superfunction]
    pullbacks: list[Superfunction]
    pullback_equal: bool
    witnesses: list[Witness]
    H: Superfunction | None
    torsion_free: bool
    jacobi: bool
    metric: MetricReport | None = None
    contravariant: ContravariantReport | None = None
    suite: dict | None = None
    courant: dict | None = None

    @property
    def verdict(self) -> bool:
        return all(self.n_squared) and self.pullback_equal

    @property
    def verdict_name(self) -> str:
        return "hst" if self.verdict else "not-hst"

    @property
    def common_pullback(self) -> Superfunction | None:
        """``d omega_i(N_i., N_i., N_i.)``, printed without the sign ``eps_{i+1}``."""
        return self.pullbacks[0] if self.verdict else None


def check_hst(inp: HstInput, strict: bool = True) -> HstReport:
    """Decide both defining conditions exactly and record witnesses."""
    L = inp.L
    if strict and not L.is_lie:
        raise JacobiRequired(
            "the bracket fails the Jacobi identity; use lab mode to run anyway",
            witness=L.jacobi_witness,
        )
    pis = bivector_grams(inp)
    Ns = transition_morphisms(inp)
    eps = inp.eps
    witnesses = []
    n_sq = []
    for i, R in enumerate(Ns):
        w = _n_squared_witness(R, eps[i])
        n_sq.append(w is None)
        if w is not None:
            witnesses.append(Witness("N_squared", i, (w[0],), w[1]))
    domegas = [ce_differential(L, inp.form(i)) for i in range(3)]
    pullbacks = [pullback_form(domegas[i], Ns[i]) for i in range(3)]
    signed = [pullbacks[i].scale(eps[_next(i)]) for i in range(3)]
    diff = first_difference(signed, inp.n, 3)
    equal = diff is None
    if not equal:
        witnesses.append(Witness("pullback", None, diff[0], diff[1]))
    verdict = all(n_sq) and equal
    return HstReport(
        inp=inp,
        pis=pis,
        Ns=Ns,
        n_squared=n_sq,
        domegas=domegas,
        pullbacks=pullbacks,
        pullback_equal=equal,
        witnesses=witnesses,
        H=signed[0] if verdict else None,
        torsion_free=all(not d for d in domegas),
        jacobi=L.is_lie,
    )


# ---------------------------------------------------------------------------
# pseudo-metric


@dataclass
class MetricReport:
    g: Matrix
    g_inv: Matrix
    circular: bool
    symmetric: bool
    parity: bool
    compatible: list[bool]
    kahler: list[bool]
    n_pi: list[bool]
    quaternionic: bool
    h_relation: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.circular
            and self.parity
            and all(self.compatible)
            and all(self.kahler)
            and all(self.n_pi)
            and self.quaternionic
            and self.h_relation is not False
        )


def metric_matrix(inp: HstInput, i: int = 0) -> Matrix:
    """``eps_{i-1} eps_{i+1} G_{i-1} G_i^{-1} G_{i+1}``.

    For ``i = 0`` this is ``eps_3 eps_2 G_3 G_1^{-1} G_2``.  The sign is the
    one under which the pseudo-metric of the nilpotent example is ``-id``;
    it equals ``g(e_j, e_k)`` as entry ``[j][k]``.
    """
    G = inp.omegas
    e = inp.eps
    return (G[_prev(i)] @ G[i].inverse() @ G[_next(i)]).scale(e[_prev(i)] * e[_next(i)])


def metric(inp: HstInput, report: HstReport | None = None) -> MetricReport:
    e = inp.eps
    gs = [metric_matrix(inp, i) for i in range(3)]
    g = gs[0]
    Ns = report.Ns if report else transition_morphisms(inp)
    pis = report.pis if report else bivector_grams(inp)
    g_inv = g.inverse()
    sign = -e[0] * e[1] * e[2]
    compatible = [
        (R.T @ g @ R) == g.scale(e[_prev(i)] * e[_next(i)]) for i, R in enumerate(Ns)
    ]
    kahler = [(inp.omegas[i] @ Ns[i]) == g.scale(e[_prev(i)]) for i in range(3)]
    n_pi = [(Ns[i] @ pis[i]) == g_inv.scale(e[_prev(i)] * e[i]) for i in range(3)]
    quaternionic = all(
        (Ns[i] @ Ns[_next(i)]) == Ns[_prev(i)].scale(e[i] * e[_next(i)])
        and (Ns[_next(i)] @ Ns[i]) == -(Ns[i] @ Ns[_next(i)])
        for i in range(3)
    )
    h_relation = None
    if report is not None and report.verdict:
        h_relation = all(
            report.domegas[i] == pullback_form(report.H, Ns[i]).scale(e[i] * e[_next(i)])
            for i in range(3)
        )
    return MetricReport(
        g=g,
        g_inv=g_inv,
        circular=gs[0] == gs[1] == gs[2],
        symmetric=g.is_symmetric(),
        parity=g.T == g.scale(sign),
        compatible=compatible,
        kahler=kahler,
        n_pi=n_pi,
        quaternionic=quaternionic,
        h_relation=h_relation,
    )


# ---------------------------------------------------------------------------
# contravariant characterization


@dataclass
class ContravariantReport:
    pi_pi: list[Superfunction]
    signed_equal: bool
    n_squared: list[bool]
    twisted_poisson: list[bool]
    psi: Superfunction | None
    psi_from_h: bool | None
    witness: tuple | None

    @property
    def verdict(self) -> bool:
        return all(self.n_squared) and self.signed_equal


def twisted_poisson_residual(L: LieAlgebra, G: Matrix) -> Superfunction:
    """``[pi, pi] - 2 d omega(pi#., pi#., pi#.)`` for ``pi`` inverse to ``omega``."""
    P = G.inverse()
    pp = schouten(L, from_gram_bivector(P), from_gram_bivector(P))
    d_omega = ce_differential(L, from_gram_form(G))
    return pp - pullback_by_sharp(d_omega, sharp_matrix(P)).scale(2)


def contravariant_check(inp: HstInput, report: HstReport | None = None) -> ContravariantReport:
    L = inp.L
    e = inp.eps
    pis = report.pis if report else bivector_grams(inp)
    Ns = report.Ns if report else transition_morphisms(inp)
    n_sq = [_n_squared_witness(R, e[i]) is None for i, R in enumerate(Ns)]
    pp = [schouten(L, from_gram_bivector(P), from_gram_bivector(P)) for P in pis]
    signed = [pp[i].scale(e[i]) for i in range(3)]
    diff = _first_difference_multivector(signed, inp.n)
    twisted = [twisted_poisson_residual(L, G).is_zero() for G in inp.omegas]
    psi = None
    psi_from_h = None
    if diff is None:
        psi = signed[0].scale(HALF)
        if report is not None and report.verdict and e[0] * e[1] * e[2] == -1:
            # psi = eps1 eps2 eps3 H((g^-1)#., ...), with the pairing-literal sharp
            g_inv = metric_matrix(inp).inverse()
            via_h = pullback_by_sharp(report.H, -g_inv).scale(e[0] * e[1] * e[2])
            psi_from_h = via_h == psi
    return ContravariantReport(pp, diff is None, n_sq, twisted, psi, psi_from_h, diff)


def _first_difference_multivector(vals: Sequence[Superfunction], n: int):
    masks = set()
    for f in vals:
        masks.update(f.terms)
    for mask in sorted(masks):
        cs = [f.coefficient(mask) for f in vals]
        if any(c != cs[0] for c in cs):
            return tuple(i for i in range(n) if mask >> i & 1), cs
    return None


# ---------------------------------------------------------------------------
# hyperkaehler structures with torsion


@dataclass(frozen=True)
class HktStructure:
    g: Matrix
    I: tuple[Matrix, Matrix, Matrix]
    eps: tuple[int, int, int]


def _require_product(eps):
    if eps[0] * eps[1] * eps[2] != -1:
        raise EpsilonProductNotMinusOne(f"eps product must be -1, got {eps}")


def hkt_from_hst(inp: HstInput, strict: bool = True) -> HktStructure:
    _require_product(inp.eps)
    rep = check_hst(inp, strict=strict)
    if not rep.verdict:
        raise NotHst("input is not a hypersymplectic structure with torsion", report=rep)
    return HktStructure(metric_matrix(inp), rep.Ns, inp.eps)


def kahler_forms(g: Matrix, I: Sequence[Matrix], eps: Sequence[int]) -> tuple[Matrix, Matrix, Matrix]:
    """``omega_i b = eps_i eps_{i-1} g b o I_i`` as Gram matrices."""
    return tuple((g @ I[i]).scale(eps[i] * eps[_prev(i)]) for i in range(3))


def hst_from_hkt(L: LieAlgebra, g: Matrix, I: Sequence[Matrix], eps: Sequence[int]) -> HstInput:
    """Kaehler forms of a quadruple after checking axioms i) to v)."""
    eps = tuple(eps)
    _require_product(eps)
    n = L.n
    if not g.is_symmetric():
        raise AxiomFailure("i", "g is not symmetric", witness=_asym_witness(g))
    try:
        g.inverse()
    except Singular as exc:
        raise AxiomFailure("i", "g is degenerate", witness=exc.kernel) from None
    for i, R in enumerate(I):
        w = _n_squared_witness(R, eps[i])
        if w is not None:
            raise AxiomFailure("ii", f"I_{i + 1}^2 != eps_{i + 1} id", witness=w)
    if I[2] != (I[0] @ I[1]).scale(eps[0] * eps[1]):
        raise AxiomFailure("iii", "I_3 != eps_1 eps_2 I_1 I_2", witness=_diff_entry(I[2], (I[0] @ I[1]).scale(eps[0] * eps[1])))
    for i, R in enumerate(I):
        lhs, rhs = R.T @ g @ R, g.scale(eps[_prev(i)] * eps[_next(i)])
        if lhs != rhs:
            raise AxiomFailure("iv", f"I_{i + 1} is not compatible with g", witness=_diff_entry(lhs, rhs))
    omegas = kahler_forms(g, I, eps)
    for idx, G in enumerate(omegas):
        if not G.is_antisymmetric():
            raise AxiomFailure("iv", f"Kaehler form {idx + 1} is not antisymmetric", witness=_antisym_witness(G))
    d = [ce_differential(L, from_gram_form(G)) for G in omegas]
    signed = [pullback_form(d[i], I[i]).scale(eps[_next(i)]) for i in range(3)]
    diff = first_difference(signed, n, 3)
    if diff is not None:
        raise AxiomFailure("v", "torsion condition fails", witness=diff)
    return HstInput(L, omegas, eps)


def _asym_witness(G: Matrix):
    """First entry pair breaking symmetry."""
    return next(((i, j) for i in range(G.rows) for j in range(i, G.cols) if G[i, j] != G[j, i]), None)


def _antisym_witness(G: Matrix):
    return next(((i, j) for i in range(G.rows) for j in range(i, G.cols) if G[i, j] != -G[j, i]), None)


def _diff_entry(A: Matrix, B: Matrix):
    for i in range(A.rows):
        for j in range(A.cols):
            if A[i, j] != B[i, j]:
                return (i, j, A[i, j], B[i, j])
    return None


# ---------------------------------------------------------------------------
# theorem suite


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HSTLAB_THREADS", "1")))
    except ValueError:
        return 1


def _run_items(items: dict[str, Callable[[], object]]) -> dict[str, object]:
    workers = _threads()
    if workers == 1:
        return {k: f() for k, f in items.items()}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {k: pool.submit(f) for k, f in items.items()}
        return {k: futures[k].result() for k in items}


def dual_input(inp: HstInput, i: int, gamma: Superfunction) -> HstInput:
    """The bivectors as 2-forms on A* with structure ``eps_i gamma^{pi_i}``.

    The generators e and xi are exchanged so that A* becomes the base
    algebra and each bivector Gram ``G_j^{-1}`` becomes a form Gram.
    """
    mu_dual = swap_generators(gamma.scale(inp.eps[i]))
    labels = [f"{lab}*" for lab in inp.L.labels]
    L_dual = LieAlgebra.from_mu(mu_dual, labels, inp.L.d)
    grams = tuple(to_gram(swap_generators(from_gram_bivector(P))) for P in bivector_grams(inp))
    return HstInput(L_dual, grams, inp.eps)


def theorem_suite(inp: HstInput, report: HstReport | None = None, full: bool = True) -> dict[str, object]:
    """Every compatibility and deformation result, checked exactly.

    Returns a flat mapping from check name to bool (or a list of bools, one
    per index or pair).  Raises :class:`NotHst` when the input fails.
    """
    from . import courant

    rep = report or check_hst(inp)
    if not rep.verdict:
        raise NotHst("theorem suite requires a hypersymplectic structure with torsion", report=rep)
    L = inp.L
    pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
    N_enc = [from_endomorphism(R) for R in rep.Ns]
    omega = [inp.form(i) for i in range(3)]
    pi = [from_gram_bivector(P) for P in rep.pis]

    def torsion():
        return [nijenhuis_torsion(L, R).is_zero() for R in rep.Ns]

    def fn():
        return [fn_bracket(L, rep.Ns[i], rep.Ns[j]).is_zero() for i, j in pairs]

    def pi_pairs():
        return [schouten(L, pi[i], pi[j]).is_zero() for i, j in pairs]

    def contravariant():
        c = rep.contravariant or contravariant_check(inp, rep)
        return c.signed_equal

    def omega_n():
        return [
            (big_bracket(omega[i], big_bracket(N_enc[j], L.mu)) + big_bracket(N_enc[j], big_bracket(omega[i], L.mu))).is_zero()
            for i, j in pairs
        ]

    def n_pi():
        return [big_bracket(N_enc[i], pi[i]).is_zero() for i in range(3)]

    def deformed():
        out = []
        for R in rep.Ns:
            Ld = deform(L, R)
            out.append(Ld.is_lie and check_hst(inp.with_algebra(Ld)).verdict)
        return out

    duals = {}

    def dual_lie():
        out = []
        for i in range(3):
            ds = dual_structure(L, inp.omegas[i], rep.pis[i])
            duals[i] = ds
            out.append(ds.is_lie and all(ds.checks.values()))
        return out

    def dual_hst():
        out = []
        for i in range(3):
            ds = duals.get(i) or dual_structure(L, inp.omegas[i], rep.pis[i])
            out.append(check_hst(dual_input(inp, i, ds.gamma)).verdict)
        return out

    items = {
        "nijenhuis_torsion_zero": torsion,
        "fn_brackets_zero": fn,
        "bivector_brackets_zero": pi_pairs,
        "signed_self_brackets_equal": contravariant,
        "form_morphism_concomitant_zero": omega_n,
        "morphism_bivector_bracket_zero": n_pi,
        "hst_on_deformed_algebras": deformed,
    }
    results = _run_items(items)
    # the dual checks share cached structures, so they run in order
    results["dual_structures_lie"] = dual_lie()
    if full:
        results["dual_hst"] = dual_hst()
        results.update(courant.suite_checks(inp, rep, {i: duals[i] for i in duals}))
    return results


def suite_passed(results: dict[str, object]) -> bool:
    def ok(v):
        return all(v) if isinstance(v, list) else bool(v)

    return all(ok(v) for v in results.values())


def full_report(inp: HstInput, strict: bool = True, suite: str = "full") -> HstReport:
    """Check, metric, contravariant form, and (if it passes) the suite."""
    rep = check_hst(inp, strict=strict)
    if rep.verdict:
        rep.metric = metric(inp, rep)
    rep.contravariant = contravariant_check(inp, rep)
    if rep.verdict and rep.jacobi:
        rep.suite = theorem_suite(inp, rep, full=(suite == "full"))
    return rep
