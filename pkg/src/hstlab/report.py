"""JSON and text renderings of an :class:`~hstlab.hst.HstReport`."""

from __future__ import annotations

from typing import Any

from .hst import HstReport
from .matrix import Matrix
from .scalars import format_scalar
from .superalgebra import Superfunction

SCHEMA_VERSION = 1


def terms(f: Superfunction | None, labels) -> list | None:
    if f is None:
        return None
    return [[names, coeff] for names, coeff in f.to_terms(labels)]


def matrix(M: Matrix | None) -> list | None:
    return None if M is None else M.to_strings()


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return bool(v) if isinstance(v, bool) else v


def to_dict(rep: HstReport, timing: float | None = None) -> dict[str, Any]:
    inp = rep.inp
    labels = inp.L.labels
    out: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "verdict": rep.verdict_name,
        "labels": labels,
        "eps": list(inp.eps),
        "axioms": {
            "N_squared": list(rep.n_squared),
            "pullback_equal": rep.pullback_equal,
            "jacobi": rep.jacobi,
            "torsion_free": rep.torsion_free,
        },
        "N": [matrix(R) for R in rep.Ns],
        "pi": [matrix(P) for P in rep.pis],
        "d_omega": [terms(f, labels) for f in rep.domegas],
        "pullbacks": [terms(f, labels) for f in rep.pullbacks],
        "H": terms(rep.H, labels),
        "g": None,
        "g_inv": None,
        "psi": None,
        "witnesses": [
            {"kind": w.kind, "index": w.index, "basis": [labels[b] for b in w.basis], "values": [format_scalar(v) for v in w.values]}
            for w in rep.witnesses
        ],
    }
    if rep.metric is not None:
        m = rep.metric
        out["g"] = matrix(m.g)
        out["g_inv"] = matrix(m.g_inv)
        out["metric"] = {
            "circular": m.circular,
            "symmetric": m.symmetric,
            "parity": m.parity,
            "compatible": m.compatible,
            "kahler": m.kahler,
            "n_pi": m.n_pi,
            "quaternionic": m.quaternionic,
            "h_relation": m.h_relation,
        }
    if rep.contravariant is not None:
        c = rep.contravariant
        out["psi"] = terms(c.psi, labels)
        out["contravariant"] = {
            "verdict": c.verdict,
            "signed_equal": c.signed_equal,
            "twisted_poisson": c.twisted_poisson,
            "psi_from_h": c.psi_from_h,
        }
    if rep.suite is not None:
        courant_keys = [k for k in rep.suite if k.startswith(("lift_", "theta_", "concomitant_S", "concomitant_T", "form_deformation"))]
        out["suite"] = {k: _plain(v) for k, v in rep.suite.items() if k not in courant_keys}
        out["courant"] = {k: _plain(rep.suite[k]) for k in courant_keys}
    else:
        out["suite"] = None
    if timing is not None:
        out["timing_seconds"] = round(timing, 3)
    return out


def _flag(v) -> str:
    if isinstance(v, list):
        return "pass" if all(v) else "FAIL " + "".join("1" if x else "0" for x in v)
    if v is None:
        return "n/a"
    return "pass" if v else "FAIL"


def to_text(rep: HstReport, name: str | None = None) -> str:
    inp = rep.inp
    labels = inp.L.labels
    lines = []
    head = f"{name}: " if name else ""
    lines.append(f"{head}verdict {rep.verdict_name}  eps={list(inp.eps)}  n={inp.n}")
    lines.append(f"  Jacobi identity: {_flag(rep.jacobi)}")
    lines.append(f"  N_i^2 = eps_i id: {_flag(rep.n_squared)}")
    lines.append(f"  signed pullbacks equal: {_flag(rep.pullback_equal)}")
    for i, f in enumerate(rep.domegas):
        lines.append(f"  d omega_{i + 1} = {f.format(labels)}")
    if rep.verdict:
        lines.append(f"  common pullback d omega_i(N_i.,N_i.,N_i.) = {rep.pullbacks[0].format(labels)}")
        lines.append(f"  H = {rep.H.format(labels)}")
        if rep.torsion_free:
            lines.append("  all forms closed: torsion-free hypersymplectic")
    for w in rep.witnesses:
        lines.append(f"  witness: {w.describe(labels)}")
    if rep.metric is not None:
        g = rep.metric.g
        if g == Matrix.identity(inp.n).scale(-1):
            lines.append("  g = -id")
        elif g.is_identity():
            lines.append("  g = id")
        else:
            lines.append("  g =")
            lines.extend("    " + " ".join(f"{x:>6}" for x in row) for row in g.to_strings())
        lines.append(f"  metric identities: {_flag(rep.metric.ok)}")
    if rep.contravariant is not None and rep.contravariant.psi is not None:
        lines.append(f"  psi = {rep.contravariant.psi.format(labels)}")
    if rep.suite is not None:
        lines.append("  theorem suite:")
        for k, v in rep.suite.items():
            lines.append(f"    {k}: {_flag(v)}")
    return "\n".join(lines)
