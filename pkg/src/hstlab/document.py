"""Input documents and the bundled examples.

A document is JSON::

    {"field": {"d": 3},
     "algebra": {"labels": [...], "brackets": [[i, j, k, "scalar"], ...]},
     "forms": [G1, G2, G3],          # row-major lists of scalar strings
     "eps": [-1, -1, -1],
     "options": {"strict": true, "suite": "full"}}

Bracket entries ``[i, j, k, c]`` mean ``c_{ij}^k = c`` with 0-based indices;
the partner ``c_{ji}^k = -c`` is filled in automatically and listing the
same ``(i, j, k)`` twice (in either order) is an error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .algebroid import LieAlgebra, make_algebra
from .errors import ParseError, UnknownExample
from .hst import HstInput
from .matrix import Matrix
from .scalars import DEFAULT_D, is_squarefree, parse_scalar

EXAMPLES = ("r8", "su3", "s3t5")


@dataclass
class Document:
    inp: HstInput
    strict: bool
    suite: str
    raw: dict

    @property
    def L(self) -> LieAlgebra:
        return self.inp.L


def _field(raw: dict, key: str, where: str = "document"):
    if key not in raw:
        raise ParseError(f"{where}: missing field {key!r}")
    return raw[key]


def parse_algebra(raw: dict, d: int = DEFAULT_D) -> LieAlgebra:
    labels = _field(raw, "labels", "algebra")
    if not isinstance(labels, list) or not all(isinstance(s, str) and s for s in labels):
        raise ParseError("algebra.labels must be a list of non-empty strings")
    if len(set(labels)) != len(labels):
        raise ParseError("algebra.labels contains duplicates")
    n = len(labels)
    c = {}
    seen = set()
    for pos, entry in enumerate(raw.get("brackets", [])):
        if not (isinstance(entry, list) and len(entry) == 4):
            raise ParseError(f"bracket entry {pos} must be [i, j, k, scalar]")
        i, j, k, val = entry
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j, k)):
            raise ParseError(f"bracket entry {pos}: indices must be integers")
        if not all(0 <= t < n for t in (i, j, k)):
            raise ParseError(f"bracket entry {pos}: index out of range 0..{n - 1}")
        key = (min(i, j), max(i, j), k)
        if key in seen:
            raise ParseError(f"bracket entry {pos}: duplicate entry for ({i}, {j}, {k})")
        seen.add(key)
        try:
            s = parse_scalar(str(val), d)
        except ParseError as exc:
            raise ParseError(f"bracket entry {pos}: {exc}") from None
        c[(i, j, k)] = s
    return make_algebra(labels, c, d)


def parse_matrix(rows, n: int, d: int, name: str) -> Matrix:
    if not (isinstance(rows, list) and len(rows) == n and all(isinstance(r, list) and len(r) == n for r in rows)):
        raise ParseError(f"{name} must be a {n}x{n} list of rows")
    out = []
    for r, row in enumerate(rows):
        vals = []
        for c, x in enumerate(row):
            try:
                vals.append(parse_scalar(str(x), d))
            except ParseError as exc:
                raise ParseError(f"{name}[{r}][{c}]: {exc}") from None
        out.append(vals)
    return Matrix(out, d)


def parse_document(raw: dict) -> Document:
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")
    d = raw.get("field", {}).get("d", DEFAULT_D)
    if not isinstance(d, int) or not is_squarefree(d):
        raise ParseError(f"field.d must be a square-free integer >= 2, got {d!r}")
    L = parse_algebra(_field(raw, "algebra"), d)
    forms = _field(raw, "forms")
    if not (isinstance(forms, list) and len(forms) == 3):
        raise ParseError("forms must list exactly three matrices")
    grams = tuple(parse_matrix(f, L.n, d, f"forms[{i}]") for i, f in enumerate(forms))
    eps = raw.get("eps", [-1, -1, -1])
    if not (isinstance(eps, list) and len(eps) == 3 and all(e in (1, -1) for e in eps)):
        raise ParseError("eps must be three entries each +1 or -1")
    opts = raw.get("options", {})
    suite = opts.get("suite", "basic")
    if suite not in ("basic", "full"):
        raise ParseError("options.suite must be 'basic' or 'full'")
    return Document(HstInput(L, grams, tuple(eps)), bool(opts.get("strict", True)), suite, raw)


def parse_text(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", text, exc.pos, exc.lineno, exc.colno) from None
    return parse_document(raw)


def load(path: str | Path) -> Document:
    return parse_text(Path(path).read_text())


def example_path(name: str):
    if name not in EXAMPLES:
        raise UnknownExample(f"unknown example {name!r}; choose one of {', '.join(EXAMPLES)}")
    return resources.files("hstlab") / "data" / f"{name}.json"


def example_raw(name: str) -> dict:
    return json.loads(example_path(name).read_text())


def load_example(name: str) -> Document:
    return parse_document(example_raw(name))
