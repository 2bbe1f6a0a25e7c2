"""Exact verification of hypersymplectic structures with torsion on Lie algebras."""

import logging

from .scalars import Scalar, parse_scalar, format_scalar
from .matrix import Matrix
from .superalgebra import Superfunction, big_bracket
from .algebroid import LieAlgebra, make_algebra
from .hst import HstInput, check_hst, full_report, theorem_suite
from .document import load, load_example

__all__ = [
    "Scalar",
    "parse_scalar",
    "format_scalar",
    "Matrix",
    "Superfunction",
    "big_bracket",
    "LieAlgebra",
    "make_algebra",
    "HstInput",
    "check_hst",
    "full_report",
    "theorem_suite",
    "load",
    "load_example",
]

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
