"""Exact computations with Rota-Baxter systems, associative Yang-Baxter pairs,
covariant bialgebras and Jackson q-calculus over Q, Q(q) and F_p."""

from .algebra import (
    Algebra,
    AlgebraMorphism,
    Operator,
    annihilators,
    builtin_algebra,
    check_associative,
    check_morphism,
    unital_extension,
)
from .fields import GF, QQ, QQ_q, parse_scalar
from .report import PreconditionError, Report
from .rbsystem import RBSystem, check_rb_operator, check_rb_system, system_suite
from .tensor import Tensor2, Tensor3, TensorMap
from .ybpair import YBPair, check_yb_pair, matrix_unit_pair, rb_from_pair

__all__ = [
    "Algebra", "AlgebraMorphism", "Operator", "annihilators", "builtin_algebra",
    "check_associative", "check_morphism", "unital_extension",
    "GF", "QQ", "QQ_q", "parse_scalar",
    "PreconditionError", "Report",
    "RBSystem", "check_rb_operator", "check_rb_system", "system_suite",
    "Tensor2", "Tensor3", "TensorMap",
    "YBPair", "check_yb_pair", "matrix_unit_pair", "rb_from_pair",
]
__version__ = "0.1.0"
