# Momentum-space representations: coefficient field, operators, spin blocks and realizations
from .builders import (REALIZATIONS, Representation, bracket_checks, build_rep, casimir_eigenvalue,
                       casimir_values, check_rep, substitute_rep)
from .coefficients import CoeffFn, MomentumField
from .diffop import DiffOp, convert_diffop, diffop_commutator
from .oracle import apply_diffop, random_test_function, spot_check_brackets
from .spin import FloatSpinReport, check_float_spin, parse_spin, spin_matrices, spin_matrices_float

__all__ = [
    "REALIZATIONS",
    "Representation",
    "build_rep",
    "substitute_rep",
    "casimir_eigenvalue",
    "casimir_values",
    "bracket_checks",
    "check_rep",
    "CoeffFn",
    "MomentumField",
    "DiffOp",
    "convert_diffop",
    "diffop_commutator",
    "apply_diffop",
    "random_test_function",
    "spot_check_brackets",
    "FloatSpinReport",
    "check_float_spin",
    "parse_spin",
    "spin_matrices",
    "spin_matrices_float",
]
