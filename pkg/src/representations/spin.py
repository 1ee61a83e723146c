# Spin blocks: exact matrices for s in {0, 1/2, 1}, numpy ladder matrices otherwise
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

import numpy as np

from ..errors import SpinError
from .coefficients import CoeffFn, MomentumField

logger = logging.getLogger(__name__)

SpinLike = Union[str, int, Fraction]
EXACT_SPINS = (Fraction(0), Fraction(1, 2), Fraction(1))


def parse_spin(spin: SpinLike) -> Fraction:
    try:
        value = Fraction(spin)
    except (ValueError, ZeroDivisionError):
        raise SpinError(f"not a spin value: {spin!r}") from None
    if value < 0 or (2 * value).denominator != 1:
        raise SpinError(f"spin must be a nonnegative multiple of 1/2, got {spin}")
    return value


def spin_dimension(spin: SpinLike) -> int:
    return int(2 * parse_spin(spin)) + 1


def needs_gaussian(spin: SpinLike) -> bool:
    return parse_spin(spin) == Fraction(1, 2)


def spin_matrices(spin: SpinLike, field: MomentumField) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact S1, S2, S3 with [S_i, S_j] = ε_ijk S_k, as object arrays of CoeffFn."""
    s = parse_spin(spin)
    if s not in EXACT_SPINS:
        raise SpinError(f"spin {s} has no exact realization; use the floating-point check (--float-spin)")
    n = int(2 * s) + 1
    zero, one = field.zero, field.one

    def blank() -> np.ndarray:
        block = np.empty((n, n), dtype=object)
        block.fill(zero)
        return block

    blocks = [blank(), blank(), blank()]
    if s == 1:
        # (S_i)_jk = -ε_ijk
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            blocks[i][j, k] = -one
            blocks[i][k, j] = one
    elif s == Fraction(1, 2):
        # S = -(i/2) σ
        if not field.scalars.gaussian:
            raise SpinError("spin 1/2 needs a gaussian coefficient field")
        half_i = field.const(field.scalars.imaginary_unit() / 2)
        blocks[0][0, 1] = blocks[0][1, 0] = -half_i
        blocks[1][0, 1] = -one / 2
        blocks[1][1, 0] = one / 2
        blocks[2][0, 0] = -half_i
        blocks[2][1, 1] = half_i
    return blocks[0], blocks[1], blocks[2]


def spin_casimir(blocks: Tuple[np.ndarray, ...]) -> np.ndarray:
    return sum(np.dot(b, b) for b in blocks)


def commutator_blocks(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.dot(a, b) - np.dot(b, a)


@dataclass
class FloatSpinReport:
    """Outcome of the floating-point spin check."""
    spin: Fraction
    dimension: int
    commutator_error: float
    casimir_value: float
    casimir_spread: float
    tolerance: float

    @property
    def passed(self) -> bool:
        expected = -float(self.spin * (self.spin + 1))
        scale = max(abs(expected), 1.0)
        return (self.commutator_error <= self.tolerance * scale
                and abs(self.casimir_value - expected) <= self.tolerance * scale
                and self.casimir_spread <= self.tolerance * scale)


def spin_matrices_float(spin: SpinLike) -> np.ndarray:
    """(3, n, n) complex array S = -i J built from the ladder operators J±, Jz."""
    s = parse_spin(spin)
    n = int(2 * s) + 1
    J_plus = np.zeros((n, n), dtype=np.complex128)
    J_minus = np.zeros((n, n), dtype=np.complex128)
    J_z = np.zeros((n, n), dtype=np.complex128)
    ms: List[Fraction] = [s - k for k in range(n)]
    for row, m in enumerate(ms):
        J_z[row, row] = float(m)
        if row > 0:
            J_plus[row - 1, row] = np.sqrt(float((s - m) * (s + m + 1)))
        if row < n - 1:
            J_minus[row + 1, row] = np.sqrt(float((s + m) * (s - m + 1)))
    J_x = (J_plus + J_minus) / 2.0
    J_y = (J_plus - J_minus) / 2.0j
    return np.stack([-1j * J_x, -1j * J_y, -1j * J_z], axis=0)


def check_float_spin(spin: SpinLike, tolerance: float = 1e-9) -> FloatSpinReport:
    """Commutation relations and S^2 of the numeric matrices within ``tolerance``."""
    s = parse_spin(spin)
    S = spin_matrices_float(s)
    errors = []
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        errors.append(np.linalg.norm(S[i] @ S[j] - S[j] @ S[i] - S[k], ord="fro"))
    casimir = sum(S[a] @ S[a] for a in range(3))
    eigenvalues = np.linalg.eigvals(casimir).real
    report = FloatSpinReport(s, S.shape[1], float(max(errors)), float(np.mean(eigenvalues)),
                             float(np.std(eigenvalues)), tolerance)
    logger.info("float spin %s: commutator error %.3e, S^2 = %.6f", s, report.commutator_error, report.casimir_value)
    return report
