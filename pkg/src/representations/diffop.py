# Matrix differential operators in the momenta
from itertools import product
from math import comb
from typing import Dict, Iterator, Mapping, Optional, Tuple

import numpy as np

from ..errors import RepresentationError
from .coefficients import CoeffFn, MomentumField

MultiIndex = Tuple[int, int, int]
ORIGIN: MultiIndex = (0, 0, 0)


def _unit(i: int) -> MultiIndex:
    return tuple(1 if k == i else 0 for k in range(3))


def _sub_indices(alpha: MultiIndex) -> Iterator[MultiIndex]:
    return product(*(range(a + 1) for a in alpha))


class DiffOp:
    """Σ_α A_α(p, ω) ∂^α with n×n coefficient blocks; derivatives act to the right.

    ``terms`` maps a multi-index to an object array of CoeffFn; zero blocks are dropped.
    """

    __slots__ = ("field", "size", "terms")

    def __init__(self, field: MomentumField, size: int, terms: Optional[Mapping[MultiIndex, np.ndarray]] = None):
        self.field = field
        self.size = size
        self.terms: Dict[MultiIndex, np.ndarray] = {}
        for alpha, block in (terms or {}).items():
            if block.shape != (size, size):
                raise RepresentationError(f"block of shape {block.shape} in a {size}×{size} operator")
            if any(not entry.is_zero for entry in block.flat):
                self.terms[tuple(alpha)] = block

    # constructors

    @classmethod
    def zero(cls, field: MomentumField, size: int) -> "DiffOp":
        return cls(field, size)

    @classmethod
    def scalar(cls, field: MomentumField, size: int, value) -> "DiffOp":
        block = _blank(field, size)
        coeff = field.coerce(value)
        for r in range(size):
            block[r, r] = coeff
        return cls(field, size, {ORIGIN: block})

    @classmethod
    def identity(cls, field: MomentumField, size: int) -> "DiffOp":
        return cls.scalar(field, size, 1)

    @classmethod
    def matrix(cls, field: MomentumField, block: np.ndarray) -> "DiffOp":
        return cls(field, block.shape[0], {ORIGIN: block})

    @classmethod
    def partial(cls, field: MomentumField, size: int, i: int) -> "DiffOp":
        return cls.identity(field, size).then_partial(i)

    def then_partial(self, i: int) -> "DiffOp":
        """self ∘ ∂_i."""
        return DiffOp(self.field, self.size, {_add(alpha, _unit(i)): block for alpha, block in self.terms.items()})

    # arithmetic

    def _check(self, other: "DiffOp") -> None:
        if not isinstance(other, DiffOp):
            raise RepresentationError(f"cannot combine an operator with {type(other).__name__}")
        if other.size != self.size:
            raise RepresentationError(f"spin blocks of size {self.size} and {other.size} do not match")
        if other.field is not self.field:
            raise RepresentationError("operators over different momentum fields")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        terms = dict(self.terms)
        for alpha, block in other.terms.items():
            terms[alpha] = terms[alpha] + block if alpha in terms else block
        return DiffOp(self.field, self.size, terms)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.field, self.size, {alpha: -block for alpha, block in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, value) -> "DiffOp":
        coeff = self.field.coerce(value)
        return DiffOp(self.field, self.size, {alpha: _map(block, lambda e: e * coeff) for alpha, block in self.terms.items()})

    def __mul__(self, other) -> "DiffOp":
        if isinstance(other, DiffOp):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, other) -> "DiffOp":
        # coefficient on the left multiplies every block from the left
        coeff = self.field.coerce(other)
        return DiffOp(self.field, self.size, {alpha: _map(block, lambda e: coeff * e) for alpha, block in self.terms.items()})

    def compose(self, other: "DiffOp") -> "DiffOp":
        """(a ∂^α)(b ∂^β) = Σ_{γ≤α} C(α,γ) a (∂^γ b) ∂^{α-γ+β}."""
        self._check(other)
        terms: Dict[MultiIndex, np.ndarray] = {}
        derivatives: Dict[Tuple[MultiIndex, MultiIndex], np.ndarray] = {}
        for alpha, a in self.terms.items():
            for gamma in _sub_indices(alpha):
                weight = 1
                for x, y in zip(alpha, gamma):
                    weight *= comb(x, y)
                rest = tuple(x - y for x, y in zip(alpha, gamma))
                for beta, b in other.terms.items():
                    key = (gamma, beta)
                    if key not in derivatives:
                        derivatives[key] = _derive_block(b, gamma)
                    block = np.dot(a, derivatives[key])
                    if weight != 1:
                        block = _map(block, lambda e, w=weight: e * w)
                    target = _add(rest, beta)
                    terms[target] = terms[target] + block if target in terms else block
        return DiffOp(self.field, self.size, terms)

    def __pow__(self, exponent: int) -> "DiffOp":
        result = DiffOp.identity(self.field, self.size)
        for _ in range(exponent):
            result = result.compose(self)
        return result

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    @property
    def order(self) -> int:
        return max((sum(alpha) for alpha in self.terms), default=0)

    def scalar_value(self) -> Optional[CoeffFn]:
        """c when the operator is c times the identity, else None."""
        if any(alpha != ORIGIN for alpha in self.terms):
            return None
        block = self.terms.get(ORIGIN)
        if block is None:
            return self.field.zero
        value = block[0, 0]
        for r in range(self.size):
            for c in range(self.size):
                expected = value if r == c else self.field.zero
                if block[r, c] != expected:
                    return None
        return value

    def render(self) -> str:
        parts = []
        for alpha in sorted(self.terms, reverse=True):
            block = self.terms[alpha]
            derivative = "".join(f"∂{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(alpha) if e)
            if self.size == 1:
                coeff = block[0, 0].render()
            else:
                coeff = "[" + "; ".join(", ".join(entry.render() for entry in row) for row in block) + "]"
            parts.append(f"({coeff}){derivative}" if derivative else f"({coeff})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"DiffOp({self.render()})"


def _blank(field: MomentumField, size: int) -> np.ndarray:
    block = np.empty((size, size), dtype=object)
    block.fill(field.zero)
    return block


def _map(block: np.ndarray, fn) -> np.ndarray:
    result = np.empty(block.shape, dtype=object)
    for index, entry in np.ndenumerate(block):
        result[index] = fn(entry)
    return result


def _add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def _derive_block(block: np.ndarray, gamma: MultiIndex) -> np.ndarray:
    if gamma == ORIGIN:
        return block
    result = np.empty(block.shape, dtype=object)
    for index, entry in np.ndenumerate(block):
        value = entry
        for i, times in enumerate(gamma):
            for _ in range(times):
                value = value.diff(i)
        result[index] = value
    return result


def diffop_commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b) - b.compose(a)


def convert_diffop(op: DiffOp, field: MomentumField) -> DiffOp:
    """The same operator over another momentum field with matching symbol names."""
    scalars = field.scalars
    terms = {alpha: _map(block, lambda e: CoeffFn(field, scalars.convert(e.a), scalars.convert(e.b)))
             for alpha, block in op.terms.items()}
    return DiffOp(field, op.size, terms)
