# Momentum-space coefficient field with the on-shell radical ω
from typing import Optional, Tuple, Union

import sympy

from ..errors import RepresentationError, ScalarError
from ..scalars import ParamContext, Scalar, ScalarLike, divide, render_scalar

MOMENTA = ("p1", "p2", "p3")
OMEGA = "ω"


class MomentumField:
    """Rational functions in the parameters and p1, p2, p3, extended by ω.

    ω satisfies ω^2 = p^2 + μ^2; ``mass_term`` is μ (m*c for the Poincaré
    realizations) or None when no radical is needed.
    """

    def __init__(self, scalars: ParamContext, mass_term: Optional[Scalar] = None):
        missing = [p for p in MOMENTA if p not in scalars.free_names]
        if missing:
            raise RepresentationError(f"momentum context lacks {', '.join(missing)}")
        self.scalars = scalars
        self.indices: Tuple[int, ...] = tuple(scalars.free_names.index(p) for p in MOMENTA)
        self.momenta: Tuple[Scalar, ...] = tuple(scalars.gen(p) for p in MOMENTA)
        self.mass_term = mass_term
        self.radicand: Optional[Scalar] = None
        if mass_term is not None:
            self.radicand = sum((p ** 2 for p in self.momenta), scalars.zero) + mass_term ** 2

    def __repr__(self) -> str:
        return f"MomentumField({self.scalars!r}, ω^2 = {render_scalar(self.radicand) if self.radicand else '-'})"

    @property
    def zero(self) -> "CoeffFn":
        return CoeffFn(self, self.scalars.zero)

    @property
    def one(self) -> "CoeffFn":
        return CoeffFn(self, self.scalars.one)

    @property
    def omega(self) -> "CoeffFn":
        if self.radicand is None:
            raise RepresentationError("this realization has no ω")
        return CoeffFn(self, self.scalars.zero, self.scalars.one)

    def const(self, value: ScalarLike) -> "CoeffFn":
        return CoeffFn(self, self.scalars.scalar(value))

    def p(self, i: int) -> "CoeffFn":
        return CoeffFn(self, self.momenta[i])

    def coerce(self, value) -> "CoeffFn":
        if isinstance(value, CoeffFn):
            if value.field is not self:
                raise RepresentationError("coefficients from different momentum fields")
            return value
        return self.const(value)


class CoeffFn:
    """a + b*ω with a, b rational in parameters and momenta."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: MomentumField, a: Scalar, b: Optional[Scalar] = None):
        self.field = field
        self.a = a
        self.b = field.scalars.zero if b is None else b
        if self.b and field.radicand is None:
            raise RepresentationError("ω term in a realization without ω")

    def __add__(self, other) -> "CoeffFn":
        other = self.field.coerce(other)
        return CoeffFn(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "CoeffFn":
        return CoeffFn(self.field, -self.a, -self.b)

    def __sub__(self, other) -> "CoeffFn":
        return self + (-self.field.coerce(other))

    def __rsub__(self, other) -> "CoeffFn":
        return self.field.coerce(other) - self

    def __mul__(self, other) -> "CoeffFn":
        other = self.field.coerce(other)
        a = self.a * other.a
        if self.b and other.b:
            a += self.b * other.b * self.field.radicand
        return CoeffFn(self.field, a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "CoeffFn":
        if self.is_zero:
            raise ScalarError("inverse of a zero coefficient")
        if not self.b:
            return CoeffFn(self.field, divide(self.field.scalars.one, self.a))
        norm = self.a ** 2 - self.b ** 2 * self.field.radicand
        return CoeffFn(self.field, divide(self.a, norm), divide(-self.b, norm))

    def __truediv__(self, other) -> "CoeffFn":
        return self * self.field.coerce(other).inverse()

    def __rtruediv__(self, other) -> "CoeffFn":
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "CoeffFn":
        result = self.field.one
        base = self if exponent >= 0 else self.inverse()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffFn):
            try:
                other = self.field.coerce(other)
            except Exception:
                return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    @property
    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self) -> bool:
        return not self.is_zero

    def diff(self, i: int) -> "CoeffFn":
        """∂/∂p_i, with ∂_i ω = p_i/ω."""
        x = self.field.scalars.field.gens[self.field.indices[i]]
        da = self.a.diff(x)
        if not self.b:
            return CoeffFn(self.field, da)
        db = self.b.diff(x) + self.b * self.field.momenta[i] / self.field.radicand
        return CoeffFn(self.field, da, db)

    @property
    def is_constant(self) -> bool:
        """Free of the momenta and of ω."""
        if self.b:
            return False
        return not any(self.field.scalars.depends_on(self.a, p) for p in MOMENTA)

    def to_sympy(self, omega: Union[sympy.Expr, None] = None) -> sympy.Expr:
        omega = sympy.Symbol(OMEGA) if omega is None else omega
        return self.a.as_expr() + self.b.as_expr() * omega

    def render(self) -> str:
        if not self.b:
            return render_scalar(self.a)
        return sympy.sstr(self.to_sympy())

    def __repr__(self) -> str:
        return f"CoeffFn({self.render()})"
