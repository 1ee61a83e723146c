# Expression trees for algebra sources and their evaluation in an enveloping algebra
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

import sympy

from ..errors import AlgebraParseError
from ..pbw import UEA, Element

IMAGINARY = "I"
FUNCTIONS = ("dot", "cross", "sq", "comm", "vec")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Expr", ...]


@dataclass(frozen=True)
class Index:
    target: "Expr"
    index: int


Expr = Union[Num, Name, Neg, BinOp, Pow, Call, Index]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def _precedence(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, Neg):
        return 3
    if isinstance(expr, Pow):
        return 4
    return 5


def _wrap(expr: Expr, parenthesize: bool) -> str:
    text = render_expr(expr)
    return f"({text})" if parenthesize else text


def render_expr(expr: Expr) -> str:
    """Minimal-parenthesis text that parses back to the same tree."""
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, Name):
        return expr.id
    if isinstance(expr, Call):
        return f"{expr.func}({', '.join(render_expr(a) for a in expr.args)})"
    if isinstance(expr, Index):
        return f"{_wrap(expr.target, _precedence(expr.target) < 5)}[{expr.index}]"
    if isinstance(expr, Pow):
        return f"{_wrap(expr.base, _precedence(expr.base) < 5)}^{expr.exp}"
    if isinstance(expr, Neg):
        return "-" + _wrap(expr.arg, _precedence(expr.arg) < 3)
    level = _PRECEDENCE[expr.op]
    left = _wrap(expr.left, _precedence(expr.left) < level)
    right = _wrap(expr.right, _precedence(expr.right) <= level)
    return f"{left} {expr.op} {right}" if level == 1 else f"{left}*{right}" if expr.op == "*" else f"{left}/{right}"


def walk(expr: Expr) -> Iterator[Expr]:
    yield expr
    if isinstance(expr, Neg):
        yield from walk(expr.arg)
    elif isinstance(expr, BinOp):
        yield from walk(expr.left)
        yield from walk(expr.right)
    elif isinstance(expr, Pow):
        yield from walk(expr.base)
    elif isinstance(expr, Index):
        yield from walk(expr.target)
    elif isinstance(expr, Call):
        for arg in expr.args:
            yield from walk(arg)


def names_in(expr: Expr) -> set:
    return {node.id for node in walk(expr) if isinstance(node, Name)}


def to_sympy(expr: Expr) -> sympy.Expr:
    """Scalar-only reading used for parameter definitions and curvatures."""
    if isinstance(expr, Num):
        return sympy.Integer(expr.value)
    if isinstance(expr, Name):
        return sympy.I if expr.id == IMAGINARY else sympy.Symbol(expr.id)
    if isinstance(expr, Neg):
        return -to_sympy(expr.arg)
    if isinstance(expr, Pow):
        return to_sympy(expr.base) ** expr.exp
    if isinstance(expr, BinOp):
        left, right = to_sympy(expr.left), to_sympy(expr.right)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        return left / right
    raise AlgebraParseError(f"{render_expr(expr)} is not a scalar expression")


class Vector(tuple):
    """Three-component vector of Elements."""


Value = Union[Element, Vector]


class ExpressionEvaluator:
    """Evaluates expression trees to Elements (or 3-vectors of Elements)."""

    def __init__(self, algebra: UEA, bindings: Mapping[str, Element],
                 vectors: Mapping[str, Sequence[str]], lets: Sequence[Tuple[str, Expr]] = (),
                 simplify: Optional[Callable[[Element], Element]] = None):
        self.algebra = algebra
        self.simplify = simplify or (lambda element: element)
        self.bindings = dict(bindings)
        self.vectors = dict(vectors)
        self.lets = dict(lets)
        self._let_values: Dict[str, Value] = {}
        self._functions: Dict[str, Callable[..., Value]] = {
            "dot": self._dot, "cross": self._cross, "sq": lambda a: self._dot(a, a),
            "comm": self._comm, "vec": lambda *a: Vector(self._element(x) for x in a),
        }

    def evaluate(self, expr: Expr) -> Value:
        method = getattr(self, f"_eval_{type(expr).__name__.lower()}")
        return method(expr)

    def element(self, expr: Expr) -> Element:
        return self._element(self.evaluate(expr))

    def _element(self, value: Value) -> Element:
        if isinstance(value, Vector):
            raise AlgebraParseError("expected a scalar-valued expression, found a vector")
        return value

    def _eval_num(self, expr: Num) -> Value:
        return self.algebra.scalar(expr.value)

    def _eval_name(self, expr: Name) -> Value:
        name = expr.id
        if name in self.lets:
            if name not in self._let_values:
                self._let_values[name] = self.evaluate(self.lets[name])
            return self._let_values[name]
        if name in self.bindings:
            return self.bindings[name]
        if name in self.vectors:
            return Vector(self.bindings[g] for g in self.vectors[name])
        if name == IMAGINARY:
            return self.algebra.scalar(self.algebra.scalars.imaginary_unit())
        if name in self.algebra.scalars:
            return self.algebra.scalar(self.algebra.scalars.gen(name))
        raise AlgebraParseError(f"unknown symbol {name!r}")

    def _eval_neg(self, expr: Neg) -> Value:
        value = self.evaluate(expr.arg)
        if isinstance(value, Vector):
            return Vector(-v for v in value)
        return -value

    def _eval_pow(self, expr: Pow) -> Value:
        base = self._element(self.evaluate(expr.base))
        result = self.algebra.one
        for _ in range(expr.exp):
            result = self.simplify(result * base)
        return result

    def _eval_index(self, expr: Index) -> Value:
        value = self.evaluate(expr.target)
        if not isinstance(value, Vector) or not 1 <= expr.index <= 3:
            raise AlgebraParseError(f"cannot index {render_expr(expr.target)} with {expr.index}")
        return value[expr.index - 1]

    def _eval_call(self, expr: Call) -> Value:
        fn = self._functions.get(expr.func)
        if fn is None:
            raise AlgebraParseError(f"unknown function {expr.func!r}")
        try:
            return fn(*(self.evaluate(a) for a in expr.args))
        except TypeError:
            raise AlgebraParseError(f"wrong number of arguments for {expr.func}") from None

    def _eval_binop(self, expr: BinOp) -> Value:
        left, right = self.evaluate(expr.left), self.evaluate(expr.right)
        if expr.op in "+-":
            if isinstance(left, Vector) != isinstance(right, Vector):
                raise AlgebraParseError(f"cannot mix vector and scalar in {render_expr(expr)}")
            if isinstance(left, Vector):
                return Vector((a + b) if expr.op == "+" else (a - b) for a, b in zip(left, right))
            return left + right if expr.op == "+" else left - right
        if expr.op == "*":
            if isinstance(left, Vector) and isinstance(right, Vector):
                raise AlgebraParseError(f"product of two vectors in {render_expr(expr)}; use dot or cross")
            if isinstance(left, Vector):
                return Vector(self.simplify(a * right) for a in left)
            if isinstance(right, Vector):
                return Vector(self.simplify(left * b) for b in right)
            return self.simplify(left * right)
        divisor = self._element(right)
        if isinstance(left, Vector):
            return Vector(a / divisor for a in left)
        return left / divisor

    def _dot(self, a: Value, b: Value) -> Element:
        if not (isinstance(a, Vector) and isinstance(b, Vector)):
            raise AlgebraParseError("dot needs two vectors")
        return self.simplify(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])

    def _cross(self, a: Value, b: Value) -> Vector:
        if not (isinstance(a, Vector) and isinstance(b, Vector)):
            raise AlgebraParseError("cross needs two vectors")
        return Vector(self.simplify(x) for x in (
            a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]))

    def _comm(self, a: Value, b: Value) -> Element:
        return self.algebra.commutator(self._element(a), self._element(b))


def lift_value(algebra: UEA, value: Value) -> Value:
    if isinstance(value, Vector):
        return Vector(algebra.lift(v) for v in value)
    return algebra.lift(value)


def replace_names(expr: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Copy of ``expr`` with the given names replaced by subtrees."""
    if isinstance(expr, Name):
        return mapping.get(expr.id, expr)
    if isinstance(expr, Neg):
        return Neg(replace_names(expr.arg, mapping))
    if isinstance(expr, BinOp):
        return BinOp(expr.op, replace_names(expr.left, mapping), replace_names(expr.right, mapping))
    if isinstance(expr, Pow):
        return Pow(replace_names(expr.base, mapping), expr.exp)
    if isinstance(expr, Index):
        return Index(replace_names(expr.target, mapping), expr.index)
    if isinstance(expr, Call):
        return Call(expr.func, tuple(replace_names(a, mapping) for a in expr.args))
    return expr
