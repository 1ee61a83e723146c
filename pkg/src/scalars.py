# Exact coefficient field: rational functions in named commuting parameters
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import integer_nthroot, sstr
from sympy.polys.domains import ZZ, ZZ_I
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex

from .config import ParamKind
from .errors import ScalarError, UnsolvedConstraint

logger = logging.getLogger(__name__)

Scalar = FracElement
ScalarLike = Union[int, Fraction, str, sympy.Expr, FracElement]

PARAM_ORDER = (
    "γ", "λ", "m", "ξ", "a", "u", "w", "c1", "c2", "c1p", "c2p",
    "α1", "α2", "γh", "λh", "p1", "p2", "p3",
)


def param_sort_key(name: str) -> Tuple[int, str]:
    """Global symbol order; names outside the known list sort after it alphabetically."""
    try:
        return (PARAM_ORDER.index(name), name)
    except ValueError:
        return (len(PARAM_ORDER), name)


def symbol(name: str) -> sympy.Symbol:
    return sympy.Symbol(name)


@dataclass(frozen=True)
class Param:
    name: str
    definition: Optional[sympy.Expr] = None

    @property
    def kind(self) -> ParamKind:
        return ParamKind.FREE if self.definition is None else ParamKind.DEFINED

    @property
    def dependencies(self) -> frozenset:
        if self.definition is None:
            return frozenset()
        return frozenset(str(s) for s in self.definition.free_symbols)

    @property
    def needs_gaussian(self) -> bool:
        return self.definition is not None and self.definition.has(sympy.I)


class ParamContext:
    """Field of rational functions in the free parameters of a declaration set.

    Defined parameters are always expanded into their definitions, so a
    Scalar only ever mentions free symbols.  Coefficients live in ZZ, or in
    ZZ_I for gaussian contexts.
    """

    def __init__(self, params: Iterable[Param] = (), gaussian: bool = False):
        declared: Dict[str, Param] = {}
        for param in params:
            known = declared.get(param.name)
            if known is not None and known != param:
                raise ScalarError(f"parameter {param.name!r} declared twice with different definitions")
            declared[param.name] = param
        self.params = declared
        self.gaussian = gaussian
        self._check_acyclic()
        self.free_names = tuple(sorted(
            (name for name, param in declared.items() if param.definition is None), key=param_sort_key))
        self.domain = ZZ_I if gaussian else ZZ
        self.field = FracField(tuple(symbol(n) for n in self.free_names), self.domain, grlex)
        self._values: Dict[str, Scalar] = dict(zip(self.free_names, self.field.gens))
        self._twin: Optional["ParamContext"] = None

    def _check_acyclic(self) -> None:
        state: Dict[str, int] = {}

        def visit(name: str, trail: Tuple[str, ...]) -> None:
            if state.get(name) == 2:
                return
            if state.get(name) == 1:
                raise ScalarError("cyclic parameter definitions: " + " -> ".join(trail + (name,)))
            param = self.params.get(name)
            if param is None:
                raise ScalarError(f"parameter {trail[-1]!r} refers to undeclared {name!r}")
            state[name] = 1
            for dep in sorted(param.dependencies):
                visit(dep, trail + (name,))
            state[name] = 2

        for name in list(self.params):
            visit(name, ())

    def __contains__(self, name: str) -> bool:
        return name in self.params

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamContext) and self.params == other.params and self.gaussian == other.gaussian

    def __hash__(self) -> int:
        return hash((frozenset(self.params.items()), self.gaussian))

    def __repr__(self) -> str:
        kind = "gaussian" if self.gaussian else "rational"
        return f"ParamContext({', '.join(sorted(self.params, key=param_sort_key))}; {kind})"

    @property
    def needs_gaussian(self) -> bool:
        return any(param.needs_gaussian for param in self.params.values())

    @property
    def zero(self) -> Scalar:
        return self.field.zero

    @property
    def one(self) -> Scalar:
        return self.field.one

    def extend(self, params: Iterable[Param], gaussian: Optional[bool] = None) -> "ParamContext":
        merged = list(self.params.values()) + list(params)
        return ParamContext(merged, self.gaussian if gaussian is None else gaussian)

    def gaussian_twin(self) -> "ParamContext":
        if self.gaussian:
            return self
        if self._twin is None:
            self._twin = ParamContext(self.params.values(), gaussian=True)
        return self._twin

    def real_twin(self) -> "ParamContext":
        return ParamContext(self.params.values(), gaussian=False) if self.gaussian else self

    def gen(self, name: str) -> Scalar:
        value = self._values.get(name)
        if value is None:
            param = self.params.get(name)
            if param is None:
                raise ScalarError(f"unknown parameter {name!r}")
            try:
                value = self.from_expr(param.definition)
            except ScalarError:
                if self.gaussian or not self.needs_gaussian:
                    raise
                # real values written through I, e.g. κ2 = -γ^2 with γ = I*γh
                value = self.convert(self.gaussian_twin().gen(name))
            self._values[name] = value
        return value

    def imaginary_unit(self) -> Scalar:
        if not self.gaussian:
            raise ScalarError("the imaginary unit needs a gaussian context")
        return self.field.ground_new(ZZ_I.from_sympy(sympy.I))

    def from_expr(self, expr: ScalarLike) -> Scalar:
        expr = sympy.sympify(expr)
        if expr.is_Symbol:
            return self.gen(expr.name)
        if expr is sympy.I:
            return self.imaginary_unit()
        if expr.is_Rational:
            return self.field(int(expr.p)) / int(expr.q)
        if expr.is_Add:
            total = self.zero
            for arg in expr.args:
                total += self.from_expr(arg)
            return total
        if expr.is_Mul:
            product = self.one
            for arg in expr.args:
                product *= self.from_expr(arg)
            return product
        if expr.is_Pow and expr.exp.is_Integer:
            base, exp = self.from_expr(expr.base), int(expr.exp)
            return base ** exp if exp >= 0 else divide(self.one, base ** -exp)
        raise ScalarError(f"not a rational expression in the parameters: {expr}")

    def scalar(self, value: ScalarLike) -> Scalar:
        if isinstance(value, FracElement):
            return self.convert(value)
        if isinstance(value, bool):
            raise ScalarError("booleans are not scalars")
        if isinstance(value, int):
            return self.field(value)
        if isinstance(value, Fraction):
            return self.field(value.numerator) / value.denominator
        if isinstance(value, str):
            return self.gen(value)
        return self.from_expr(value)

    def convert(self, value: Scalar) -> Scalar:
        """Move a Scalar from another context into this one, matching symbols by name."""
        if value.field == self.field:
            return value
        return self._compose(value, {})

    def try_convert(self, value: Scalar) -> Optional[Scalar]:
        try:
            return self.convert(value)
        except ScalarError:
            return None

    def substitute(self, value: ScalarLike, bindings: Mapping[str, ScalarLike],
                   target: Optional["ParamContext"] = None) -> Scalar:
        """Replace free parameters by Scalars of ``target`` (default: this context)."""
        value = self.scalar(value)
        target = target or self
        images: Dict[str, Scalar] = {}
        for name, image in bindings.items():
            param = self.params.get(name)
            if param is None:
                raise ScalarError(f"cannot bind undeclared parameter {name!r}")
            if param.definition is not None:
                raise ScalarError(f"cannot bind defined parameter {name!r}")
            images[name] = target.scalar(image)
        return target._compose(value, images)

    def _compose(self, value: Scalar, images: Mapping[str, Scalar]) -> Scalar:
        source = value.field
        names = [str(s) for s in source.symbols]
        if not images and source.domain == self.domain and all(n in self.free_names for n in names):
            return value.set_field(self.field)
        used = {i for poly in (value.numer, value.denom) for monom in poly.itermonoms()
                for i, e in enumerate(monom) if e}
        gens = []
        for index, name in enumerate(names):
            if name in images:
                gens.append(images[name])
            elif name in self.params:
                gens.append(self.gen(name))
            elif index not in used:
                gens.append(self.zero)
            else:
                raise ScalarError(f"parameter {name!r} is not declared in {self!r}")
        numer = self._evaluate(value.numer, gens, source.domain)
        denom = self._evaluate(value.denom, gens, source.domain)
        return divide(numer, denom, "substitution makes a denominator vanish")

    def _evaluate(self, poly, gens: Sequence[Scalar], source_domain) -> Scalar:
        total = self.zero
        powers: Dict[Tuple[int, int], Scalar] = {}
        for monom, coeff in poly.iterterms():
            term = self._ground(coeff, source_domain)
            for index, exp in enumerate(monom):
                if exp:
                    key = (index, exp)
                    if key not in powers:
                        powers[key] = gens[index] ** exp
                    term = term * powers[key]
            total += term
        return total

    def _ground(self, coeff, source_domain) -> Scalar:
        if source_domain == self.domain:
            return self.field.ground_new(coeff)
        if self.gaussian:
            return self.field.ground_new(self.domain.convert(coeff, source_domain))
        if coeff.y:
            raise ScalarError("value has an imaginary part and cannot leave the gaussian field")
        return self.field.ground_new(coeff.x)

    def is_real(self, value: Scalar) -> bool:
        if value.field.domain != ZZ_I:
            return True
        return all(not c.y for c in value.numer.coeffs() + value.denom.coeffs())

    def depends_on(self, value: Scalar, name: str) -> bool:
        if name not in self.free_names:
            return False
        index = self.free_names.index(name)
        value = self.convert(value)
        return any(m[index] for m in value.numer.itermonoms()) or any(m[index] for m in value.denom.itermonoms())

    def free_symbols_of(self, value: Scalar) -> List[str]:
        value = self.convert(value)
        used = set()
        for poly in (value.numer, value.denom):
            for monom in poly.itermonoms():
                used.update(i for i, e in enumerate(monom) if e)
        return [self.free_names[i] for i in sorted(used)]

    def render(self, value: ScalarLike) -> str:
        return render_scalar(self.scalar(value))


def render_scalar(value: Scalar) -> str:
    return sstr(value.as_expr())


def divide(numerator: Scalar, denominator: Scalar, message: str = "division by zero") -> Scalar:
    if not denominator:
        raise ScalarError(message)
    return numerator / denominator


@dataclass(frozen=True)
class Relation:
    """Normalized solution ``unknown**power = value`` of one constraint equation."""
    unknown: str
    power: int
    value: Scalar
    equation: Scalar

    def render(self) -> str:
        lhs = self.unknown if self.power == 1 else f"{self.unknown}^{self.power}"
        return f"{lhs} = {render_scalar(self.value)}"

    def render_equation(self) -> str:
        return f"{render_scalar(self.equation)} = 0"


def _unknown_index(context: ParamContext, unknown: str) -> int:
    if unknown not in context.free_names:
        raise ScalarError(f"unknown {unknown!r} is not a free parameter")
    return context.free_names.index(unknown)


def solve_one(equation: ScalarLike, unknown: str, context: ParamContext) -> Relation:
    """Solve ``equation = 0`` when it is linear in ``unknown`` or of the form A*x^2 - B."""
    equation = context.scalar(equation)
    index = _unknown_index(context, unknown)
    poly = equation.numer
    rendered = render_scalar(equation)
    if not poly:
        raise UnsolvedConstraint(rendered, unknown, "trivial equation")
    degree = poly.degree(index)
    frac = context.field
    if degree == 1:
        a = frac(poly.coeff_wrt(index, 1))
        b = frac(poly.coeff_wrt(index, 0))
        return Relation(unknown, 1, -b / a, frac(poly))
    if degree == 2 and not poly.coeff_wrt(index, 1):
        a = frac(poly.coeff_wrt(index, 2))
        b = frac(poly.coeff_wrt(index, 0))
        return Relation(unknown, 2, -b / a, frac(poly))
    reason = "no unknown present" if degree == 0 else f"degree {degree} is not binomial"
    raise UnsolvedConstraint(rendered, unknown, reason)


@dataclass
class BinomialSolution:
    relations: List[Relation] = field(default_factory=list)
    unsolved: List[UnsolvedConstraint] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unsolved


def solve_binomial(equations: Iterable[ScalarLike], unknown: str, context: ParamContext) -> BinomialSolution:
    """Solve each equation for ``unknown``; duplicates collapse to one relation.

    Equations of unsupported shape are kept verbatim in ``unsolved``.
    """
    solution = BinomialSolution()
    for equation in equations:
        try:
            relation = solve_one(equation, unknown, context)
        except UnsolvedConstraint as unsolved:
            logger.debug("%s", unsolved)
            solution.unsolved.append(unsolved)
            continue
        if all(r.power != relation.power or r.value != relation.value for r in solution.relations):
            solution.relations.append(relation)
    return solution


def _square_root_poly(poly):
    """Exact square root of a ZZ polynomial, or None; also reports a negative sign."""
    content, factors = poly.factor_list()
    content = int(content)
    negative = content < 0
    root, exact = integer_nthroot(abs(content), 2)
    if not exact:
        return None, negative
    result = poly.ring.ground_new(root)
    for factor, multiplicity in factors:
        if multiplicity % 2:
            return None, negative
        result *= factor ** (multiplicity // 2)
    return result, negative


def positive_root(relation: Relation, context: ParamContext,
                  primitives: Optional[Mapping[str, ScalarLike]] = None) -> Scalar:
    """Root of a quadratic relation after substituting radicand primitives (c1 -> u^2, ...).

    Returns a Scalar in ``context``; a negative radicand needs a gaussian context.
    """
    value = context.convert(relation.value)
    if primitives:
        value = context.substitute(value, primitives)
    if relation.power == 1:
        return value
    real = context.real_twin()
    real_value = real.try_convert(value)
    if real_value is None:
        raise ScalarError(f"cannot take a root of complex value {render_scalar(value)}")
    numer, neg_n = _square_root_poly(real_value.numer)
    denom, neg_d = _square_root_poly(real_value.denom)
    if numer is None or denom is None:
        raise ScalarError(f"{render_scalar(value)} is not a perfect square in the primitives")
    root = context.convert(real.field(numer) / real.field(denom))
    if neg_n != neg_d:
        root = root * context.imaginary_unit()
    return root


def apply_relations(value: Scalar, relations: Sequence[Relation], context: ParamContext) -> Scalar:
    """Eliminate solved unknowns: linear relations substitute, quadratic ones fold even powers."""
    value = context.convert(value)
    for _ in range(len(relations) + 1):
        before = value
        for relation in relations:
            if relation.power == 1:
                if context.depends_on(value, relation.unknown):
                    value = context.substitute(value, {relation.unknown: relation.value})
            else:
                value = _fold_square(value, relation, context)
        if value == before:
            break
    return value


def _fold_square(value: Scalar, relation: Relation, context: ParamContext) -> Scalar:
    index = _unknown_index(context, relation.unknown)
    square = context.convert(relation.value)
    x = context.field.gens[index]

    def fold(poly) -> Scalar:
        total = context.zero
        for monom, coeff in poly.iterterms():
            exp = monom[index]
            rest = monom[:index] + (0,) + monom[index + 1:]
            term = context.field(poly.ring.term_new(rest, coeff))
            total += term * square ** (exp // 2) * x ** (exp % 2)
        return total

    if not context.depends_on(value, relation.unknown):
        return value
    return fold(value.numer) / fold(value.denom)
