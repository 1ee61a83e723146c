# Algebra definitions as data
import logging
import re
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from ..config import CartanPattern
from ..errors import AlgebraParseError, ScalarError
from ..pbw import UEA, Element
from ..scalars import Param, ParamContext
from .expressions import Expr, ExpressionEvaluator, Value, lift_value, names_in, to_sympy

logger = logging.getLogger(__name__)

_COMPONENT = re.compile(r"^(.*\D)([123])$")


@dataclass(frozen=True)
class ParamDecl:
    name: str
    definition: Optional[Expr] = None

    def to_param(self) -> Param:
        return Param(self.name, None if self.definition is None else to_sympy(self.definition))


@dataclass(frozen=True)
class LetDecl:
    name: str
    expr: Expr


@dataclass(frozen=True)
class BracketDecl:
    left: str
    right: str
    rhs: Expr


@dataclass(frozen=True)
class CasimirDecl:
    name: str
    expr: Expr
    eigenvalue: str


@dataclass(frozen=True)
class CartanSplit:
    label: str
    p: Tuple[str, ...]
    h: Tuple[str, ...]
    pattern: CartanPattern


@dataclass(frozen=True)
class Involution:
    """Signed generator permutation; unlisted generators are fixed."""
    name: str
    images: Tuple[Tuple[str, int, str], ...]

    def image(self, generator: str) -> Tuple[int, str]:
        for source, sign, target in self.images:
            if source == generator:
                return sign, target
        return 1, generator


@dataclass(frozen=True)
class SpaceRecord:
    label: str
    dim: int
    curvature: Expr
    rank: int
    model: Optional[str] = None


@dataclass(frozen=True)
class AlgebraDef:
    name: str
    params: Tuple[ParamDecl, ...]
    generators: Tuple[str, ...]
    brackets: Tuple[BracketDecl, ...]
    casimirs: Tuple[CasimirDecl, ...] = ()
    lets: Tuple[LetDecl, ...] = ()
    elimination: Tuple[str, ...] = ()
    cartans: Tuple[CartanSplit, ...] = ()
    involutions: Tuple[Involution, ...] = ()
    spaces: Tuple[SpaceRecord, ...] = ()
    base: Optional[str] = None
    bindings: Tuple[Tuple[str, Expr], ...] = ()

    @cached_property
    def param_objects(self) -> Tuple[Param, ...]:
        return tuple(p.to_param() for p in self.params)

    @cached_property
    def vectors(self) -> Dict[str, Tuple[str, ...]]:
        """Generator families X1, X2, X3 exposed as the vector X."""
        families: Dict[str, Dict[str, str]] = {}
        for gen in self.generators:
            match = _COMPONENT.match(gen)
            if match:
                families.setdefault(match.group(1), {})[match.group(2)] = gen
        return {prefix: (f["1"], f["2"], f["3"]) for prefix, f in families.items()
                if len(f) == 3 and prefix not in self.generators}

    @cached_property
    def context(self) -> ParamContext:
        return ParamContext(self.param_objects)

    @cached_property
    def uea(self) -> UEA:
        try:
            return self.build_uea(self.context)
        except ScalarError:
            logger.info("%s has complex structure constants; using a gaussian field", self.name)
            return self.build_uea(self.context.gaussian_twin())

    def build_uea(self, scalars: ParamContext) -> UEA:
        """Enveloping algebra of this definition over ``scalars`` (which must declare our params)."""
        abelian = UEA(self.generators, scalars, {}, name=f"{self.name}/linear")
        table = {}
        for decl in self.brackets:
            value = self.evaluate(decl.rhs, abelian)
            if isinstance(value, tuple) or value.degree > 1:
                raise AlgebraParseError(f"bracket [{decl.left},{decl.right}] must be linear in the generators")
            form = {}
            for monomial, coeff in value.terms.items():
                gen = None if not any(monomial) else self.generators[monomial.index(1)]
                form[gen] = coeff
            table[(decl.left, decl.right)] = form
        return UEA(self.generators, scalars, table, name=self.name, significance=self.elimination or None)

    def evaluate(self, expr: Expr, algebra: UEA, bindings: Optional[Mapping[str, Element]] = None,
                 simplify: Optional[Callable[[Element], Element]] = None) -> Value:
        """Evaluate ``expr`` in ``algebra``; generator names default to the algebra's own generators.

        ``simplify`` is applied to every intermediate product (central reduction, say).
        Expressions that only make sense through I are evaluated in the gaussian twin.
        """
        scope = {g: algebra.gen(g) for g in self.generators if g in algebra.index}
        scope.update(bindings or {})
        lets = [(l.name, l.expr) for l in self.lets]
        try:
            return ExpressionEvaluator(algebra, scope, self.vectors, lets, simplify).evaluate(expr)
        except ScalarError:
            if algebra.scalars.gaussian or not algebra.scalars.needs_gaussian:
                raise
        twin = algebra.gaussian_twin()
        twin_scope = {k: twin.lift(v) for k, v in scope.items()}
        twin_simplify = None
        if simplify is not None:
            def twin_simplify(element: Element) -> Element:
                return twin.lift(simplify(algebra.lift(element)))
        value = ExpressionEvaluator(twin, twin_scope, self.vectors, lets, twin_simplify).evaluate(expr)
        return lift_value(algebra, value)

    def element(self, expr: Expr, algebra: Optional[UEA] = None,
                bindings: Optional[Mapping[str, Element]] = None,
                simplify: Optional[Callable[[Element], Element]] = None) -> Element:
        value = self.evaluate(expr, algebra or self.uea, bindings, simplify)
        if isinstance(value, tuple):
            raise AlgebraParseError("expected a scalar-valued expression, found a vector")
        return value

    def casimir(self, name: str) -> CasimirDecl:
        for decl in self.casimirs:
            if decl.name == name:
                return decl
        raise KeyError(f"{self.name} has no Casimir {name!r}")

    @cached_property
    def casimir_elements(self) -> List[Tuple[str, Element, str]]:
        return [(c.name, self.element(c.expr), c.eigenvalue) for c in self.casimirs]

    def bracket_table(self) -> Dict[Tuple[str, str], Element]:
        return self.uea.bracket_table()

    def curvature(self, space: SpaceRecord):
        return self.context.from_expr(to_sympy(space.curvature))

    def declared_names(self) -> set:
        return {p.name for p in self.params} | set(self.generators) | {l.name for l in self.lets} | set(self.vectors)

    def substitute(self, bindings: Mapping[str, Expr], name: Optional[str] = None,
                   spaces: Optional[Tuple[SpaceRecord, ...]] = None) -> "AlgebraDef":
        """Turn free parameters into defined ones (e.g. λ := I*λh), declaring any new symbols."""
        declared = {p.name: p for p in self.params}
        for key in bindings:
            param = declared.get(key)
            if param is None:
                raise ScalarError(f"cannot bind undeclared parameter {key!r}")
            if param.definition is not None:
                raise ScalarError(f"cannot bind defined parameter {key!r}")
        fresh: List[ParamDecl] = []
        for expr in bindings.values():
            for symbol in sorted(names_in(expr)):
                if symbol != "I" and symbol not in declared and all(p.name != symbol for p in fresh):
                    fresh.append(ParamDecl(symbol))
        params = tuple(fresh) + tuple(ParamDecl(p.name, bindings[p.name]) if p.name in bindings else p
                                      for p in self.params)
        return replace(self, name=name or self.name, params=params,
                       spaces=self.spaces if spaces is None else spaces, base=None, bindings=())

    def render(self) -> str:
        from .parser import render_algebra
        return render_algebra(self)

