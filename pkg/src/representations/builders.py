# Momentum-space realizations of the kinematical algebras
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebras import AlgebraDef, catalog_get
from ..chains import with_kappa_sign
from ..config import CasimirValue, IdentityCheck
from ..errors import RepresentationError
from ..pbw import Element
from ..scalars import Param, ParamContext, Scalar
from ..steps.context import parse_scalar
from .coefficients import MOMENTA, CoeffFn, MomentumField
from .diffop import DiffOp, diffop_commutator
from .spin import SpinLike, needs_gaussian, parse_spin, spin_dimension, spin_matrices

logger = logging.getLogger(__name__)

Binding = Union[str, Scalar]


@dataclass
class Representation:
    """Generators of ``algebra`` as matrix differential operators in p."""
    name: str
    algebra: AlgebraDef
    field: MomentumField
    spin: Fraction
    operators: Dict[str, DiffOp]
    spin_blocks: Tuple[np.ndarray, ...] = field(default_factory=tuple, repr=False)

    @property
    def scalars(self) -> ParamContext:
        return self.field.scalars

    @property
    def size(self) -> int:
        return spin_dimension(self.spin)

    def __getitem__(self, generator: str) -> DiffOp:
        try:
            return self.operators[generator]
        except KeyError:
            raise RepresentationError(f"{self.name} has no operator for {generator!r}") from None


class _Kit:
    """Building blocks shared by the realizations: p, ∂, ω, J and p×S."""

    def __init__(self, field: MomentumField, spin: Fraction):
        self.field = field
        self.size = spin_dimension(spin)
        self.spin_blocks = spin_matrices(spin, field)

    def const(self, value) -> DiffOp:
        return DiffOp.scalar(self.field, self.size, value)

    def param(self, name: str) -> CoeffFn:
        return self.field.const(self.field.scalars.gen(name))

    def p(self, i: int) -> DiffOp:
        return self.const(self.field.p(i))

    def d(self, i: int) -> DiffOp:
        return DiffOp.partial(self.field, self.size, i)

    def p_squared(self) -> CoeffFn:
        return sum((self.field.p(i) * self.field.p(i) for i in range(3)), self.field.zero)

    def euler(self) -> DiffOp:
        """p·∂ + 3/2."""
        total = self.const(Fraction(3, 2))
        for i in range(3):
            total = total + self.d(i).scale(self.field.p(i))
        return total

    def spin_op(self, k: int) -> DiffOp:
        return DiffOp.matrix(self.field, self.spin_blocks[k])

    def angular(self, i: int) -> DiffOp:
        """J_i = ε_ijk p_k ∂_j + S_i."""
        j, k = (i + 1) % 3, (i + 2) % 3
        return self.d(j).scale(self.field.p(k)) - self.d(k).scale(self.field.p(j)) + self.spin_op(i)

    def p_cross_s(self, i: int) -> DiffOp:
        j, k = (i + 1) % 3, (i + 2) % 3
        return self.spin_op(k).scale(self.field.p(j)) - self.spin_op(j).scale(self.field.p(k))

    def vector(self, prefix: str, build: Callable[[int], DiffOp]) -> Dict[str, DiffOp]:
        return {f"{prefix}{i + 1}": build(i) for i in range(3)}


def _galilei_bacry(kit: _Kit) -> Dict[str, DiffOp]:
    m = kit.param("m")
    ops = {"Xi": kit.const(1), "H": kit.const(kit.p_squared() / (2 * m) + kit.param("a"))}
    ops.update(kit.vector("P", kit.p))
    ops.update(kit.vector("K", lambda i: kit.d(i).scale(m)))
    ops.update(kit.vector("J", kit.angular))
    return ops


def _nh_deformed(kit: _Kit) -> Dict[str, DiffOp]:
    m, lam = kit.param("m"), kit.param("λ")
    ops = {"H": kit.euler().scale(lam)}
    ops.update(kit.vector("P", lambda i: kit.d(i).scale(lam * m)))
    ops.update(kit.vector("K", lambda i: kit.d(i).scale(m)))
    ops.update(kit.vector("J", kit.angular))
    return ops


def _boost(kit: _Kit, i: int) -> DiffOp:
    """γ(ω∂_i + (p×S)_i/(mc + ω))."""
    omega = kit.field.omega
    denominator = kit.field.const(kit.field.mass_term) + omega
    return (kit.const(omega).then_partial(i) + kit.p_cross_s(i).scale(1 / denominator)).scale(kit.param("γ"))


def _poincare_massive(kit: _Kit) -> Dict[str, DiffOp]:
    ops = {"H": kit.const(kit.param("c") * kit.field.omega)}
    ops.update(kit.vector("P", kit.p))
    ops.update(kit.vector("K", lambda i: _boost(kit, i)))
    ops.update(kit.vector("J", kit.angular))
    return ops


def _ads_deformed(kit: _Kit) -> Dict[str, DiffOp]:
    m, c, lam = kit.param("m"), kit.param("c"), kit.param("λ")
    omega = kit.field.omega
    euler = kit.euler()
    mc2 = m * c * c

    def translation(i: int) -> DiffOp:
        twist = kit.p_cross_s(i).scale(1 / (mc2 + c * omega))
        return (euler.scale(kit.field.p(i) / mc2) + kit.d(i).scale(m) - twist).scale(lam)

    ops = {"H": euler.scale(lam * omega / (m * c))}
    ops.update(kit.vector("P", translation))
    ops.update(kit.vector("K", lambda i: _boost(kit, i)))
    ops.update(kit.vector("J", kit.angular))
    return ops


@dataclass(frozen=True)
class Realization:
    name: str
    algebra: str
    build: Callable[[_Kit], Dict[str, DiffOp]]
    extra: Tuple[str, ...] = ("m",)
    massive: bool = False
    description: str = ""


REALIZATIONS: Dict[str, Realization] = {
    r.name: r for r in (
        Realization("galilei-bacry", "galilei-extended", _galilei_bacry, ("m", "a"),
                    description="H = p^2/(2m) + a, K = m∂, Xi = 1"),
        Realization("nh-deformed", "nh-minus", _nh_deformed,
                    description="H' = λ(p·∂ + 3/2), P' = λm∂ on the Galilei momenta"),
        Realization("poincare-massive", "poincare", _poincare_massive, massive=True,
                    description="H = cω with ω^2 = p^2 + m^2c^2, spin s"),
        Realization("ads-deformed", "ads", _ads_deformed, massive=True,
                    description="(anti-)de Sitter generators on the massive Poincaré momenta"),
    )
}


def _momentum_context(defn: AlgebraDef, extra: Sequence[str], gaussian: bool) -> ParamContext:
    declared = {p.name for p in defn.param_objects}
    params = list(defn.param_objects)
    for name in list(extra) + list(MOMENTA):
        if name not in declared:
            params.append(Param(name))
            declared.add(name)
    context = ParamContext(params)
    if gaussian or context.needs_gaussian:
        context = context.gaussian_twin()
    return context


def build_rep(name: str, spin: SpinLike = "0", kappa_sign: Optional[str] = None,
              extra_params: Sequence[str] = ()) -> Representation:
    """Realize the named representation; ``kappa_sign`` picks the curvature sibling of its algebra."""
    realization = REALIZATIONS.get(name)
    if realization is None:
        raise RepresentationError(f"unknown representation {name!r}; known: {', '.join(REALIZATIONS)}")
    s = parse_spin(spin)
    target = with_kappa_sign(realization.algebra, kappa_sign) if kappa_sign else realization.algebra
    defn = catalog_get(target)
    scalars = _momentum_context(defn, realization.extra + tuple(extra_params), needs_gaussian(s))
    mass_term = scalars.gen("m") * scalars.gen("c") if realization.massive else None
    field_ = MomentumField(scalars, mass_term)
    kit = _Kit(field_, s)
    operators = realization.build(kit)
    missing = [g for g in defn.generators if g not in operators]
    if missing:
        raise RepresentationError(f"{name} leaves {', '.join(missing)} of {defn.name} unrealized")
    logger.info("realized %s of %s at spin %s over %r", name, defn.name, s, scalars)
    return Representation(name, defn, field_, s, operators, kit.spin_blocks)


def _coefficient_map(element: Element, rep: Representation,
                     bindings: Optional[Mapping[str, Binding]]) -> Callable[[Scalar], CoeffFn]:
    source = element.algebra.scalars
    target = rep.scalars
    images = {}
    for key, value in (bindings or {}).items():
        images[key] = parse_scalar(value, target) if isinstance(value, str) else target.convert(value)

    def coefficient(value: Scalar) -> CoeffFn:
        if images:
            return rep.field.const(source.substitute(value, images, target=target))
        return rep.field.const(target.convert(value))

    return coefficient


def substitute_rep(element: Element, rep: Representation,
                   bindings: Optional[Mapping[str, Binding]] = None) -> DiffOp:
    """Image of an enveloping-algebra element, generators matched by name.

    ``bindings`` fixes free parameters of the element's field that the
    representation does not declare, e.g. {"α1": "λ/(2*m)", "ξ": "1"}.
    """
    algebra = element.algebra
    if algebra.inverses:
        raise RepresentationError("elements with formal inverses have no operator image")
    coefficient = _coefficient_map(element, rep, bindings)
    powers: Dict[Tuple[str, int], DiffOp] = {}
    result = DiffOp.zero(rep.field, rep.size)
    for monomial, coeff in element.terms.items():
        op = DiffOp.identity(rep.field, rep.size)
        for index, exp in enumerate(monomial):
            if not exp:
                continue
            generator = algebra.generators[index]
            key = (generator, exp)
            if key not in powers:
                powers[key] = rep[generator] ** exp
            op = op.compose(powers[key])
        result = result + op.scale(coefficient(coeff))
    return result


def _casimir_element(rep: Representation, name: str) -> Element:
    for casimir, element, _ in rep.algebra.casimir_elements:
        if casimir == name:
            return element
    raise RepresentationError(f"{rep.algebra.name} has no Casimir {name!r}")


def casimir_eigenvalue(rep: Representation, casimir: Union[str, Element]) -> CoeffFn:
    """The constant a Casimir acts by; RepresentationError when it is not a multiple of 1."""
    element = _casimir_element(rep, casimir) if isinstance(casimir, str) else casimir
    op = substitute_rep(element, rep)
    value = op.scalar_value()
    if value is None or not value.is_constant:
        raise RepresentationError(f"{casimir if isinstance(casimir, str) else 'element'} acts as {op.render()}")
    return value


def casimir_values(rep: Representation) -> List[CasimirValue]:
    values = []
    for name, element, _ in rep.algebra.casimir_elements:
        try:
            values.append(CasimirValue(name, casimir_eigenvalue(rep, element)))
        except RepresentationError as exc:
            values.append(CasimirValue(name, witness=str(exc)))
    return values


def bracket_checks(rep: Representation) -> List[IdentityCheck]:
    """Every [X, Y] of the algebra against the commutator of the operators."""
    uea = rep.algebra.uea
    table = uea.bracket_table()
    checks = []
    for left, right in combinations(rep.algebra.generators, 2):
        expected = substitute_rep(table.get((left, right), uea.zero), rep)
        residual = diffop_commutator(rep[left], rep[right]) - expected
        label = f"[{left},{right}]"
        if residual.is_zero:
            checks.append(IdentityCheck(label, True))
        else:
            checks.append(IdentityCheck(label, False, residual.render()))
            logger.warning("%s: %s fails with residual %s", rep.name, label, residual.render())
    return checks


def check_rep(rep: Representation) -> Tuple[List[IdentityCheck], List[CasimirValue]]:
    return bracket_checks(rep), casimir_values(rep)
