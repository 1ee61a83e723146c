# Relativistic observables on the Galilei enveloping algebra and deformed Casimirs
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .algebras import AlgebraDef
from .algebras.expressions import Name, Vector
from .config import CasimirValue, DeformationResult, IdentityCheck, RootDetermination
from .errors import DeformationError
from .pbw import UEA, Element
from .scalars import Param, ParamContext, Scalar
from .steps.context import parse_scalar

logger = logging.getLogger(__name__)

Observable = Union[Element, Vector]
EPSILON = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _cross(a: Sequence[Element], b: Sequence[Element]) -> Vector:
    return Vector((a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]))


def _dot(a: Sequence[Element], b: Sequence[Element]) -> Element:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _scale(v: Sequence[Element], factor) -> Vector:
    return Vector(x.scale(factor) for x in v)


def transport(element: Element, target: UEA, coefficient: Callable[[Scalar], Scalar]) -> Element:
    """Copy ``element`` into ``target`` by generator name, mapping every coefficient."""
    source = element.algebra
    result = target.zero
    for monomial, coeff in element.terms.items():
        names: List[str] = []
        for index, exp in enumerate(monomial):
            names.extend([source.generators[index]] * exp)
        result = result + target.word(names, coefficient(coeff))
    return result


@dataclass
class ObservableSet:
    """Named operators in the Galilei enveloping algebra localized at H.

    Identities are decided modulo P^2 = u^2 and W^2 = w^2 after clearing
    the inverse of H from the left.
    """
    algebra: UEA
    plain: UEA
    scalars: ParamContext
    center: List[Tuple[Element, Scalar]]
    elements: Dict[str, Observable] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Observable:
        return self.elements[name]

    def residue(self, element: Element) -> Element:
        """Reduced form of H^n X, where n clears every inverse of H in X."""
        inverse = self.algebra.index["H^-1"]
        n = max((m[inverse] for m in element.terms), default=0)
        cleared = self.algebra.gen("H") ** n * element
        lifted = self.plain.lift(cleared)
        return self.plain.reduce_mod_center(lifted, self.center).reduced

    def vanishes(self, element: Element) -> bool:
        return self.residue(element).is_zero

    def check(self, name: str, lhs: Observable, rhs: Observable) -> IdentityCheck:
        if isinstance(lhs, Vector) != isinstance(rhs, Vector):
            raise DeformationError(f"{name}: cannot compare a vector with a scalar")
        pairs = list(zip(lhs, rhs)) if isinstance(lhs, Vector) else [(lhs, rhs)]
        for index, (a, b) in enumerate(pairs):
            residue = self.residue(a - b)
            if not residue.is_zero:
                label = f"{name}[{index + 1}]" if len(pairs) > 1 else name
                logger.info("%s fails", label)
                return IdentityCheck(name, False, f"{label}: {residue}")
        return IdentityCheck(name, True)

    def render(self, name: str) -> str:
        value = self.elements[name]
        if isinstance(value, Vector):
            return "(" + ", ".join(self.algebra.render(v) for v in value) + ")"
        return self.algebra.render(value)


def _primitive_images(result: DeformationResult, scalars: ParamContext) -> Dict[str, Scalar]:
    images = {}
    for name, text in result.context.spec.primitives:
        value = parse_scalar(text, scalars)
        if not value:
            raise DeformationError(f"primitive for {name} vanishes; observables need nonzero eigenvalues")
        images[name] = value
    return images


def build_observables(result: Optional[DeformationResult] = None) -> ObservableSet:
    """Operators derived from the Galilei -> Poincaré deformation.

    The seed constants take their positive roots and the eigenvalues c1, c2
    become u^2, w^2.
    """
    if result is None:
        from .steps import deform
        result = deform("galilei", "poincare", root_determination=RootDetermination.POSITIVE)
    if (result.source, result.target) != ("galilei", "poincare"):
        raise DeformationError(f"observables are built from galilei -> poincare, not {result.source} -> {result.target}")
    if not result.closed or set(result.roots) != set(result.context.unknowns):
        raise DeformationError("observables need a closed deformation with positive roots")
    galilei: AlgebraDef = result.context.source
    poincare: AlgebraDef = result.context.target
    merged = result.context.scalars
    scalars = ParamContext(list(poincare.param_objects) + [Param("u"), Param("w")])
    plain = galilei.build_uea(scalars)
    algebra = plain.adjoin_inverse("H")

    images = dict(result.roots)
    images.update(_primitive_images(result, scalars))
    images = {name: scalars.convert(value) for name, value in images.items()}

    def coefficient(value: Scalar) -> Scalar:
        return merged.substitute(value, images, target=scalars)

    u, w, c, kappa = scalars.gen("u"), scalars.gen("w"), scalars.gen("c"), scalars.gen("κ2")
    center = [(galilei.element(galilei.casimir("C1").expr, plain), u ** 2),
              (galilei.element(galilei.casimir("C2").expr, plain), w ** 2)]

    def vector(prefix: str) -> Vector:
        return Vector(transport(result.generators[f"{prefix}{i}"], algebra, coefficient) for i in (1, 2, 3))

    H_inv = algebra.inverse("H")
    P = Vector(algebra.gen(f"P{i}") for i in (1, 2, 3))
    K = Vector(algebra.gen(f"K{i}") for i in (1, 2, 3))
    J = Vector(algebra.gen(f"J{i}") for i in (1, 2, 3))
    W = _cross(K, P)

    P_new, K_new, J_new = vector("P"), vector("K"), vector("J")
    H_new = transport(result.generators["H"], algebra, coefficient)
    u_p = _scale(P, 1 / u)
    u_w = _scale(W, 1 / w)
    u_pw = _scale(_cross(P, W), 1 / (u * w))
    Q = Vector((H_inv * k + k * H_inv).scale(c ** 2 / 2) for k in K_new)
    obs = ObservableSet(algebra, plain, scalars, center)
    obs.elements.update({
        "H'": H_new, "P'": P_new, "K'": K_new, "J'": J_new,
        "W'0": _dot(J_new, P_new),
        "W'": Vector((H_new * j).scale(kappa) + x for j, x in zip(J_new, _cross(K_new, P_new))),
        "u_p": u_p, "u_w": u_w, "u_pw": u_pw,
        "λ_p": _dot(J, u_p), "λ_w": _dot(J, u_w), "λ_pw": _dot(J, u_pw),
        "Q'": Q,
        "Σ'": Vector(j - x for j, x in zip(J_new, _cross(Q, P_new))),
        "V'": Vector(algebra.commutator(q, H_new) for q in Q),
    })
    logger.info("built %d observables over %r", len(obs.elements), scalars)
    return obs


def check_vector_form(obs: ObservableSet) -> List[IdentityCheck]:
    """Compact vector forms of the new generators and the Pauli-Lubanski components."""
    c = obs.scalars.gen("c")
    H = obs["H'"]
    return [
        obs.check("c P' = H u_pw", _scale(obs["P'"], c), Vector(H * x for x in obs["u_pw"])),
        obs.check("c^2 P'^2 = H'^2", _dot(obs["P'"], obs["P'"]).scale(c ** 2), H * H),
        obs.check("c^2 K' x P' = H J - H λ_pw u_pw", _scale(_cross(obs["K'"], obs["P'"]), c ** 2),
                  Vector(H * j - H * obs["λ_pw"] * x for j, x in zip(obs["J'"], obs["u_pw"]))),
        obs.check("W'0 = H λ_pw / c", obs["W'0"], (H * obs["λ_pw"]).scale(1 / c)),
        obs.check("W' = -W'0 u_pw / c", obs["W'"], Vector((obs["W'0"] * x).scale(-1 / c) for x in obs["u_pw"])),
        obs.check("c^2 W'^2 = W'0^2", _dot(obs["W'"], obs["W'"]).scale(c ** 2), obs["W'0"] * obs["W'0"]),
    ]


def check_so3_helicities(obs: ObservableSet) -> List[IdentityCheck]:
    comm = obs.algebra.commutator
    lp, lw, lpw = obs["λ_p"], obs["λ_w"], obs["λ_pw"]
    return [
        obs.check("[λ_w, λ_p] = λ_pw", comm(lw, lp), lpw),
        obs.check("[λ_pw, λ_w] = λ_p", comm(lpw, lw), lp),
        obs.check("[λ_p, λ_pw] = λ_w", comm(lp, lpw), lw),
        obs.check("[λ_p, λ_p] = 0", comm(lp, lp), obs.algebra.zero),
        obs.check("[λ_pw, H] = 0", comm(lpw, obs["H'"]), obs.algebra.zero),
    ]


def check_position_algebra(obs: ObservableSet) -> List[IdentityCheck]:
    """Canonical relations of the Bacry position operators and the kinematical observables."""
    algebra = obs.algebra
    comm = algebra.commutator
    c = obs.scalars.gen("c")
    Q, P, J = obs["Q'"], obs["P'"], obs["J'"]
    H_inv = algebra.inverse("H")
    checks = []
    for i in range(3):
        for j in range(3):
            expected = algebra.one if i == j else algebra.zero
            checks.append(obs.check(f"[Q'{i + 1}, P'{j + 1}] = {int(i == j)}", comm(Q[i], P[j]), expected))
    for i, j, k in EPSILON:
        checks.append(obs.check(f"[J'{i + 1}, Q'{j + 1}] = Q'{k + 1}", comm(J[i], Q[j]), Q[k]))
        rhs = (H_inv * H_inv * (Q[i] * P[j] - Q[j] * P[i] - J[k])).scale(c ** 2)
        checks.append(obs.check(f"[Q'{i + 1}, Q'{j + 1}] = c^2 H^-2 (Q'{i + 1}P'{j + 1} - Q'{j + 1}P'{i + 1} - J'{k + 1})",
                                comm(Q[i], Q[j]), rhs))
    sigma = Vector(j - obs["λ_p"] * up - obs["λ_w"] * uw for j, up, uw in zip(J, obs["u_p"], obs["u_w"]))
    checks.append(obs.check("Σ' = J - λ_p u_p - λ_w u_w", obs["Σ'"], sigma))
    return checks


def velocity_operator(obs: ObservableSet) -> Tuple[Vector, List[IdentityCheck]]:
    c = obs.scalars.gen("c")
    V = obs["V'"]
    H_inv = obs.algebra.inverse("H")
    checks = [
        obs.check("V' = c u_pw", V, _scale(obs["u_pw"], c)),
        obs.check("V' = c^2 P' H^-1", V, Vector((p * H_inv).scale(c ** 2) for p in obs["P'"])),
        obs.check("V'^2 = c^2", _dot(V, V), obs.algebra.scalar(c ** 2)),
    ]
    return V, checks


def run_observable_suite(obs: ObservableSet) -> List[IdentityCheck]:
    checks = check_vector_form(obs) + check_so3_helicities(obs) + check_position_algebra(obs)
    checks += velocity_operator(obs)[1]
    return checks


def evaluate_deformed_casimirs(result: DeformationResult, names: Optional[Sequence[str]] = None) -> List[CasimirValue]:
    """Target Casimirs in the deformed generators, reduced to scalars where possible."""
    context = result.context
    target = context.target
    values = []
    for decl in target.casimirs:
        if names is not None and decl.name not in names:
            continue
        element = target.element(decl.expr, context.algebra, bindings=result.generators, simplify=context.reduce)
        reduced = context.reduce(element)
        if reduced.is_scalar:
            values.append(CasimirValue(decl.name, reduced.scalar_value))
        else:
            logger.warning("%s does not reduce to a scalar", decl.name)
            values.append(CasimirValue(decl.name, witness=str(reduced)))
    return values


def evaluate_deformed_vector(result: DeformationResult, name: str) -> Vector:
    """A vector-valued let of the target (W, say) in the deformed generators, reduced."""
    context = result.context
    value = context.target.evaluate(Name(name), context.algebra, bindings=result.generators, simplify=context.reduce)
    if not isinstance(value, Vector):
        raise DeformationError(f"{name} is not a vector of {context.target.name}")
    return Vector(context.reduce(v) for v in value)


def singular_locus(value: Scalar, eigenvalue: str, locus: Scalar, scalars: ParamContext) -> Scalar:
    """``value`` with the free ``eigenvalue`` set to ``locus``."""
    return scalars.substitute(value, {eigenvalue: locus})
