# Extraction step: splits target Casimirs into powers of the curvature
import logging
from typing import Any, Dict, List, Tuple

from ..errors import DeformationError
from ..pbw import Element
from ..scalars import ParamContext, Scalar, render_scalar
from .context import DeformationContext, parse_scalar

logger = logging.getLogger(__name__)


def _curvature_monomial(kappa: str, scalars: ParamContext) -> Tuple[Scalar, int, int]:
    """Write κ as c*p^e; returns (c, index of p, e)."""
    value = scalars.gen(kappa)
    numer, denom = value.numer, value.denom
    terms = numer.terms()
    if len(terms) != 1 or not denom.is_ground:
        raise DeformationError(f"curvature {kappa} = {render_scalar(value)} is not a monomial")
    monom, coeff = terms[0]
    used = [(i, e) for i, e in enumerate(monom) if e]
    if len(used) != 1:
        raise DeformationError(f"curvature {kappa} = {render_scalar(value)} must be a power of one parameter")
    index, exp = used[0]
    ring = numer.ring
    c = scalars.field(ring.ground_new(coeff)) / scalars.field(denom)
    return c, index, exp


def extract_kappa_expansion(element: Element, kappa: str, scalars: ParamContext) -> List[Element]:
    """Coefficients J^(0), J^(1), ... of ``element`` as a polynomial in the curvature κ.

    Every coefficient must be polynomial in κ: the denominators may not involve
    the parameter κ is a power of, and its exponents must be multiples of the power.
    """
    c, index, exp = _curvature_monomial(kappa, scalars)
    name = scalars.free_names[index]
    algebra = element.algebra
    parts: Dict[int, Dict] = {}
    for monomial, coeff in element.terms.items():
        coeff = scalars.convert(coeff)
        numer, denom = coeff.numer, coeff.denom
        if denom.degree(index) > 0:
            raise DeformationError(f"coefficient {render_scalar(coeff)} is not polynomial in {kappa}")
        ring = numer.ring
        grouped: Dict[int, Dict] = {}
        for monom, ground in numer.terms():
            power, rest = divmod(monom[index], exp)
            if rest:
                raise DeformationError(f"{name}^{monom[index]} in {render_scalar(coeff)} is not a power of {kappa}")
            stripped = monom[:index] + (0,) + monom[index + 1:]
            grouped.setdefault(power, {})[stripped] = ground
        for power, poly_terms in grouped.items():
            part = scalars.field(ring.from_dict(poly_terms)) / scalars.field(denom) / c ** power
            parts.setdefault(power, {})[monomial] = part
    top = max(parts, default=0)
    expansion = [Element(algebra, parts.get(k, {})) for k in range(top + 1)]
    if len(expansion) < 2:
        expansion.append(algebra.zero)
    return expansion


class ExtractionStep:
    """Expands the first ``rank`` target Casimirs in the working algebra."""

    def __init__(self, settings=None):
        self.settings = settings

    async def arun(self, context: DeformationContext) -> Dict[str, Any]:
        spec = context.spec
        scales = [parse_scalar(text, context.scalars) for text in spec.casimir_scales]
        if any(not factor for factor in scales):
            raise DeformationError("Casimir scale factors must be nonzero")
        for position, decl in enumerate(context.target.casimirs[:spec.rank]):
            element = context.target.element(decl.expr, context.algebra)
            if position < len(scales):
                element = element.scale(scales[position])
            context.expansions[decl.name] = extract_kappa_expansion(element, spec.kappa, context.scalars)
            logger.debug("%s expands to order %d in %s", decl.name, len(context.expansions[decl.name]) - 1, spec.kappa)
        return {"expansions": context.expansions}
