# Seed step: the first-order Casimir terms combined with unknown constants
import logging
from typing import Any, Dict, List, Mapping, Sequence

from ..errors import DeformationError
from ..pbw import Element
from .context import DeformationContext

logger = logging.getLogger(__name__)


def build_seed(first_order: Sequence[Element], alphas: Sequence[str]) -> Element:
    """Σ α_s J_s^(1) in the algebra of the given elements."""
    if len(first_order) != len(alphas):
        raise DeformationError(f"{len(first_order)} first-order terms for {len(alphas)} constants")
    if not first_order:
        raise DeformationError("a seed needs at least one Casimir")
    algebra = first_order[0].algebra
    seed = algebra.zero
    for term, alpha in zip(first_order, alphas):
        seed = seed + term.scale(algebra.scalars.gen(alpha))
    return seed


def first_order_terms(expansions: Mapping[str, List[Element]]) -> List[Element]:
    return [expansion[1] for expansion in expansions.values()]


class SeedStep:
    def __init__(self, settings=None):
        self.settings = settings

    async def arun(self, context: DeformationContext) -> Dict[str, Any]:
        context.seed = build_seed(first_order_terms(context.expansions), context.unknowns)
        if context.seed.is_zero:
            context.notes.append(f"{context.spec.kappa} does not occur in the Casimirs of {context.target.name}")
        logger.info("seed has %d terms", len(context.seed.terms))
        return {"seed": context.seed}
