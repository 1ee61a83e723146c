# Closure step: residuals of the target brackets among the new generators
import logging
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ..algebras import AlgebraDef
from ..algebras.expressions import Expr
from ..config import BracketRecord
from ..errors import DeformationError
from ..pbw import UEA, Element
from .context import DeformationContext

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


def bracket_rhs(target: AlgebraDef, left: str, right: str) -> Optional[Tuple[int, Expr]]:
    """Declared right-hand side of [left, right] with the orientation sign, or None."""
    for decl in target.brackets:
        if (decl.left, decl.right) == (left, right):
            return 1, decl.rhs
        if (decl.left, decl.right) == (right, left):
            return -1, decl.rhs
    return None


def closure_residuals(generators: Mapping[str, Element], target: AlgebraDef,
                      algebra: UEA) -> List[Tuple[Pair, Element]]:
    """[X', Y'] minus the target right-hand side written in the new generators."""
    return [(pair, bracket_residual(pair, generators, target, algebra))
            for pair in combinations(target.generators, 2)]


def bracket_residual(pair: Pair, generators: Mapping[str, Element], target: AlgebraDef, algebra: UEA) -> Element:
    missing = [name for name in target.generators if name not in generators]
    if missing:
        raise DeformationError(f"no deformed image for {', '.join(missing)}")
    left, right = pair
    value = algebra.commutator(generators[left], generators[right])
    declared = bracket_rhs(target, left, right)
    if declared is None:
        return value
    sign, rhs = declared
    expected = target.element(rhs, algebra, bindings=dict(generators))
    return value - expected if sign > 0 else value + expected


class ClosureStep:
    """Builds one record per target bracket, reduced modulo the source centre."""

    def __init__(self, settings=None):
        self.settings = settings

    async def arun(self, context: DeformationContext) -> Dict[str, Any]:
        pairs = list(combinations(context.target.generators, 2))

        def record(pair: Pair) -> BracketRecord:
            residual = bracket_residual(pair, context.generators, context.target, context.algebra)
            reduction = context.algebra.reduce_mod_center(residual, context.center)
            return BracketRecord(pair[0], pair[1], residual, reduction.reduced,
                                 tuple(reduction.cofactors), reduction.complete)

        context.records = await context.fan_out(record, pairs)
        nonzero = sum(1 for r in context.records if not r.reduced.is_zero)
        logger.info("%d of %d brackets leave a reduced residual", nonzero, len(context.records))
        return {"records": context.records}
