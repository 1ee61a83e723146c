# Verification step: residuals after the solved relations, plus optional roots
import logging
from typing import Any, Dict, Mapping, Sequence

from ..algebras.expressions import names_in, to_sympy
from ..algebras.parser import parse_expression
from ..config import BracketRecord, RootDetermination, Status
from ..errors import DeformationError, ScalarError
from ..scalars import Param, ParamContext, Relation, Scalar, apply_relations, positive_root, render_scalar
from .context import DeformationContext

logger = logging.getLogger(__name__)


def classify(record: BracketRecord, relations: Sequence[Relation], unknowns: Sequence[str],
             scalars: ParamContext) -> BracketRecord:
    """Fill in the final residual and status of one record."""
    final = record.reduced.map_coefficients(lambda c: apply_relations(c, relations, scalars))
    record.final = final
    if final.is_zero:
        record.status = Status.CLOSED
    elif any(scalars.depends_on(c, u) for c in final.terms.values() for u in unknowns):
        record.status = Status.UNSOLVED
    else:
        record.status = Status.FAILED
    return record


def root_context(scalars: ParamContext, primitives: Mapping[str, str]) -> ParamContext:
    """Gaussian context with the symbols the primitives introduce."""
    fresh = set()
    for text in primitives.values():
        fresh |= names_in(parse_expression(text))
    fresh -= set(scalars.params) | {"I"}
    return scalars.extend([Param(name) for name in sorted(fresh)]).gaussian_twin()


def determine_roots(relations: Sequence[Relation], scalars: ParamContext,
                    primitives: Mapping[str, str]) -> Dict[str, Scalar]:
    """Roots of the solved unknowns with radicands written through their primitives.

    Quadratic relations are rooted first; linear ones then take the roots found.
    """
    context = root_context(scalars, primitives)
    images: Dict[str, Scalar] = {name: context.from_expr(to_sympy(parse_expression(text)))
                                 for name, text in primitives.items()}
    roots: Dict[str, Scalar] = {}
    for relation in sorted(relations, key=lambda r: -r.power):
        value = context.substitute(context.convert(relation.value), {**images, **roots})
        root = positive_root(Relation(relation.unknown, relation.power, value, relation.equation), context)
        roots[relation.unknown] = root
    return roots


class VerificationStep:
    def __init__(self, settings=None):
        self.settings = settings

    async def arun(self, context: DeformationContext) -> Dict[str, Any]:
        for record in context.records:
            classify(record, context.relations, context.unknowns, context.scalars)
        failed = [r.bracket_id for r in context.records if r.status is not Status.CLOSED]
        if failed:
            logger.info("brackets left open: %s", ", ".join(failed))
            if any(r.status is Status.FAILED for r in context.records):
                context.notes.append(f"new generators do not span {context.target.name}")
        if context.root_determination is RootDetermination.POSITIVE and context.relations:
            try:
                context.roots = determine_roots(context.relations, context.scalars, dict(context.spec.primitives))
            except ScalarError as exc:
                raise DeformationError(f"positive root determination failed: {exc}") from exc
            for name, value in context.roots.items():
                logger.info("%s = %s", name, render_scalar(value))
        return {"records": context.records, "roots": context.roots}
