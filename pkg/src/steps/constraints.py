# Constraint step: conditions on the seed constants and their solution
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.polyerrors import PolynomialError

from ..errors import UnsolvedConstraint
from ..scalars import ParamContext, Relation, Scalar, apply_relations, render_scalar, solve_one
from .context import DeformationContext

logger = logging.getLogger(__name__)

TRIVIAL, LEFTOVER, EQUATION = "trivial", "leftover", "equation"


@dataclass
class ConstraintSolution:
    constraints: List[Scalar] = field(default_factory=list)
    relations: List[Relation] = field(default_factory=list)
    unsolved: List[Scalar] = field(default_factory=list)
    leftovers: List[Scalar] = field(default_factory=list)


def _indices(unknowns: Sequence[str], scalars: ParamContext) -> Dict[str, int]:
    return {name: scalars.free_names.index(name) for name in unknowns if name in scalars.free_names}


def essential_factor(equation: Scalar, unknowns: Sequence[str], scalars: ParamContext) -> Tuple[str, Optional[Scalar]]:
    """Strip an equation to the factors that can vanish.

    Factors free of unknowns are generic nonzero parameters and monomial
    factors in the unknowns are nonzero by assumption; the remaining factors
    are multiplied back together without multiplicities.
    """
    numer = scalars.convert(equation).numer
    if not numer:
        return TRIVIAL, None
    indices = set(_indices(unknowns, scalars).values())
    try:
        _, factors = numer.factor_list()
    except (NotImplementedError, PolynomialError):
        factors = [(numer, 1)]
    kept = numer.ring.one
    for factor, _ in factors:
        used = {i for monom in factor.itermonoms() for i, e in enumerate(monom) if e}
        if not used & indices or len(factor.terms()) == 1:
            continue
        kept *= factor
    if kept == numer.ring.one:
        return LEFTOVER, scalars.convert(equation)
    if not scalars.gaussian:
        _, kept = kept.primitive()
        if kept.LC < 0:
            kept = -kept
    return EQUATION, scalars.field(kept)


def _unknown_degree(equation: Scalar, indices: Iterable[int]) -> int:
    indices = list(indices)
    return max((sum(monom[i] for i in indices) for monom in equation.numer.itermonoms()), default=0)


def _essentials(equations: Iterable[Scalar], unknowns: Sequence[str], scalars: ParamContext,
                leftovers: List[Scalar]) -> List[Scalar]:
    kept: List[Scalar] = []
    for equation in equations:
        kind, value = essential_factor(equation, unknowns, scalars)
        if kind == EQUATION and value not in kept:
            kept.append(value)
        elif kind == LEFTOVER and value not in leftovers:
            leftovers.append(value)
    return kept


def solve_constraints(equations: Iterable[Scalar], unknowns: Sequence[str], scalars: ParamContext) -> ConstraintSolution:
    """Solve equations of the supported shapes one unknown at a time.

    Binomial equations in a single unknown go first; otherwise the equation of
    lowest degree in the unknowns is solved linearly for the first unknown
    without a relation.  Solved relations are applied to the remaining equations
    until nothing more can be solved.
    """
    solution = ConstraintSolution()
    pending = _essentials(equations, unknowns, scalars, solution.leftovers)
    solution.constraints = list(pending)
    indices = _indices(unknowns, scalars)
    while pending:
        solved = {r.unknown for r in solution.relations}
        relation = _single_unknown(pending, unknowns, solved, scalars) or _linear(pending, unknowns, solved, scalars, indices)
        if relation is None:
            break
        logger.info("solved %s", relation.render())
        solution.relations.append(relation)
        reduced = [apply_relations(eq, solution.relations, scalars) for eq in pending]
        pending = _essentials(reduced, unknowns, scalars, solution.leftovers)
    solution.unsolved = pending
    return solution


def _single_unknown(pending: Sequence[Scalar], unknowns: Sequence[str], solved: set,
                    scalars: ParamContext) -> Optional[Relation]:
    for equation in pending:
        present = [u for u in unknowns if scalars.depends_on(equation, u)]
        if len(present) != 1 or present[0] in solved:
            continue
        try:
            return solve_one(equation, present[0], scalars)
        except UnsolvedConstraint:
            continue
    return None


def _linear(pending: Sequence[Scalar], unknowns: Sequence[str], solved: set,
            scalars: ParamContext, indices: Dict[str, int]) -> Optional[Relation]:
    ranked = sorted(enumerate(pending), key=lambda item: (_unknown_degree(item[1], indices.values()), item[0]))
    for _, equation in ranked:
        for unknown in unknowns:
            if unknown in solved or unknown not in indices:
                continue
            if equation.numer.degree(indices[unknown]) == 1:
                return solve_one(equation, unknown, scalars)
    return None


class ConstraintStep:
    def __init__(self, settings=None):
        self.settings = settings

    async def arun(self, context: DeformationContext) -> Dict[str, Any]:
        equations: List[Scalar] = []
        for record in context.records:
            for coeff in record.reduced.terms.values():
                if coeff not in equations:
                    equations.append(coeff)
        solution = solve_constraints(equations, context.unknowns, context.scalars)
        context.constraints = solution.constraints
        context.relations = solution.relations
        context.unsolved = solution.unsolved
        context.leftovers = solution.leftovers
        for equation in solution.unsolved:
            logger.warning("unsolved constraint %s = 0", render_scalar(equation))
        return {"relations": solution.relations, "unsolved": solution.unsolved, "leftovers": solution.leftovers}
