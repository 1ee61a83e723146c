# Shared state handed from one deformation step to the next
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..algebras import AlgebraDef, catalog_get
from ..algebras.expressions import to_sympy
from ..algebras.parser import parse_expression
from ..chains import DeformationSpec
from ..config import DEFAULT_SETTINGS, BracketRecord, RootDetermination, Settings
from ..errors import DeformationError, ScalarError
from ..pbw import UEA, Element
from ..routing import FanOut, run_in_order
from ..scalars import Param, ParamContext, Relation, Scalar, apply_relations

logger = logging.getLogger(__name__)


@dataclass
class DeformationContext:
    """Everything the pipeline knows about one deformation run.

    ``scalars`` merges the parameters of both algebras with the seed
    constants and the eigenvalue symbols; ``algebra`` is the source
    enveloping algebra over that field and ``center`` pairs the source
    Casimirs with their eigenvalues.
    """
    spec: DeformationSpec
    source: AlgebraDef
    target: AlgebraDef
    scalars: ParamContext
    algebra: UEA
    center: List[Tuple[Element, Scalar]]
    settings: Settings = DEFAULT_SETTINGS
    root_determination: RootDetermination = RootDetermination.NONE
    fan_out: FanOut = run_in_order
    expansions: Dict[str, List[Element]] = field(default_factory=dict)
    seed: Optional[Element] = None
    generators: Dict[str, Element] = field(default_factory=dict)
    records: List[BracketRecord] = field(default_factory=list)
    constraints: List[Scalar] = field(default_factory=list)
    relations: List[Relation] = field(default_factory=list)
    unsolved: List[Scalar] = field(default_factory=list)
    leftovers: List[Scalar] = field(default_factory=list)
    roots: Dict[str, Scalar] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def unknowns(self) -> Tuple[str, ...]:
        return self.spec.alphas

    def reduce(self, element: Element) -> Element:
        """Central reduction followed by the solved relations on every coefficient."""
        reduced = self.algebra.reduce_mod_center(element, self.center).reduced
        if not self.relations:
            return reduced
        return reduced.map_coefficients(lambda c: apply_relations(c, self.relations, self.scalars))


def _algebra_params(defn: AlgebraDef) -> List[Param]:
    return list(defn.param_objects)


def build_context(spec: DeformationSpec, settings: Settings = DEFAULT_SETTINGS,
                  root_determination: RootDetermination = RootDetermination.NONE,
                  source: Optional[AlgebraDef] = None, target: Optional[AlgebraDef] = None) -> DeformationContext:
    source = source or catalog_get(spec.source)
    target = target or catalog_get(spec.target)
    missing = [g for g in target.generators if g not in source.generators]
    if missing:
        raise DeformationError(f"{target.name} generators {', '.join(missing)} do not occur in {source.name}")
    if spec.kappa not in {p.name for p in target.params}:
        raise DeformationError(f"{target.name} declares no curvature {spec.kappa!r}")
    if spec.rank > len(target.casimirs):
        raise DeformationError(f"rank {spec.rank} exceeds the {len(target.casimirs)} Casimirs of {target.name}")
    params = _algebra_params(source) + _algebra_params(target)
    params += [Param(alpha) for alpha in spec.alphas]
    params += [Param(eigenvalue) for _, eigenvalue in spec.relations]
    scalars = ParamContext(params)
    try:
        algebra = source.build_uea(scalars)
    except ScalarError:
        scalars = scalars.gaussian_twin()
        algebra = source.build_uea(scalars)
    center = [(source.element(source.casimir(name).expr, algebra), scalars.gen(eigenvalue))
              for name, eigenvalue in spec.relations]
    logger.info("deformation %s -> %s over %r", spec.source, spec.target, scalars)
    return DeformationContext(spec, source, target, scalars, algebra, center, settings, root_determination)


def parse_scalar(text: str, scalars: ParamContext) -> Scalar:
    """Scalar from source text such as ``-m^2/γ^2``."""
    return scalars.from_expr(to_sympy(parse_expression(text)))
