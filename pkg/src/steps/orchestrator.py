# Deformation orchestrator
import asyncio
import logging
from typing import Any, Dict, Optional

from ..algebras import AlgebraDef
from ..chains import DeformationSpec, get_chain
from ..config import DEFAULT_SETTINGS, DeformationResult, RootDetermination, Settings
from ..routing import DeformationRouter
from .closure import ClosureStep
from .constraints import ConstraintStep
from .context import DeformationContext, build_context
from .extraction import ExtractionStep
from .generators import GeneratorStep
from .seed import SeedStep
from .verification import VerificationStep

logger = logging.getLogger(__name__)


class DeformationOrchestrator:
    """Main orchestrator running one deformation through every step."""

    def __init__(self, settings: Settings = DEFAULT_SETTINGS):
        self.settings = settings
        self.router = DeformationRouter()
        self.steps = self._initialize_steps()

    def _initialize_steps(self) -> Dict[str, Any]:
        return {
            "extraction": ExtractionStep(self.settings),
            "seed": SeedStep(self.settings),
            "generators": GeneratorStep(self.settings),
            "closure": ClosureStep(self.settings),
            "constraints": ConstraintStep(self.settings),
            "verification": VerificationStep(self.settings),
        }

    async def adeform(self, spec: DeformationSpec,
                      root_determination: RootDetermination = RootDetermination.NONE,
                      source: Optional[AlgebraDef] = None, target: Optional[AlgebraDef] = None) -> DeformationResult:
        context = build_context(spec, self.settings, root_determination, source, target)
        await self.router.route_by_strategy(self.settings.routing, context, self.steps)
        result = self._compile_result(context)
        logger.info("%s -> %s: %s", spec.source, spec.target, result.status.value)
        return result

    def _compile_result(self, context: DeformationContext) -> DeformationResult:
        return DeformationResult(
            source=context.source.name,
            target=context.target.name,
            kappa=context.spec.kappa,
            seed=context.seed,
            generators=context.generators,
            expansions=context.expansions,
            constraints=context.constraints,
            relations=context.relations,
            unsolved=context.unsolved,
            leftovers=context.leftovers,
            records=context.records,
            preconditions=list(context.spec.preconditions),
            notes=context.notes,
            roots=context.roots,
            context=context,
        )


def run_deformation(spec: DeformationSpec, settings: Settings = DEFAULT_SETTINGS,
                    root_determination: RootDetermination = RootDetermination.NONE,
                    source: Optional[AlgebraDef] = None, target: Optional[AlgebraDef] = None) -> DeformationResult:
    return asyncio.run(DeformationOrchestrator(settings).adeform(spec, root_determination, source, target))


def deform(source: str, target: str, **kwargs: Any) -> DeformationResult:
    """Run a registered chain by algebra names."""
    return run_deformation(get_chain(source, target), **kwargs)
