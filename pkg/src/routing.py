# Routing engine for the deformation pipeline
import asyncio
import logging
from typing import TYPE_CHECKING, Any, Awaitable, Callable, Dict, List, Sequence, TypeVar

from .config import RoutingStrategy, StepType

if TYPE_CHECKING:
    from .steps.context import DeformationContext

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")
FanOut = Callable[[Callable[[T], R], Sequence[T]], Awaitable[List[R]]]

PIPELINE = (
    StepType.EXTRACTION,
    StepType.SEED,
    StepType.GENERATORS,
    StepType.CLOSURE,
    StepType.CONSTRAINTS,
    StepType.VERIFICATION,
)


async def run_in_order(fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
    return [fn(item) for item in items]


async def run_in_threads(fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
    """One worker thread per item; results keep the input order."""
    return list(await asyncio.gather(*(asyncio.to_thread(fn, item) for item in items)))


class DeformationRouter:
    """Runs the pipeline steps under a routing strategy.

    Every strategy runs the steps in pipeline order; they differ in how the
    per-bracket work inside a step is fanned out.
    """

    async def route_by_strategy(self, strategy: RoutingStrategy, context: "DeformationContext",
                                steps: Dict[str, Any]) -> Dict[str, Any]:
        routing_methods = {
            RoutingStrategy.SEQUENTIAL: self._sequential_routing,
            RoutingStrategy.PARALLEL: self._parallel_routing,
        }
        logger.debug("routing %s", strategy.value)
        return await routing_methods[strategy](context, steps)

    async def _run(self, context: "DeformationContext", steps: Dict[str, Any]) -> Dict[str, Any]:
        results: Dict[str, Any] = {}
        for step_type in PIPELINE:
            if step_type.value in steps:
                logger.debug("step %s", step_type.value)
                results[step_type.value] = await steps[step_type.value].arun(context)
        return results

    async def _sequential_routing(self, context: "DeformationContext", steps: Dict[str, Any]) -> Dict[str, Any]:
        context.fan_out = run_in_order
        return await self._run(context, steps)

    async def _parallel_routing(self, context: "DeformationContext", steps: Dict[str, Any]) -> Dict[str, Any]:
        """Brackets are verified on worker threads; results keep their pair order."""
        context.fan_out = run_in_threads
        return await self._run(context, steps)
