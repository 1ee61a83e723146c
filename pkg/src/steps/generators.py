# Generator step: new generators from brackets with the seed
import logging
from typing import Any, Dict

from ..algebras import AlgebraDef
from ..pbw import Element
from .context import DeformationContext

logger = logging.getLogger(__name__)


def deform_generators(seed: Element, defn: AlgebraDef) -> Dict[str, Element]:
    """X' = [seed, X], or X itself when the bracket vanishes."""
    algebra = seed.algebra
    deformed: Dict[str, Element] = {}
    for name in defn.generators:
        generator = algebra.gen(name)
        image = algebra.commutator(seed, generator)
        deformed[name] = generator if image.is_zero else image
    return deformed


class GeneratorStep:
    def __init__(self, settings=None):
        self.settings = settings

    async def arun(self, context: DeformationContext) -> Dict[str, Any]:
        context.generators = deform_generators(context.seed, context.source)
        changed = [name for name, image in context.generators.items() if image != context.algebra.gen(name)]
        logger.info("deformed generators: %s", ", ".join(changed) or "none")
        return {"generators": context.generators}
