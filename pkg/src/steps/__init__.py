from .closure import bracket_residual, closure_residuals
from .constraints import ConstraintSolution, solve_constraints
from .context import DeformationContext, build_context
from .extraction import extract_kappa_expansion
from .generators import deform_generators
from .orchestrator import DeformationOrchestrator, deform, run_deformation
from .seed import build_seed
from .verification import determine_roots

__all__ = [
    "ConstraintSolution", "DeformationContext", "DeformationOrchestrator", "bracket_residual",
    "build_context", "build_seed", "closure_residuals", "deform", "deform_generators",
    "determine_roots", "extract_kappa_expansion", "run_deformation", "solve_constraints",
]
