# Kinematical deformation engine package
from .algebras import catalog_get, catalog_list, check_all, load_algebra
from .chains import DeformationSpec, get_chain, supported_chains
from .config import TOOL_VERSION, DeformationResult, RootDetermination, RoutingStrategy, Settings, Status
from .observables import build_observables, evaluate_deformed_casimirs, run_observable_suite
from .representations import build_rep, casimir_eigenvalue, substitute_rep
from .routing import DeformationRouter
from .steps import DeformationOrchestrator, deform, run_deformation

__version__ = TOOL_VERSION
__author__ = "kindeform developers"

__all__ = [
    "DeformationSpec",
    "DeformationResult",
    "RootDetermination",
    "RoutingStrategy",
    "Settings",
    "Status",
    "DeformationOrchestrator",
    "DeformationRouter",
    "catalog_get",
    "catalog_list",
    "check_all",
    "load_algebra",
    "get_chain",
    "supported_chains",
    "deform",
    "run_deformation",
    "build_observables",
    "evaluate_deformed_casimirs",
    "run_observable_suite",
    "build_rep",
    "substitute_rep",
    "casimir_eigenvalue",
]
