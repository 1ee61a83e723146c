# Algebra definitions: DSL, catalog and structural checks
from .catalog import CATALOG_NAMES, catalog_export, catalog_get, catalog_list, load_algebra
from .checks import check_all, check_casimirs, check_cartan, check_contraction, check_involution, check_jacobi
from .definitions import AlgebraDef, CartanSplit, Involution, SpaceRecord
from .parser import parse_algebra, parse_algebras, parse_expression, render_algebra

__all__ = [
    "AlgebraDef",
    "CartanSplit",
    "Involution",
    "SpaceRecord",
    "CATALOG_NAMES",
    "catalog_get",
    "catalog_list",
    "catalog_export",
    "load_algebra",
    "check_all",
    "check_jacobi",
    "check_casimirs",
    "check_cartan",
    "check_involution",
    "check_contraction",
    "parse_algebra",
    "parse_algebras",
    "parse_expression",
    "render_algebra",
]
