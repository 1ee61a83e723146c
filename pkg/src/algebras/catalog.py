# Built-in algebra catalog, compiled from the bundled .alg sources
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Tuple

from ..errors import CatalogError
from .checks import check_all, failed
from .definitions import AlgebraDef
from .parser import parse_algebras, render_algebra

logger = logging.getLogger(__name__)

SOURCE_DIR = Path(__file__).parent / "sources"

CATALOG_NAMES = (
    "galilei", "galilei-extended", "poincare", "nh-plus", "nh-minus",
    "ads", "ds", "euclidean4", "so5", "so41-euclidean-chain",
)

# (deformed family, contracted algebra, curvature whose terms are deleted)
CONTRACTIONS: Tuple[Tuple[str, str, str], ...] = (
    ("poincare", "galilei", "κ2"),
    ("nh-minus", "galilei", "κ1"),
    ("ds", "poincare", "κ1"),
    ("ds", "nh-minus", "κ2"),
)


@lru_cache(maxsize=None)
def _sources() -> Dict[str, AlgebraDef]:
    definitions: Dict[str, AlgebraDef] = {}
    for path in sorted(SOURCE_DIR.glob("*.alg")):
        for defn in parse_algebras(path.read_text(encoding="utf-8")):
            if defn.name in definitions:
                raise CatalogError(f"algebra {defn.name} defined twice (again in {path.name})")
            definitions[defn.name] = defn
    return definitions


def resolve(defn: AlgebraDef, known: Dict[str, AlgebraDef]) -> AlgebraDef:
    """Expand a ``from ... with`` definition into a standalone one."""
    if defn.base is None:
        return defn
    base = known.get(defn.base)
    if base is None:
        raise CatalogError(f"{defn.name} derives from unknown algebra {defn.base!r}")
    base = resolve(base, known)
    return base.substitute(dict(defn.bindings), name=defn.name, spaces=defn.spaces or None)


def catalog_source(name: str) -> AlgebraDef:
    """The definition as written in the bundled sources (derived ones unexpanded)."""
    try:
        return _sources()[name]
    except KeyError:
        raise CatalogError(f"unknown algebra {name!r}; known: {', '.join(CATALOG_NAMES)}") from None


@lru_cache(maxsize=None)
def _load(name: str, verify: bool) -> AlgebraDef:
    defn = resolve(catalog_source(name), _sources())
    if verify:
        bad = failed(check_all(defn))
        if bad:
            raise CatalogError(f"catalog algebra {name} fails {', '.join(r.check for r in bad)}")
        logger.info("catalog algebra %s checked", name)
    return defn


def catalog_get(name: str, verify: bool = True) -> AlgebraDef:
    return _load(name, verify)


def catalog_list() -> List[Tuple[str, str]]:
    """(name, one-line summary) for every entry."""
    rows = []
    for name in CATALOG_NAMES:
        source = catalog_source(name)
        defn = _load(name, False)
        origin = f"from {source.base}" if source.base else "base"
        rows.append((name, f"{len(defn.generators)} generators, {len(defn.casimirs)} Casimirs, {origin}"))
    return rows


def catalog_export(name: str, expanded: bool = True) -> str:
    defn = _load(name, False) if expanded else catalog_source(name)
    return render_algebra(defn)


def load_algebra(reference: str) -> AlgebraDef:
    """A catalog name or a path to an .alg file holding one algebra (which may derive from the catalog)."""
    path = Path(reference)
    if reference in CATALOG_NAMES or not path.suffix:
        return catalog_get(reference, verify=False)
    definitions = parse_algebras(path.read_text(encoding="utf-8"))
    known = dict(_sources())
    known.update({d.name: d for d in definitions})
    if len(definitions) != 1:
        raise CatalogError(f"{reference} must define exactly one algebra, found {len(definitions)}")
    return resolve(definitions[0], known)
