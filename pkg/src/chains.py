# Registry of supported deformation chains
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from .errors import DeformationError


@dataclass(frozen=True)
class DeformationSpec:
    """One source -> target deformation.

    ``relations`` pairs source Casimirs with the eigenvalue symbols fixing an
    irreducible representation; ``primitives`` expresses radicands through
    their square roots (c1 -> u^2) for the positive root determination.
    """
    source: str
    target: str
    kappa: str
    rank: int
    relations: Tuple[Tuple[str, str], ...]
    primitives: Tuple[Tuple[str, str], ...] = ()
    nonzero: Tuple[str, ...] = ()
    preconditions: Tuple[str, ...] = ()
    casimir_scales: Tuple[str, ...] = ()
    expect_closure: bool = True

    @property
    def alphas(self) -> Tuple[str, ...]:
        return tuple(f"α{s}" for s in range(1, self.rank + 1))

    @property
    def key(self) -> Tuple[str, str]:
        return (self.source, self.target)

    def scaled(self, *factors: str) -> "DeformationSpec":
        """Same chain with the target Casimirs multiplied by nonzero factors."""
        return replace(self, casimir_scales=tuple(factors))


_ORDINARY_GALILEI = "c1 != 0 and c2 != 0 (ordinary Galilei representations)"
_MASSIVE = "m != 0 and ξ != 0"
_NOT_LIGHTLIKE = "c1p != 0 (light-like representations cannot be deformed)"

_RANK_TWO = dict(kappa="κ2", rank=2, relations=(("C1", "c1"), ("C2", "c2")),
                 primitives=(("c1", "u^2"), ("c2", "w^2")), nonzero=("c1", "c2"),
                 preconditions=(_ORDINARY_GALILEI,))
_NEWTON_HOOKE = dict(kappa="κ1", rank=1, relations=(("Xi", "ξ"),), nonzero=("m", "ξ"),
                     preconditions=(_MASSIVE,))
_UNEXTENDED = dict(kappa="κ1", rank=1, relations=(("C1", "c1"), ("C2", "c2")), nonzero=("c1", "c2"),
                   expect_closure=False)
_CURVED = dict(kappa="κ1", rank=1, relations=(("C1", "c1p"), ("C2", "c2p")),
               primitives=(("c1p", "-m^2/γ^2"),), nonzero=("c1p",), preconditions=(_NOT_LIGHTLIKE,))

CHAINS: Dict[Tuple[str, str], DeformationSpec] = {
    spec.key: spec for spec in (
        DeformationSpec("galilei", "poincare", **_RANK_TWO),
        DeformationSpec("galilei", "euclidean4", **_RANK_TWO),
        DeformationSpec("galilei-extended", "nh-plus", **_NEWTON_HOOKE),
        DeformationSpec("galilei-extended", "nh-minus", **_NEWTON_HOOKE),
        DeformationSpec("galilei", "nh-plus", **_UNEXTENDED),
        DeformationSpec("galilei", "nh-minus", **_UNEXTENDED),
        DeformationSpec("poincare", "ads", **_CURVED),
        DeformationSpec("poincare", "ds", **_CURVED),
        DeformationSpec("euclidean4", "so5", **_CURVED),
        DeformationSpec("euclidean4", "so41-euclidean-chain", **_CURVED),
    )
}

# (positive κ1, negative κ1) members of each curved family
KAPPA_SIGN_PAIRS = (("nh-plus", "nh-minus"), ("ads", "ds"), ("so5", "so41-euclidean-chain"))


def with_kappa_sign(target: str, sign: Optional[str]) -> str:
    """Pick the member of ``target``'s family with the requested curvature sign."""
    if sign is None:
        return target
    if sign not in ("+", "-"):
        raise DeformationError(f"kappa sign must be + or -, got {sign!r}")
    for positive, negative in KAPPA_SIGN_PAIRS:
        if target in (positive, negative):
            return positive if sign == "+" else negative
    raise DeformationError(f"{target} has no curvature-sign sibling")


def supported_chains() -> List[str]:
    return [f"{source} -> {target}" for source, target in CHAINS]


def get_chain(source: str, target: str) -> DeformationSpec:
    try:
        return CHAINS[(source, target)]
    except KeyError:
        raise DeformationError(
            f"unsupported deformation {source} -> {target}; supported: {'; '.join(supported_chains())}"
        ) from None
