# Configuration and data models for the deformation engine
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

if TYPE_CHECKING:
    from .pbw import Element
    from .scalars import Relation
    from .steps.context import DeformationContext

TOOL_NAME = "kindeform"
TOOL_VERSION = "0.1.0"
REPORT_SCHEMA = 1
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class ParamKind(Enum):
    FREE = "free"
    DEFINED = "defined"


class Status(Enum):
    CLOSED = "closed"
    FAILED = "failed"
    UNSOLVED = "unsolved-constraint"


class StepType(Enum):
    EXTRACTION = "extraction"
    SEED = "seed"
    GENERATORS = "generators"
    CLOSURE = "closure"
    CONSTRAINTS = "constraints"
    VERIFICATION = "verification"


class RoutingStrategy(Enum):
    SEQUENTIAL = "sequential"
    PARALLEL = "parallel"


class RootDetermination(Enum):
    NONE = "none"
    POSITIVE = "positive"


class ReportFormat(Enum):
    JSON = "json"
    TEXT = "text"


class CartanPattern(Enum):
    ZERO = "zero"
    SUBH = "subh"


@dataclass
class Settings:
    """Runtime knobs; CLI flags override the defaults."""
    localization_depth: int = 24
    reduction_step_limit: int = 200000
    routing: RoutingStrategy = RoutingStrategy.SEQUENTIAL
    spot_points: int = 4
    seed: int = 0
    float_tolerance: float = 1e-9

    @classmethod
    def with_overrides(cls, **overrides: Any) -> "Settings":
        settings = cls()
        for key, value in overrides.items():
            if value is not None:
                setattr(settings, key, value)
        return settings


DEFAULT_SETTINGS = Settings()


def configure_logging(verbosity: int = 0) -> None:
    """Attach a stderr handler; -v gives INFO, -vv gives DEBUG."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)


@dataclass
class CheckFailure:
    subject: str
    witness: str


@dataclass
class CheckReport:
    check: str
    algebra: str
    failures: List[CheckFailure] = field(default_factory=list)
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> Status:
        return Status.CLOSED if self.passed else Status.FAILED


@dataclass
class BracketRecord:
    """Verification record for one target bracket."""
    left: str
    right: str
    residual: Element
    reduced: Element
    cofactors: Tuple[Element, ...] = ()
    complete: bool = True
    final: Optional[Element] = None
    status: Status = Status.FAILED

    @property
    def bracket_id(self) -> str:
        return f"[{self.left},{self.right}]"

    @property
    def identically_zero(self) -> bool:
        return self.residual.is_zero


@dataclass
class DeformationResult:
    source: str
    target: str
    kappa: str
    seed: Element
    generators: Dict[str, Element]
    expansions: Dict[str, List[Element]]
    constraints: List[Any]
    relations: List[Relation]
    unsolved: List[Any]
    leftovers: List[Any]
    records: List[BracketRecord]
    preconditions: List[str]
    notes: List[str] = field(default_factory=list)
    roots: Dict[str, Any] = field(default_factory=dict)
    context: Optional[DeformationContext] = None

    @property
    def status(self) -> Status:
        statuses = {record.status for record in self.records}
        if Status.FAILED in statuses:
            return Status.FAILED
        if Status.UNSOLVED in statuses:
            return Status.UNSOLVED
        return Status.CLOSED

    @property
    def closed(self) -> bool:
        return self.status is Status.CLOSED


@dataclass
class CasimirValue:
    """Deformed Casimir: a scalar when it reduces to one, otherwise a witness."""
    name: str
    value: Optional[Any] = None
    witness: Optional[str] = None

    @property
    def is_scalar(self) -> bool:
        return self.value is not None


@dataclass
class IdentityCheck:
    """Named identity tested in an enveloping algebra."""
    name: str
    holds: bool
    witness: Optional[str] = None


@dataclass
class RepresentationReport:
    """Bracket table, Casimir values and spot checks of one realization."""
    name: str
    algebra: str
    spin: str
    brackets: List[IdentityCheck] = field(default_factory=list)
    casimirs: List[CasimirValue] = field(default_factory=list)
    spot_checks: List[IdentityCheck] = field(default_factory=list)
    seed: int = 0
    numeric: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return (all(c.holds for c in self.brackets) and all(c.is_scalar for c in self.casimirs)
                and all(c.holds for c in self.spot_checks)
                and (self.numeric is None or self.numeric.passed))

    @property
    def status(self) -> Status:
        return Status.CLOSED if self.passed else Status.FAILED
