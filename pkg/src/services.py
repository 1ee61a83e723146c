# Report assembly and rendering for the command-line front end
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .algebras import AlgebraDef
from .config import (DEFAULT_SETTINGS, REPORT_SCHEMA, TOOL_NAME, TOOL_VERSION, CasimirValue, CheckReport,
                     DeformationResult, IdentityCheck, ReportFormat, RepresentationReport, Settings, Status)
from .errors import SpinError
from .representations import build_rep, check_float_spin, check_rep, parse_spin, spot_check_brackets
from .representations.spin import EXACT_SPINS
from .scalars import render_scalar

logger = logging.getLogger(__name__)

_SEVERITY = {Status.CLOSED: 0, Status.UNSOLVED: 1, Status.FAILED: 2}


def worst(statuses: Iterable[Status]) -> Status:
    return max(statuses, key=_SEVERITY.__getitem__, default=Status.CLOSED)


def _render(value: Any) -> Optional[str]:
    if value is None:
        return None
    if hasattr(value, "render"):
        return value.render()
    if hasattr(value, "as_expr"):
        return render_scalar(value)
    return str(value)


def _status(holds: bool) -> str:
    return (Status.CLOSED if holds else Status.FAILED).value


@dataclass
class Report:
    """One command's outcome; ``sections`` is the JSON payload below the header."""
    command: str
    subject: str
    status: Status
    sections: Dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.status is Status.CLOSED else 1

    def to_document(self) -> Dict[str, Any]:
        document = {
            "schema": REPORT_SCHEMA,
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": self.command,
            "subject": self.subject,
            "status": self.status.value,
        }
        document.update(self.sections)
        return document


class ReportBuilder:
    """Turns engine records into report sections."""

    def check(self, defn: AlgebraDef, reports: Sequence[CheckReport],
              contractions: Sequence[CheckReport] = ()) -> Report:
        sections: Dict[str, Any] = {
            "checks": [self._check_entry(r) for r in reports],
            "spaces": [{"label": s.label, "dim": s.dim, "curvature": str(s.curvature), "rank": s.rank,
                        "model": s.model} for s in defn.spaces],
        }
        if contractions:
            sections["contractions"] = [self._check_entry(r) for r in contractions]
        status = worst(r.status for r in list(reports) + list(contractions))
        return Report("check", defn.name, status, sections)

    @staticmethod
    def _check_entry(report: CheckReport) -> Dict[str, Any]:
        return {
            "check": report.check,
            "algebra": report.algebra,
            "status": report.status.value,
            "detail": report.detail,
            "failures": [{"subject": f.subject, "witness": f.witness} for f in report.failures],
        }

    def deformation(self, result: DeformationResult, observables: Optional[Sequence[IdentityCheck]] = None,
                    casimirs: Optional[Sequence[CasimirValue]] = None) -> Report:
        sections: Dict[str, Any] = {
            "deformation": {
                "source": result.source,
                "target": result.target,
                "kappa": result.kappa,
                "preconditions": list(result.preconditions),
                "notes": list(result.notes),
                "expansions": {name: [str(part) for part in parts] for name, parts in result.expansions.items()},
                "seed": str(result.seed) if result.seed is not None else None,
            },
            "generators": {name: str(element) for name, element in result.generators.items()},
            "constraints": {
                "equations": [f"{render_scalar(c)} = 0" for c in result.constraints],
                "relations": [r.render() for r in result.relations],
                "unsolved": [f"{render_scalar(c)} = 0" for c in result.unsolved],
                "leftovers": [render_scalar(c) for c in result.leftovers],
                "roots": {name: render_scalar(value) for name, value in result.roots.items()},
            },
            "brackets": [
                {
                    "bracket": record.bracket_id,
                    "status": record.status.value,
                    "identically_zero": record.identically_zero,
                    "complete": record.complete,
                    "witness": None if record.status is Status.CLOSED else str(record.final or record.reduced),
                }
                for record in result.records
            ],
        }
        statuses = [result.status]
        if observables is not None:
            sections["observables"] = self._identities(observables)
            statuses += [Status(_status(c.holds)) for c in observables]
        if casimirs is not None:
            sections["casimirs"] = self._casimirs(casimirs)
        return Report("deform", f"{result.source} -> {result.target}", worst(statuses), sections)

    @staticmethod
    def _identities(checks: Sequence[IdentityCheck]) -> List[Dict[str, Any]]:
        return [{"name": c.name, "status": _status(c.holds), "witness": c.witness} for c in checks]

    @staticmethod
    def _casimirs(values: Sequence[CasimirValue]) -> List[Dict[str, Any]]:
        return [{"name": v.name, "value": _render(v.value), "witness": v.witness} for v in values]

    def representation(self, report: RepresentationReport) -> Report:
        body: Dict[str, Any] = {
            "name": report.name,
            "algebra": report.algebra,
            "spin": report.spin,
            "seed": report.seed,
            "brackets": self._identities(report.brackets),
            "casimirs": self._casimirs(report.casimirs),
            "spot_checks": self._identities(report.spot_checks),
        }
        if report.numeric is not None:
            n = report.numeric
            body["numeric"] = {
                "spin": str(n.spin),
                "dimension": n.dimension,
                "commutator_error": n.commutator_error,
                "casimir_value": n.casimir_value,
                "casimir_spread": n.casimir_spread,
                "tolerance": n.tolerance,
                "status": _status(n.passed),
            }
        return Report("rep", report.name, report.status, {"representations": [body]})

    def catalog(self, rows: Sequence[tuple]) -> Report:
        return Report("catalog", "list", Status.CLOSED,
                      {"catalog": [{"name": name, "summary": summary} for name, summary in rows]})


def verify_representation(name: str, spin: str = "0", kappa_sign: Optional[str] = None,
                          settings: Settings = DEFAULT_SETTINGS, float_spin: bool = False) -> RepresentationReport:
    """Exact bracket table, Casimir values and spot checks; numeric spin check on request.

    Spins without an exact realization are only accepted with ``float_spin``,
    in which case the report carries the numeric section alone.
    """
    s = parse_spin(spin)
    report = RepresentationReport(name, "", str(s), seed=settings.seed)
    if float_spin:
        report.numeric = check_float_spin(s, settings.float_tolerance)
    if s not in EXACT_SPINS:
        if not float_spin:
            raise SpinError(f"spin {s} has no exact realization; rerun with --float-spin")
        return report
    rep = build_rep(name, s, kappa_sign)
    report.algebra = rep.algebra.name
    report.brackets, report.casimirs = check_rep(rep)
    report.spot_checks = spot_check_brackets(rep, settings.spot_points, settings.seed)
    logger.info("representation %s at spin %s: %s", name, s, report.status.value)
    return report


class ReportRenderer:
    """JSON with sorted keys, or an indented plain-text outline."""

    def render(self, report: Report, fmt: ReportFormat = ReportFormat.TEXT) -> str:
        renderers = {
            ReportFormat.JSON: self._render_json,
            ReportFormat.TEXT: self._render_text,
        }
        return renderers[fmt](report)

    @staticmethod
    def _render_json(report: Report) -> str:
        return json.dumps(report.to_document(), sort_keys=True, ensure_ascii=False, indent=2)

    def _render_text(self, report: Report) -> str:
        lines = [f"{TOOL_NAME} {TOOL_VERSION} {report.command} {report.subject}: {report.status.value}"]
        for key in sorted(report.sections):
            lines.append(f"{key}:")
            lines.extend(self._outline(report.sections[key], 1))
        return "\n".join(lines)

    def _outline(self, value: Any, depth: int) -> List[str]:
        pad = "  " * depth
        if isinstance(value, dict):
            lines = []
            for key in sorted(value):
                item = value[key]
                if isinstance(item, (dict, list)) and item:
                    lines.append(f"{pad}{key}:")
                    lines.extend(self._outline(item, depth + 1))
                elif item not in (None, [], {}):
                    lines.append(f"{pad}{key}: {item}")
            return lines
        if isinstance(value, list):
            lines = []
            for item in value:
                if isinstance(item, dict):
                    key = next((k for k in ("name", "bracket", "check", "label") if k in item), None)
                    rest = {k: v for k, v in item.items() if k != key}
                    lines.append(f"{pad}- {item[key]}" if key else f"{pad}-")
                    lines.extend(self._outline(rest, depth + 1))
                else:
                    lines.append(f"{pad}- {item}")
            return lines
        return [f"{pad}{value}"]
