# Structural checks on algebra definitions
import logging
from dataclasses import replace
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from ..config import CartanPattern, CheckFailure, CheckReport
from ..errors import ScalarError
from ..pbw import UEA, Element, check_central
from .definitions import AlgebraDef, BracketDecl, CartanSplit, CasimirDecl, Involution, LetDecl
from .expressions import Num, replace_names

logger = logging.getLogger(__name__)


def _support(element: Element) -> set:
    algebra = element.algebra
    names = set()
    for monomial in element.terms:
        names.update(algebra.generators[i] for i, e in enumerate(monomial) if e)
        if not any(monomial):
            names.add(None)
    return names


def jacobi_sum(algebra: UEA, x: str, y: str, z: str) -> Element:
    X, Y, Z = algebra.gen(x), algebra.gen(y), algebra.gen(z)
    c = algebra.commutator
    return c(X, c(Y, Z)) + c(Y, c(Z, X)) + c(Z, c(X, Y))


def check_jacobi(defn: AlgebraDef, algebra: Optional[UEA] = None) -> CheckReport:
    """Every generator triple, in PBW order; the witness is the nonzero cyclic sum."""
    algebra = algebra or defn.uea
    report = CheckReport("jacobi", defn.name)
    for x, y, z in combinations(defn.generators, 3):
        witness = jacobi_sum(algebra, x, y, z)
        if witness:
            report.failures.append(CheckFailure(f"({x},{y},{z})", str(witness)))
    logger.debug("jacobi on %s: %d failing triples", defn.name, len(report.failures))
    return report


def check_casimirs(defn: AlgebraDef) -> CheckReport:
    report = CheckReport("casimirs", defn.name)
    for name, element, _ in defn.casimir_elements:
        for gen, witness in check_central(element):
            report.failures.append(CheckFailure(f"[{name},{gen}]", str(witness)))
    return report


def check_element_central(defn: AlgebraDef, element: Element, label: str = "element") -> CheckReport:
    report = CheckReport("casimirs", defn.name)
    for gen, witness in check_central(element):
        report.failures.append(CheckFailure(f"[{label},{gen}]", str(witness)))
    return report


def check_cartan(defn: AlgebraDef, split: CartanSplit) -> CheckReport:
    """[h,h] in h, [h,p] in p, and [p,p] zero or inside h as declared."""
    report = CheckReport("cartan", defn.name, detail=f"{split.label}: pattern {split.pattern.value}")
    p, h = set(split.p), set(split.h)
    if p | h != set(defn.generators) or p & h:
        report.failures.append(CheckFailure(split.label, "p and h do not partition the generators"))
        return report
    algebra = defn.uea
    table = algebra.bracket_table()
    for (x, y), value in table.items():
        if not value:
            continue
        support = _support(value)
        if x in h and y in h:
            ok = support <= h
        elif x in p and y in p:
            ok = split.pattern is CartanPattern.SUBH and support <= h
        else:
            ok = support <= p
        if not ok:
            report.failures.append(CheckFailure(f"[{x},{y}]", str(value)))
    return report


def _apply(defn: AlgebraDef, inv: Involution, element: Element) -> Element:
    algebra = element.algebra
    result = algebra.zero
    for monomial, coeff in element.terms.items():
        term = algebra.scalar(coeff)
        for index, exp in enumerate(monomial):
            sign, target = inv.image(algebra.generators[index])
            term = term * (algebra.gen(target) * sign) ** exp
        result = result + term
    return result


def check_involution(defn: AlgebraDef, inv: Involution) -> CheckReport:
    report = CheckReport("involution", defn.name, detail=inv.name)
    for gen in defn.generators:
        sign, target = inv.image(gen)
        sign2, back = inv.image(target)
        if back != gen or sign * sign2 != 1:
            report.failures.append(CheckFailure(f"{inv.name}^2({gen})", f"{'-' if sign * sign2 < 0 else ''}{back}"))
    if report.failures:
        return report
    algebra = defn.uea
    for x, y in combinations(defn.generators, 2):
        image_x, image_y = _apply(defn, inv, algebra.gen(x)), _apply(defn, inv, algebra.gen(y))
        lhs = algebra.commutator(image_x, image_y)
        rhs = _apply(defn, inv, algebra.commutator(algebra.gen(x), algebra.gen(y)))
        if lhs != rhs:
            report.failures.append(CheckFailure(f"[{x},{y}]", str(lhs - rhs)))
    return report


def check_all(defn: AlgebraDef) -> List[CheckReport]:
    """Jacobi first; the remaining checks presuppose a Lie algebra."""
    reports = [check_jacobi(defn)]
    if not reports[0].passed:
        return reports
    reports.append(check_casimirs(defn))
    reports.extend(check_cartan(defn, split) for split in defn.cartans)
    reports.extend(check_involution(defn, inv) for inv in defn.involutions)
    return reports


def truncate(defn: AlgebraDef, kappa: str) -> AlgebraDef:
    """Delete every term proportional to ``kappa`` from brackets, lets and Casimirs."""
    zero = {kappa: Num(0)}
    return replace(
        defn,
        name=f"{defn.name}|{kappa}=0",
        brackets=tuple(BracketDecl(b.left, b.right, replace_names(b.rhs, zero)) for b in defn.brackets),
        casimirs=tuple(CasimirDecl(c.name, replace_names(c.expr, zero), c.eigenvalue) for c in defn.casimirs),
        lets=tuple(LetDecl(l.name, replace_names(l.expr, zero)) for l in defn.lets),
    )


def check_contraction(deformed: AlgebraDef, contracted: AlgebraDef, kappa: str) -> CheckReport:
    """The deformed family with its curvature terms deleted must give back the contracted algebra."""
    report = CheckReport("contraction", deformed.name, detail=f"{kappa} -> 0 gives {contracted.name}")
    if set(deformed.generators) != set(contracted.generators):
        report.failures.append(CheckFailure("generators", "generator sets differ"))
        return report
    truncated = truncate(deformed, kappa)
    target = contracted.uea
    try:
        table = {pair: target.lift(value) for pair, value in truncated.uea.bracket_table().items()}
    except ScalarError as error:
        report.failures.append(CheckFailure("brackets", str(error)))
        return report
    expected: Dict = target.bracket_table()
    for x, y in combinations(target.generators, 2):
        got = table.get((x, y), -table[(y, x)] if (y, x) in table else target.zero)
        want = expected.get((x, y), target.zero)
        if got != want:
            report.failures.append(CheckFailure(f"[{x},{y}]", f"{got} != {want}"))
    for (name, element, _), (_, want, _) in zip(truncated.casimir_elements, contracted.casimir_elements):
        try:
            got = target.lift(element)
        except ScalarError as error:
            report.failures.append(CheckFailure(name, str(error)))
            continue
        if got != want:
            report.failures.append(CheckFailure(name, f"{got} != {want}"))
    return report


def failed(reports: Sequence[CheckReport]) -> List[CheckReport]:
    return [r for r in reports if not r.passed]
