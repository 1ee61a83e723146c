# Pointwise spot checks of operator identities on random polynomial test functions
import logging
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..config import IdentityCheck
from ..errors import RepresentationError
from .builders import Representation, substitute_rep
from .coefficients import MOMENTA
from .diffop import DiffOp

logger = logging.getLogger(__name__)

TEST_DEGREE = 3

Vector = List[sympy.Expr]


def _symbols() -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(p) for p in MOMENTA)


def random_test_function(rng: np.random.Generator, size: int, degree: int = TEST_DEGREE) -> Vector:
    """Integer polynomial of degree <= ``degree`` in p for each spin component."""
    p = _symbols()
    exponents = [e for e in product(range(degree + 1), repeat=3) if sum(e) <= degree]
    components = []
    for _ in range(size):
        coefficients = rng.integers(-3, 4, size=len(exponents))
        components.append(sympy.Add(*(int(a) * p[0] ** e[0] * p[1] ** e[1] * p[2] ** e[2]
                                      for a, e in zip(coefficients, exponents))))
    return components


def apply_diffop(op: DiffOp, f: Vector, omega: Optional[sympy.Expr] = None) -> Vector:
    """(op f) with ω replaced by ``omega``."""
    p = _symbols()
    result: Vector = [sympy.Integer(0)] * op.size
    for alpha, block in op.terms.items():
        spec = [(p[i], e) for i, e in enumerate(alpha) if e]
        derived = [sympy.diff(component, *spec) if spec else component for component in f]
        for r in range(op.size):
            for c in range(op.size):
                entry = block[r, c]
                if not entry.is_zero and derived[c] != 0:
                    result[r] += entry.to_sympy(omega) * derived[c]
    return result


def sample_point(rep: Representation, rng: np.random.Generator) -> Dict[sympy.Symbol, sympy.Expr]:
    """Rational parameters and momenta; the mass is tuned so that ω is rational.

    With s = |p|^2 and r > 0, ω = (r + s/r)/2 and μ = (s/r - r)/2 satisfy
    ω^2 = s + μ^2.
    """
    scalars = rep.scalars
    values: Dict[sympy.Symbol, sympy.Expr] = {}
    momenta = _symbols()
    for name in scalars.free_names:
        if name not in MOMENTA and not (name == "m" and rep.field.mass_term is not None):
            values[sympy.Symbol(name)] = sympy.Integer(int(rng.integers(1, 6)))
    while all(values.get(p, 0) == 0 for p in momenta):
        for p in momenta:
            values[p] = sympy.Integer(int(rng.integers(-3, 4)))
    if rep.field.mass_term is not None:
        s = sum(values[p] ** 2 for p in momenta)
        r = sympy.Rational(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        while s / r - r == 0:
            r += 1
        mu = (s / r - r) / 2
        m = sympy.Symbol("m")
        ratio = sympy.simplify(rep.field.mass_term.as_expr() / m).subs(values)
        values[m] = mu / ratio
    return values


def _vanishes(components: Vector, values: Dict[sympy.Symbol, sympy.Expr]) -> bool:
    for component in components:
        if sympy.expand(sympy.sympify(component).subs(values)) != 0:
            return False
    return True


def spot_check_brackets(rep: Representation, points: int = 4, seed: int = 0,
                        pairs: Optional[Sequence[Tuple[str, str]]] = None) -> List[IdentityCheck]:
    """A(Bf) - B(Af) == [A,B]f at ``points`` sample points per bracket pair.

    The operators act through sympy differentiation with ω written out as
    a radical, independently of the composition rule in DiffOp.
    """
    if points < 1:
        raise RepresentationError("spot checks need at least one point")
    rng = np.random.default_rng(seed)
    table = rep.algebra.uea.bracket_table()
    radical = None
    if rep.field.radicand is not None:
        radical = sympy.sqrt(rep.field.radicand.as_expr())
    checks = []
    for left, right in pairs or list(combinations(rep.algebra.generators, 2)):
        expected = substitute_rep(table.get((left, right), rep.algebra.uea.zero), rep)
        f = random_test_function(rng, rep.size)
        a, b = rep[left], rep[right]
        lhs = [x - y for x, y in zip(apply_diffop(a, apply_diffop(b, f, radical), radical),
                                     apply_diffop(b, apply_diffop(a, f, radical), radical))]
        residual = [x - y for x, y in zip(lhs, apply_diffop(expected, f, radical))]
        failures = []
        for _ in range(points):
            values = sample_point(rep, rng)
            if not _vanishes(residual, values):
                failures.append({str(k): str(v) for k, v in values.items()})
        label = f"[{left},{right}]"
        checks.append(IdentityCheck(label, not failures, f"fails at {failures[0]}" if failures else None))
    logger.info("%s: %d bracket spot checks, %d failed", rep.name, len(checks),
                sum(not c.holds for c in checks))
    return checks
