import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from src.errors import ScalarError, UnsolvedConstraint
from src.scalars import (Param, ParamContext, apply_relations, divide, positive_root, render_scalar, solve_binomial,
                         solve_one)

I = sympy.I


def _context(*names, gaussian=False):
    return ParamContext([Param(n) for n in names], gaussian=gaussian)


def test_defined_parameters_expand(curved_context):
    gamma = curved_context.gen("γ")
    assert curved_context.gen("κ2") == -gamma ** 2
    assert curved_context.gen("c") * gamma == 1
    assert curved_context.free_names == ("γ", "λ")


def test_conflicting_declarations_rejected():
    with pytest.raises(ScalarError):
        ParamContext([Param("c"), Param("c", sympy.Symbol("γ"))])


def test_cyclic_definitions_rejected():
    a, b = sympy.symbols("a b")
    with pytest.raises(ScalarError):
        ParamContext([Param("a", b), Param("b", a)])


def test_imaginary_definition_needs_gaussian_field():
    lh = sympy.Symbol("λh")
    lam = sympy.Symbol("λ")
    real = ParamContext([Param("λh"), Param("λ", I * lh), Param("κ1", -lam ** 2)])
    assert real.needs_gaussian
    # κ1 is real even though it is written through I
    assert real.gen("κ1") == real.gen("λh") ** 2
    with pytest.raises(ScalarError):
        real.gen("λ")
    twin = real.gaussian_twin()
    assert twin.gen("λ") == twin.imaginary_unit() * twin.gen("λh")


def test_convert_matches_names():
    small = _context("γ", "m")
    large = _context("γ", "m", "ξ")
    value = small.from_expr(sympy.sympify("m/γ + 3"))
    moved = large.convert(value)
    assert render_scalar(moved) == render_scalar(value)
    with pytest.raises(ScalarError):
        small.convert(large.gen("ξ"))


def test_substitute_into_target_context():
    source = _context("α1", "λ", "m", "ξ")
    target = _context("λ", "m")
    value = source.from_expr(sympy.sympify("2*α1*m*ξ"))
    bound = source.substitute(value, {"α1": target.from_expr(sympy.sympify("λ/(2*m)")), "ξ": 1}, target=target)
    assert bound == target.gen("λ")


def test_substitute_rejects_defined_parameter(curved_context):
    with pytest.raises(ScalarError):
        curved_context.substitute(curved_context.gen("γ"), {"κ2": 1})


def test_solve_linear_and_quadratic():
    ctx = _context("γ", "c1", "c2", "α1", "α2")
    a1, a2, c1, c2, g = (ctx.gen(n) for n in ("α1", "α2", "c1", "c2", "γ"))
    linear = solve_one(a1 * c1 + a2 * c2, "α1", ctx)
    assert linear.power == 1 and linear.value == -a2 * c2 / c1
    quadratic = solve_one(4 * c1 * c2 * a2 ** 2 - g ** 2, "α2", ctx)
    assert quadratic.power == 2 and quadratic.value == g ** 2 / (4 * c1 * c2)


def test_solver_reports_unsupported_shapes():
    ctx = _context("γ", "α1")
    a = ctx.gen("α1")
    with pytest.raises(UnsolvedConstraint) as info:
        solve_one(a ** 3 + a + ctx.gen("γ"), "α1", ctx)
    assert "degree 3" in info.value.reason
    with pytest.raises(UnsolvedConstraint):
        solve_one(ctx.gen("γ"), "α1", ctx)


def test_positive_root_through_primitives():
    ctx = _context("γ", "u", "w", "c1", "c2", "α2")
    c1, c2, g = ctx.gen("c1"), ctx.gen("c2"), ctx.gen("γ")
    relation = solve_one(4 * c1 * c2 * ctx.gen("α2") ** 2 - g ** 2, "α2", ctx)
    root = positive_root(relation, ctx, {"c1": ctx.gen("u") ** 2, "c2": ctx.gen("w") ** 2})
    assert root == g / (2 * ctx.gen("u") * ctx.gen("w"))


def test_negative_radicand_gives_imaginary_root():
    ctx = _context("λh", "m", "ξ", "α1", gaussian=True)
    lh, m, xi = ctx.gen("λh"), ctx.gen("m"), ctx.gen("ξ")
    relation = solve_one(4 * m ** 2 * xi ** 2 * ctx.gen("α1") ** 2 + lh ** 2, "α1", ctx)
    root = positive_root(relation, ctx)
    assert root == ctx.imaginary_unit() * lh / (2 * m * xi)


def test_root_of_non_square_is_an_error():
    ctx = _context("γ", "α1")
    relation = solve_one(ctx.gen("α1") ** 2 - 2 * ctx.gen("γ"), "α1", ctx)
    with pytest.raises(ScalarError):
        positive_root(relation, ctx)


@given(st.integers(min_value=0, max_value=6), st.integers(min_value=-5, max_value=5))
def test_quadratic_relation_folds_even_powers(exponent, shift):
    ctx = _context("γ", "c1", "α1")
    alpha, c1, g = ctx.gen("α1"), ctx.gen("c1"), ctx.gen("γ")
    relation = solve_one(4 * c1 * alpha ** 2 - g ** 2, "α1", ctx)
    folded = apply_relations(alpha ** exponent * (g + shift), [relation], ctx)
    expected = relation.value ** (exponent // 2) * alpha ** (exponent % 2) * (g + shift)
    assert folded == expected


monomials = st.tuples(st.integers(min_value=-4, max_value=4), st.integers(min_value=0, max_value=2),
                      st.integers(min_value=0, max_value=2))
polynomials = st.lists(monomials, min_size=1, max_size=4)


def _poly(ctx, terms, x, y):
    first, second = ctx.gen(x), ctx.gen(y)
    total = ctx.zero
    for coeff, i, j in terms:
        total += coeff * first ** i * second ** j
    return total


@given(polynomials, polynomials, polynomials)
def test_scalars_are_canonical(numer, denom, factor):
    ctx = _context("γ", "m", "ξ")
    b = _poly(ctx, factor, "m", "ξ")
    assume(b)
    a = _poly(ctx, numer, "γ", "m") / (_poly(ctx, denom, "γ", "ξ") ** 2 + 1)
    assert a * b / b == a
    assert render_scalar(divide(a * b, b)) == render_scalar(a)
    assert not a - a


@given(polynomials, polynomials, polynomials)
def test_substitutions_compose(value, first, second):
    ctx = _context("α1", "γ", "m")
    v = _poly(ctx, value, "α1", "γ") / (ctx.gen("m") ** 2 + 1)
    f = _poly(ctx, first, "γ", "m")
    g = _poly(ctx, second, "m", "m")
    stepwise = ctx.substitute(ctx.substitute(v, {"α1": f}), {"γ": g})
    composed = ctx.substitute(v, {"α1": ctx.substitute(f, {"γ": g}), "γ": g})
    assert stepwise == composed


def test_division_by_zero_is_a_scalar_error():
    ctx = _context("γ")
    a = ctx.gen("γ")
    with pytest.raises(ScalarError, match="division by zero"):
        divide(a, a - a)
    with pytest.raises(ScalarError, match="division by zero"):
        ctx.from_expr(sympy.Pow(sympy.Symbol("γ") - sympy.Symbol("γ"), -1, evaluate=False))
    assert divide(a, a) == 1


def test_vanishing_denominator_in_substitution():
    ctx = _context("γ", "m")
    with pytest.raises(ScalarError, match="denominator vanish"):
        ctx.substitute(1 / (ctx.gen("γ") - ctx.gen("m")), {"γ": "m"})


def test_binomial_batch_reports_every_unsolved_equation():
    ctx = _context("γ", "c1", "α1")
    a, c1, g = ctx.gen("α1"), ctx.gen("c1"), ctx.gen("γ")
    equations = [a ** 3 - g, 4 * c1 * a ** 2 - g ** 2, g, 8 * c1 * a ** 2 - 2 * g ** 2, a * c1 - g]
    solution = solve_binomial(equations, "α1", ctx)
    assert not solution.complete
    assert [(r.power, r.value) for r in solution.relations] == [(2, g ** 2 / (4 * c1)), (1, g / c1)]
    assert [u.reason for u in solution.unsolved] == ["degree 3 is not binomial", "no unknown present"]
    assert solution.unsolved[0].equation == render_scalar(a ** 3 - g)
