from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.config import Settings
from src.errors import RepresentationError, SpinError
from src.representations import (DiffOp, MomentumField, build_rep, bracket_checks, casimir_eigenvalue, casimir_values,
                                 check_float_spin, convert_diffop, diffop_commutator, parse_spin, spin_matrices,
                                 spin_matrices_float, spot_check_brackets, substitute_rep)
from src.representations.spin import commutator_blocks, spin_casimir
from src.scalars import Param, ParamContext
from src.services import verify_representation
from src.steps import deform

SPIN_SQUARED = {"0": 0, "1/2": -3, "1": -2}
SPIN_SQUARED_DENOMINATOR = {"0": 1, "1/2": 4, "1": 1}


def _same(a, b):
    return all(x == y for x, y in zip(a.flat, b.flat))


@pytest.fixture(scope="module")
def momentum_field():
    scalars = ParamContext([Param(n) for n in ("m", "p1", "p2", "p3")], gaussian=True)
    return MomentumField(scalars, scalars.gen("m"))


def test_partial_and_momentum_commute_to_one(momentum_field):
    d1 = DiffOp.partial(momentum_field, 1, 0)
    p1 = DiffOp.scalar(momentum_field, 1, momentum_field.p(0))
    assert diffop_commutator(d1, p1) == DiffOp.identity(momentum_field, 1)
    assert diffop_commutator(d1, DiffOp.scalar(momentum_field, 1, momentum_field.p(1))).is_zero


def test_derivative_of_omega(momentum_field):
    omega = momentum_field.omega
    d1 = DiffOp.partial(momentum_field, 1, 0)
    expected = DiffOp.scalar(momentum_field, 1, momentum_field.p(0) / omega)
    assert diffop_commutator(d1, DiffOp.scalar(momentum_field, 1, omega)) == expected
    assert omega * omega == momentum_field.const(momentum_field.radicand)


@pytest.mark.parametrize("spin", ["0", "1/2", "1"])
def test_exact_spin_matrices(momentum_field, spin):
    S = spin_matrices(spin, momentum_field)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        assert _same(commutator_blocks(S[i], S[j]), S[k])
    casimir = spin_casimir(S)
    n = casimir.shape[0]
    value = momentum_field.const(momentum_field.scalars.scalar(SPIN_SQUARED[spin])) / SPIN_SQUARED_DENOMINATOR[spin]
    for r in range(n):
        for c in range(n):
            assert casimir[r, c] == (value if r == c else momentum_field.zero)


def test_spin_outside_exact_set():
    assert parse_spin("7/2") == parse_spin(3.5)
    with pytest.raises(SpinError):
        parse_spin("1/3")
    with pytest.raises(SpinError):
        build_rep("poincare-massive", "7/2")


def test_float_spin_check():
    assert spin_matrices_float("7/2").shape == (3, 8, 8)
    report = check_float_spin("7/2")
    assert report.dimension == 8
    assert report.passed


def test_unknown_representation_and_generator():
    with pytest.raises(RepresentationError):
        build_rep("sl2-holomorphic")
    rep = build_rep("nh-deformed")
    with pytest.raises(RepresentationError):
        rep["Xi"]


@pytest.mark.parametrize("name, spin, count", [
    ("galilei-bacry", "0", 55),
    ("nh-deformed", "0", 45),
    ("poincare-massive", "0", 45),
    ("poincare-massive", "1/2", 45),
    ("poincare-massive", "1", 45),
    ("ads-deformed", "0", 45),
    ("ads-deformed", "1/2", 45),
    pytest.param("ads-deformed", "1", 45, marks=pytest.mark.slow),
])
def test_bracket_tables_hold(name, spin, count):
    checks = bracket_checks(build_rep(name, spin))
    assert len(checks) == count
    assert [(c.name, c.witness) for c in checks if not c.holds] == []


def test_curvature_sign_sibling_realizes_brackets():
    rep = build_rep("ads-deformed", kappa_sign="-")
    assert rep.algebra.name == "ds"
    assert all(c.holds for c in bracket_checks(rep))


def test_bacry_casimirs():
    rep = build_rep("galilei-bacry")
    m, a = rep.scalars.gen("m"), rep.scalars.gen("a")
    assert casimir_eigenvalue(rep, "Xi") == rep.field.one
    assert casimir_eigenvalue(rep, "E") == rep.field.const(-2 * m * a)


def test_deformed_newton_hooke_casimirs_vanish():
    values = casimir_values(build_rep("nh-deformed"))
    assert all(v.is_scalar and v.value.is_zero for v in values)


@pytest.mark.parametrize("spin", ["0", "1/2", "1"])
def test_massive_poincare_casimirs(spin):
    rep = build_rep("poincare-massive", spin)
    m, c = rep.scalars.gen("m"), rep.scalars.gen("c")
    s_squared = rep.scalars.scalar(SPIN_SQUARED[spin]) / SPIN_SQUARED_DENOMINATOR[spin]
    assert casimir_eigenvalue(rep, "C1") == rep.field.const(-m ** 2 * c ** 2)
    assert casimir_eigenvalue(rep, "C2") == rep.field.const(m ** 2 * s_squared)


@pytest.mark.parametrize("spin", ["0", "1/2"])
def test_anti_de_sitter_casimirs_follow_poincare_values(spin):
    rep = build_rep("ads-deformed", spin)
    kappa, c = rep.scalars.gen("κ1"), rep.scalars.gen("c")
    s_squared = rep.scalars.scalar(SPIN_SQUARED[spin]) / SPIN_SQUARED_DENOMINATOR[spin]
    nine_quarters = rep.scalars.scalar(9) / 4
    assert casimir_eigenvalue(rep, "C1") == rep.field.const(-(kappa / c ** 2) * (nine_quarters + s_squared))
    assert casimir_eigenvalue(rep, "C2") == rep.field.const(kappa * s_squared / (4 * c ** 4))


def test_non_central_element_has_no_eigenvalue():
    rep = build_rep("poincare-massive")
    with pytest.raises(RepresentationError):
        casimir_eigenvalue(rep, rep.algebra.uea.gen("H"))


def test_substitution_respects_products():
    rep = build_rep("poincare-massive", "1/2")
    uea = rep.algebra.uea
    H, K1, P1 = uea.gen("H"), uea.gen("K1"), uea.gen("P1")
    product = substitute_rep(K1 * H * P1, rep)
    assert product == rep["K1"].compose(rep["H"]).compose(rep["P1"])
    assert substitute_rep(uea.commutator(K1, P1), rep) == diffop_commutator(rep["K1"], rep["P1"])


GENERATORS = ("H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3")
terms = st.lists(st.tuples(st.integers(min_value=-3, max_value=3).filter(bool),
                           st.lists(st.sampled_from(GENERATORS), max_size=2)), min_size=1, max_size=3)


@pytest.fixture(scope="module")
def scalar_spin_reps():
    return {name: build_rep(name) for name in ("galilei-bacry", "nh-deformed", "poincare-massive")}


def _element(uea, drawn):
    result = uea.zero
    for coeff, word in drawn:
        result = result + uea.word(word, coeff)
    return result


@given(st.sampled_from(("galilei-bacry", "nh-deformed", "poincare-massive")), terms, terms)
def test_substitution_is_a_morphism(scalar_spin_reps, name, left, right):
    rep = scalar_spin_reps[name]
    uea = rep.algebra.uea
    a, b = _element(uea, left), _element(uea, right)
    image_a, image_b = substitute_rep(a, rep), substitute_rep(b, rep)
    assert substitute_rep(a * b, rep) == image_a.compose(image_b)
    assert substitute_rep(uea.commutator(a, b), rep) == diffop_commutator(image_a, image_b)


def test_formal_inverses_have_no_image():
    rep = build_rep("poincare-massive")
    local = rep.algebra.uea.adjoin_inverse("H")
    with pytest.raises(RepresentationError):
        substitute_rep(local.inverse("H"), rep)


def test_newton_hooke_energy_from_deformed_generator():
    result = deform("galilei-extended", "nh-minus")
    bacry = build_rep("galilei-bacry", extra_params=("λ",))
    image = substitute_rep(result.generators["H"], bacry, {"α1": "λ/(2*m)", "ξ": "1"})
    assert image == convert_diffop(build_rep("nh-deformed")["H"], bacry.field)


def test_de_sitter_energy_from_deformed_generator():
    result = deform("poincare", "ds")
    massive = build_rep("poincare-massive", extra_params=("λ",))
    image = substitute_rep(result.generators["H"], massive, {"α1": "λ/(2*m)"})
    deformed = build_rep("ads-deformed", kappa_sign="-")
    assert image == convert_diffop(deformed["H"], massive.field)


@pytest.mark.parametrize("name, spin", [("poincare-massive", "1/2"), ("ads-deformed", "0"), ("galilei-bacry", "0")])
def test_spot_checks_agree(name, spin):
    rep = build_rep(name, spin)
    checks = spot_check_brackets(rep, points=2, seed=7, pairs=[("H", "K1"), ("P1", "K1"), ("K1", "K2")])
    assert [c.name for c in checks] == ["[H,K1]", "[P1,K1]", "[K1,K2]"]
    assert all(c.holds for c in checks)


@pytest.mark.slow
@pytest.mark.parametrize("name, spin, count", [
    ("galilei-bacry", "0", 55),
    ("nh-deformed", "0", 45),
    ("poincare-massive", "1/2", 45),
    ("ads-deformed", "0", 45),
])
def test_spot_checks_cover_the_bracket_table(name, spin, count):
    checks = spot_check_brackets(build_rep(name, spin), points=2, seed=11)
    assert len(checks) == count
    assert [(c.name, c.witness) for c in checks if not c.holds] == []


def test_spot_checks_catch_a_wrong_operator():
    rep = build_rep("poincare-massive")
    broken = replace(rep, operators={**rep.operators, "H": rep["H"].scale(2)})
    checks = spot_check_brackets(broken, points=4, pairs=[("H", "K1")])
    assert not checks[0].holds
    assert checks[0].witness.startswith("fails at")


def test_spot_checks_need_points():
    with pytest.raises(RepresentationError):
        spot_check_brackets(build_rep("nh-deformed"), points=0)


def test_verify_representation_report():
    report = verify_representation("nh-deformed", settings=Settings(spot_points=1))
    assert report.algebra == "nh-minus"
    assert report.passed
    numeric_only = verify_representation("poincare-massive", "7/2", float_spin=True)
    assert numeric_only.brackets == [] and numeric_only.numeric.passed
    with pytest.raises(SpinError):
        verify_representation("poincare-massive", "7/2")
