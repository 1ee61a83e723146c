import pytest

from src.config import RootDetermination
from src.algebras.expressions import Vector
from src.errors import DeformationError
from src.observables import (build_observables, check_position_algebra, check_so3_helicities, check_vector_form,
                             velocity_operator)
from src.steps import deform

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def observables():
    return build_observables()


def _failures(checks):
    return [(c.name, c.witness) for c in checks if not c.holds]


def test_vector_forms(observables):
    assert _failures(check_vector_form(observables)) == []


def test_boost_cross_momentum(observables):
    checks = {c.name: c for c in check_vector_form(observables)}
    assert checks["c^2 K' x P' = H J - H λ_pw u_pw"].holds
    K, P, J, H = observables["K'"], observables["P'"], observables["J'"], observables["H'"]
    c2 = observables.scalars.gen("c") ** 2
    cross = Vector(((K[1] * P[2] - K[2] * P[1]).scale(c2), (K[2] * P[0] - K[0] * P[2]).scale(c2),
                    (K[0] * P[1] - K[1] * P[0]).scale(c2)))
    assert not observables.check("c^2 K' x P' = H J", cross, Vector(H * j for j in J)).holds


def test_helicities_close_under_so3(observables):
    assert _failures(check_so3_helicities(observables)) == []


def test_position_operators(observables):
    checks = check_position_algebra(observables)
    assert len(checks) == 9 + 6 + 1
    assert _failures(checks) == []


def test_velocity_has_speed_c(observables):
    V, checks = velocity_operator(observables)
    assert len(V) == 3
    assert _failures(checks) == []


def test_residue_detects_a_false_identity(observables):
    check = observables.check("H' = 0", observables["H'"], observables.algebra.zero)
    assert not check.holds
    assert check.witness.startswith("H' = 0")


def test_vector_and_scalar_do_not_compare(observables):
    with pytest.raises(DeformationError):
        observables.check("mixed", observables["P'"], observables["H'"])


def test_observables_need_roots():
    with pytest.raises(DeformationError):
        build_observables(deform("galilei", "poincare"))


def test_observables_only_for_galilei_to_poincare():
    with pytest.raises(DeformationError):
        build_observables(deform("galilei-extended", "nh-minus", root_determination=RootDetermination.POSITIVE))
