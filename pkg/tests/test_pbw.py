import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.algebras import catalog_get, parse_algebra
from src.errors import AlgebraMismatch, LocalizationError, ScalarError, UnknownGenerator
from src.pbw import UEA, check_central

GENERATORS = ("H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3")

words = st.lists(st.sampled_from(GENERATORS), min_size=0, max_size=3)
coefficients = st.integers(min_value=-3, max_value=3).filter(bool)


def _element(algebra, terms):
    result = algebra.zero
    for coeff, word in terms:
        result = result + algebra.word(word, coeff)
    return result


elements = st.lists(st.tuples(coefficients, words), min_size=1, max_size=3)
small_elements = st.lists(st.tuples(coefficients, st.lists(st.sampled_from(GENERATORS), max_size=2)), min_size=1, max_size=2)


@pytest.fixture(scope="module")
def poincare_uea():
    return catalog_get("poincare").uea


def test_brackets_from_table(galilei_uea):
    H, K1, P1 = (galilei_uea.gen(g) for g in ("H", "K1", "P1"))
    assert galilei_uea.commutator(H, K1) == -P1
    assert galilei_uea.commutator(K1, H) == P1
    assert galilei_uea.commutator(K1, P1).is_zero


def test_normal_order_uses_pbw_order(galilei_uea):
    J1, P2, P3 = (galilei_uea.gen(g) for g in ("J1", "P2", "P3"))
    assert J1 * P2 == P2 * J1 + P3
    assert str(J1 * P2) == "P2*J1 + P3"


def test_normal_order_of_raw_words(galilei_uea):
    J1, P2, H = (galilei_uea.gen(g) for g in ("J1", "P2", "H"))
    raw = [(1, ["J1", "P2"]), (-1, ["P2", "J1"]), (2, ["H"])]
    assert galilei_uea.normal_order(raw) == J1 * P2 - P2 * J1 + H * 2
    assert galilei_uea.normal_order(raw) == galilei_uea.gen("P3") + H * 2


def test_unknown_generator(galilei_uea):
    with pytest.raises(UnknownGenerator):
        galilei_uea.gen("X")


def test_elements_of_different_algebras_do_not_mix(galilei_uea, poincare_uea):
    with pytest.raises(AlgebraMismatch):
        galilei_uea.gen("H") + poincare_uea.gen("H")


def test_scalar_arithmetic(poincare_uea):
    H = poincare_uea.gen("H")
    gamma = poincare_uea.scalars.gen("γ")
    assert (H * 2 - H).scale(gamma) == H.scale(gamma)
    assert (H * gamma) / gamma == H
    assert poincare_uea.scalar(3).is_scalar


def test_poincare_boost_bracket(poincare_uea):
    P1, K1, H = (poincare_uea.gen(g) for g in ("P1", "K1", "H"))
    kappa = poincare_uea.scalars.gen("κ2")
    assert poincare_uea.commutator(P1, K1) == H.scale(kappa)


def test_casimirs_are_central(poincare):
    for name, element, _ in poincare.casimir_elements:
        assert check_central(element) == [], name


def test_inverse_cancels_and_derives(galilei_uea):
    local = galilei_uea.adjoin_inverse("H")
    H, H_inv, K1, P1 = local.gen("H"), local.inverse("H"), local.gen("K1"), local.gen("P1")
    assert H * H_inv == local.one
    assert H_inv * H == local.one
    # [K1, H^-1] = -H^-1 [K1, H] H^-1 = -H^-1 P1 H^-1
    assert local.commutator(K1, H_inv) == -(H_inv * P1 * H_inv)


def test_inverse_of_a_dilation_does_not_terminate():
    dilation = parse_algebra("algebra dil { generators [H, X]; bracket [H, X] = X; }").uea
    local = dilation.adjoin_inverse("H")
    with pytest.raises(LocalizationError, match="does not terminate"):
        local.commutator(local.gen("X"), local.inverse("H"))


def test_division_by_zero_scalar(poincare_uea):
    H = poincare_uea.gen("H")
    gamma = poincare_uea.scalars.gen("γ")
    with pytest.raises(ScalarError, match="division by zero"):
        H / (gamma - gamma)
    with pytest.raises(ScalarError, match="division by zero"):
        H / poincare_uea.zero
    with pytest.raises(AlgebraMismatch):
        H / H


@given(elements, elements, elements)
def test_multiplication_is_associative(a, b, c):
    algebra = catalog_get("poincare").uea
    x, y, z = (_element(algebra, t) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)


@given(small_elements, small_elements, small_elements)
def test_commutator_jacobi_and_leibniz(a, b, c):
    algebra = catalog_get("ds").uea
    x, y, z = (_element(algebra, t) for t in (a, b, c))
    comm = algebra.commutator
    assert (comm(x, comm(y, z)) + comm(y, comm(z, x)) + comm(z, comm(x, y))).is_zero
    assert comm(x, y * z) == comm(x, y) * z + y * comm(x, z)


@given(words)
def test_word_matches_product_of_generators(word):
    algebra = catalog_get("ds").uea
    product = algebra.one
    for g in word:
        product = product * algebra.gen(g)
    assert algebra.word(word) == product


@given(elements, elements)
def test_reduction_reconstructs_input(a, b):
    defn = catalog_get("poincare")
    algebra = defn.uea
    (_, C1, _), (_, C2, _) = defn.casimir_elements
    r = _element(algebra, a) * C1 + _element(algebra, b)
    relations = [(C1, 5), (C2, -2)]
    reduction = algebra.reduce_mod_center(r, relations)
    rebuilt = reduction.reduced
    for q, (casimir, value) in zip(reduction.cofactors, relations):
        rebuilt = rebuilt + q * (casimir - algebra.scalar(value))
    assert rebuilt == r


def test_reduction_of_casimir_power(galilei):
    algebra = galilei.uea
    (_, C1, _), (_, C2, _) = galilei.casimir_elements
    relations = [(C1, 4), (C2, 9)]
    assert algebra.reduce_mod_center(C1 * C1 + C2, relations).reduced == algebra.scalar(25)


def test_duplicate_generators_rejected(galilei_uea):
    with pytest.raises(UnknownGenerator):
        UEA(["H", "H"], galilei_uea.scalars, {})
