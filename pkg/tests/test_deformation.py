import asyncio

import pytest

from src.algebras import catalog_get
from src.chains import get_chain, supported_chains, with_kappa_sign
from src.config import RootDetermination, RoutingStrategy, Settings, Status
from src.errors import DeformationError
from src.observables import evaluate_deformed_casimirs, evaluate_deformed_vector, singular_locus
from src.steps import DeformationOrchestrator, build_seed, deform, extract_kappa_expansion, run_deformation
from src.steps.verification import root_context


def _relations(result):
    return {r.unknown: r for r in result.relations}


@pytest.fixture(scope="module")
def galilei_poincare():
    return deform("galilei", "poincare", root_determination=RootDetermination.POSITIVE)


@pytest.fixture(scope="module")
def extended_nh_minus():
    return deform("galilei-extended", "nh-minus")


@pytest.fixture(scope="module")
def poincare_ds():
    return deform("poincare", "ds", root_determination=RootDetermination.POSITIVE)


def test_unknown_chain_lists_supported_ones():
    with pytest.raises(DeformationError) as info:
        get_chain("poincare", "galilei")
    assert "galilei -> poincare" in str(info.value)
    assert len(supported_chains()) == 10


def test_kappa_sign_selects_sibling():
    assert with_kappa_sign("ds", "+") == "ads"
    assert with_kappa_sign("ads", "-") == "ds"
    assert with_kappa_sign("nh-minus", None) == "nh-minus"
    with pytest.raises(DeformationError):
        with_kappa_sign("poincare", "+")


def test_poincare_first_casimir_expansion(poincare):
    algebra = poincare.uea
    (_, C1, _), _ = poincare.casimir_elements
    order_zero, order_one = extract_kappa_expansion(C1, "κ2", algebra.scalars)
    P = [algebra.gen(f"P{i}") for i in (1, 2, 3)]
    H = algebra.gen("H")
    assert order_zero == sum((p * p for p in P), algebra.zero)
    assert order_one == H * H


def test_seed_needs_one_constant_per_term(poincare):
    H = poincare.uea.gen("H")
    with pytest.raises(DeformationError):
        build_seed([H, H], ["α1"])


def test_galilei_to_poincare_constraints(galilei_poincare):
    result = galilei_poincare
    scalars = result.context.scalars
    g, c1, c2, a2 = (scalars.gen(n) for n in ("γ", "c1", "c2", "α2"))
    relations = _relations(result)
    assert relations["α2"].power == 2
    assert relations["α2"].value == g ** 2 / (4 * c1 * c2)
    assert relations["α1"].power == 1
    assert relations["α1"].value == -a2 * c2 / c1
    assert result.unsolved == []


def test_galilei_to_poincare_closes_every_bracket(galilei_poincare):
    result = galilei_poincare
    assert result.status is Status.CLOSED
    assert len(result.records) == 45
    by_id = {r.bracket_id: r for r in result.records}
    # these hold before any central reduction
    assert by_id["[P1,P2]"].identically_zero
    assert by_id["[P1,K2]"].identically_zero
    assert result.preconditions


def test_galilei_to_poincare_positive_roots(galilei_poincare):
    result = galilei_poincare
    context = root_context(result.context.scalars, dict(result.context.spec.primitives))
    g, u, w = (context.gen(n) for n in ("γ", "u", "w"))
    assert result.roots["α2"] == g / (2 * u * w)
    assert result.roots["α1"] == -g * w / (2 * u ** 3)


@pytest.mark.slow
def test_galilei_to_poincare_deformed_casimirs_vanish(galilei_poincare):
    values = evaluate_deformed_casimirs(galilei_poincare)
    assert [v.name for v in values] == ["C1", "C2"]
    assert all(v.is_scalar and not v.value for v in values)


def test_extended_galilei_to_newton_hooke(extended_nh_minus):
    result = extended_nh_minus
    scalars = result.context.scalars
    kappa, m, xi = (scalars.gen(n) for n in ("κ1", "m", "ξ"))
    relation = _relations(result)["α1"]
    assert relation.power == 2
    assert relation.value == -kappa / (4 * m ** 2 * xi ** 2)
    assert result.closed


def test_newton_hooke_casimirs_vanish(extended_nh_minus):
    values = evaluate_deformed_casimirs(extended_nh_minus, ["C1"])
    assert [v.name for v in values] == ["C1"]
    assert values[0].is_scalar and not values[0].value
    assert all(component.is_zero for component in evaluate_deformed_vector(extended_nh_minus, "W"))


def test_positive_curvature_newton_hooke():
    result = deform("galilei-extended", "nh-plus")
    scalars = result.context.scalars
    assert scalars.gaussian
    kappa, m, xi = (scalars.gen(n) for n in ("κ1", "m", "ξ"))
    assert _relations(result)["α1"].value == -kappa / (4 * m ** 2 * xi ** 2)
    assert result.closed


def test_unextended_galilei_does_not_reach_newton_hooke():
    result = deform("galilei", "nh-plus")
    assert result.status is Status.FAILED
    assert any("new generators do not span" in note for note in result.notes)
    assert not get_chain("galilei", "nh-plus").expect_closure


def test_poincare_to_de_sitter_constraint(poincare_ds):
    scalars = poincare_ds.context.scalars
    kappa, c, c1p = (scalars.gen(n) for n in ("κ1", "c", "c1p"))
    relation = _relations(poincare_ds)["α1"]
    assert relation.power == 2
    assert relation.value == kappa * c ** 2 / (4 * c1p)
    assert poincare_ds.closed


def test_poincare_to_de_sitter_root_is_real(poincare_ds):
    context = root_context(poincare_ds.context.scalars, dict(poincare_ds.context.spec.primitives))
    assert poincare_ds.roots["α1"] == context.gen("λ") / (2 * context.gen("m"))


def test_poincare_to_anti_de_sitter_root_is_imaginary():
    result = deform("poincare", "ads", root_determination=RootDetermination.POSITIVE)
    context = root_context(result.context.scalars, dict(result.context.spec.primitives))
    expected = context.imaginary_unit() * context.gen("λh") / (2 * context.gen("m"))
    assert result.roots["α1"] == expected


@pytest.mark.slow
def test_de_sitter_casimirs_in_poincare_invariants(poincare_ds):
    scalars = poincare_ds.context.scalars
    kappa, c, c1p, c2p = (scalars.gen(n) for n in ("κ1", "c", "c1p", "c2p"))
    values = {v.name: v for v in evaluate_deformed_casimirs(poincare_ds)}
    first = values["C1"].value
    assert first == -9 * kappa / (4 * c ** 2) + kappa * c2p / c1p
    assert values["C2"].value == -(kappa / (4 * c ** 2)) * c2p / c1p
    assert not singular_locus(first, "c2p", 9 * c1p / (4 * c ** 2), scalars)


def test_scaled_casimirs_keep_closure():
    spec = get_chain("galilei", "poincare").scaled("2", "-3")
    result = run_deformation(spec)
    assert result.closed
    assert len(result.relations) == 2


def test_zero_scale_rejected():
    with pytest.raises(DeformationError):
        run_deformation(get_chain("galilei", "poincare").scaled("0"))


def test_parallel_routing_matches_sequential(galilei_poincare):
    result = run_deformation(get_chain("galilei", "poincare"), Settings(routing=RoutingStrategy.PARALLEL))
    assert [r.status for r in result.records] == [r.status for r in galilei_poincare.records]
    assert [r.render() for r in result.relations] == [r.render() for r in galilei_poincare.relations]


def test_router_keeps_no_state_between_runs(extended_nh_minus):
    orchestrator = DeformationOrchestrator(Settings(routing=RoutingStrategy.PARALLEL))
    result = asyncio.run(orchestrator.adeform(get_chain("galilei-extended", "nh-minus")))
    assert vars(orchestrator.router) == {}
    assert [r.status for r in result.records] == [r.status for r in extended_nh_minus.records]


def test_missing_curvature_rejected():
    spec = get_chain("galilei", "poincare")
    with pytest.raises(DeformationError):
        run_deformation(spec, target=catalog_get("galilei"))


@pytest.mark.slow
@pytest.mark.parametrize("source, target", [
    ("galilei", "euclidean4"),
    ("euclidean4", "so5"),
    ("euclidean4", "so41-euclidean-chain"),
])
def test_euclidean_chains_close(source, target):
    assert deform(source, target).closed
