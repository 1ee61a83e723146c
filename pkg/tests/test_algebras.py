import pytest

from src.algebras import (CATALOG_NAMES, catalog_export, catalog_get, catalog_list, check_all, check_contraction,
                          check_jacobi, load_algebra, parse_algebra, parse_algebras, parse_expression, render_algebra)
from src.algebras.catalog import CONTRACTIONS, catalog_source
from src.algebras.expressions import render_expr
from src.errors import AlgebraParseError, CatalogError

SO3 = """
# rotations
algebra so3 {
  params [];
  generators [J1, J2, J3];
  bracket [J1, J2] = J3;
  bracket [J2, J3] = J1;
  bracket [J3, J1] = J2;
  casimir C = sq(J) eigenvalue j;
}
"""

BROKEN = """
algebra broken {
  generators [A, B, C];
  bracket [A, B] = A;
  bracket [A, C] = B;
}
"""


def test_parse_small_algebra():
    defn = parse_algebra(SO3)
    assert defn.generators == ("J1", "J2", "J3")
    assert defn.vectors == {"J": ("J1", "J2", "J3")}
    uea = defn.uea
    assert uea.commutator(uea.gen("J1"), uea.gen("J2")) == uea.gen("J3")
    assert check_all(defn)[0].passed


def test_render_then_parse_gives_same_definition():
    defn = catalog_get("poincare")
    assert parse_algebra(render_algebra(defn)) == defn


def test_expression_rendering_keeps_precedence():
    assert render_expr(parse_expression("-(a + b)*c^2")) == "-(a + b)*c^2"


def test_syntax_error_has_position():
    with pytest.raises(AlgebraParseError) as info:
        parse_algebra("algebra x {\n  generators [A, B]\n}")
    assert info.value.line is not None


@pytest.mark.parametrize("body, message", [
    ("generators [A, B]; bracket [A, X] = B;", "unknown generator"),
    ("generators [A, B]; bracket [A, B] = A; bracket [B, A] = A;", "non-antisymmetric"),
    ("generators [A, B]; bracket [A, B] = Q;", "unknown symbol"),
    ("generators [A, B]; bracket [A, B] = foo(A);", "unknown function"),
    ("params [A]; generators [A, B];", "both as generator and parameter"),
    ("params [a := b]; generators [A];", "unknown symbol"),
])
def test_semantic_errors(body, message):
    with pytest.raises(AlgebraParseError) as info:
        parse_algebra(f"algebra bad {{ {body} }}")
    assert message in str(info.value)


def test_jacobi_failure_has_witness():
    report = check_jacobi(parse_algebra(BROKEN))
    assert not report.passed
    assert report.failures[0].subject == "(A,B,C)"
    assert report.failures[0].witness == "-B"


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_algebras_pass_every_check(name):
    reports = check_all(catalog_get(name, verify=False))
    assert [r.check for r in reports if not r.passed] == []
    assert any(r.check == "cartan" for r in reports)
    assert any(r.check == "involution" for r in reports)


def test_ds_casimir_has_quartic_boost_term():
    defn = catalog_get("ds")
    names = [name for name, _, _ in defn.casimir_elements]
    assert names == ["C1", "C2"]
    assert "κ1*κ2*dot(J, K)^2" in render_algebra(defn)


def test_derived_entries():
    source = catalog_source("ads")
    assert source.base == "ds"
    ads = catalog_get("ads")
    assert ads.context.needs_gaussian
    kappa = ads.uea.scalars.gen("κ1")
    assert kappa == ads.uea.scalars.gen("λh") ** 2
    assert "from ds" in catalog_export("ads", expanded=False)
    assert "from" not in catalog_export("ads").splitlines()[0]


def test_catalog_listing():
    rows = dict(catalog_list())
    assert set(rows) == set(CATALOG_NAMES)
    assert rows["so5"].endswith("from ds")
    assert rows["galilei"].startswith("10 generators, 2 Casimirs")


def test_unknown_catalog_name():
    with pytest.raises(CatalogError):
        catalog_get("sl2")


@pytest.mark.parametrize("deformed, contracted, kappa", CONTRACTIONS)
def test_contractions(deformed, contracted, kappa):
    report = check_contraction(catalog_get(deformed), catalog_get(contracted), kappa)
    assert report.passed, report.failures


def test_contraction_mismatch_is_reported():
    report = check_contraction(catalog_get("poincare"), catalog_get("galilei-extended"), "κ2")
    assert not report.passed


def test_load_algebra_from_file(tmp_path):
    path = tmp_path / "broken.alg"
    path.write_text(BROKEN, encoding="utf-8")
    defn = load_algebra(str(path))
    assert defn.name == "broken"
    assert not check_all(defn)[0].passed


def test_derived_file_resolves_against_catalog(tmp_path):
    path = tmp_path / "nh.alg"
    path.write_text("algebra nh-copy from nh-minus with λ := I*λh { }", encoding="utf-8")
    defn = load_algebra(str(path))
    assert defn.generators == catalog_get("nh-plus").generators
    assert all(r.passed for r in check_all(defn))


def test_multiple_algebras_in_one_text():
    assert [d.name for d in parse_algebras(SO3 + BROKEN)] == ["so3", "broken"]
