# Shared fixtures and hypothesis profiles
import os

import pytest
from hypothesis import HealthCheck, settings

from src.algebras import catalog_get
from src.scalars import Param, ParamContext

settings.register_profile("default", max_examples=200, derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=500, derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def galilei():
    return catalog_get("galilei")


@pytest.fixture(scope="session")
def poincare():
    return catalog_get("poincare")


@pytest.fixture(scope="session")
def galilei_uea(galilei):
    return galilei.uea


@pytest.fixture
def curved_context():
    """γ, λ with the curvatures κ2 = -γ^2, κ1 = -λ^2 and c = 1/γ."""
    import sympy
    g, l = sympy.Symbol("γ"), sympy.Symbol("λ")
    return ParamContext([Param("γ"), Param("λ"), Param("κ1", -l ** 2), Param("κ2", -g ** 2), Param("c", 1 / g)])
