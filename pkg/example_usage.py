#!/usr/bin/env python3
"""
Example usage of the kinematical deformation engine.
This demonstrates how to use the different components independently.
"""

import asyncio

from src.algebras import catalog_get, check_all
from src.chains import get_chain
from src.config import RootDetermination, RoutingStrategy, Settings
from src.observables import build_observables, evaluate_deformed_casimirs, run_observable_suite
from src.representations import build_rep, casimir_values, check_float_spin
from src.scalars import render_scalar
from src.steps import DeformationOrchestrator


async def example_basic_deformation():
    """Galilei -> Poincaré with the positive roots of the seed constants"""
    print("=== Basic Deformation Example ===")

    orchestrator = DeformationOrchestrator()
    result = await orchestrator.adeform(get_chain("galilei", "poincare"), RootDetermination.POSITIVE)

    print(f"✅ {result.source} -> {result.target}: {result.status.value}")
    for relation in result.relations:
        print(f"   {relation.render()}")
    for name, root in result.roots.items():
        print(f"   {name} = {render_scalar(root)}")
    return result


async def example_routing_strategies():
    """The same chain verified in order and on worker threads"""
    print("\n=== Routing Strategies Example ===")

    spec = get_chain("galilei-extended", "nh-minus")
    for strategy in (RoutingStrategy.SEQUENTIAL, RoutingStrategy.PARALLEL):
        print(f"\n🔄 Testing {strategy.value.upper()} routing:")
        try:
            result = await DeformationOrchestrator(Settings(routing=strategy)).adeform(spec)
            closed = sum(r.status.value == "closed" for r in result.records)
            print(f"   ✅ {closed}/{len(result.records)} brackets closed")
        except Exception as e:
            print(f"   ❌ Error: {e}")


def example_catalog_checks():
    """Structural checks of a few catalog algebras"""
    print("\n=== Catalog Checks Example ===")

    for name in ("poincare", "ds", "so5"):
        reports = check_all(catalog_get(name))
        failed = [r.check for r in reports if not r.passed]
        print(f"   {name}: {'all checks pass' if not failed else 'failed ' + ', '.join(failed)}")


async def example_curved_casimirs():
    """Poincaré -> de Sitter and the deformed Casimirs in Poincaré invariants"""
    print("\n=== Deformed Casimirs Example ===")

    result = await DeformationOrchestrator().adeform(get_chain("poincare", "ds"))
    for value in evaluate_deformed_casimirs(result):
        shown = render_scalar(value.value) if value.is_scalar else value.witness
        print(f"   {value.name}'' = {shown}")


def example_observables(result):
    """Relativistic observables on the Galilei enveloping algebra"""
    print("\n=== Observables Example ===")

    checks = run_observable_suite(build_observables(result))
    for check in checks:
        print(f"   {'✅' if check.holds else '❌'} {check.name}")


def example_representations():
    """Momentum-space realizations and their Casimir eigenvalues"""
    print("\n=== Representations Example ===")

    for name, spin in (("poincare-massive", "1/2"), ("ads-deformed", "0")):
        rep = build_rep(name, spin)
        for value in casimir_values(rep):
            print(f"   {name} s={spin}: {value.name} = {value.value.render() if value.is_scalar else value.witness}")
    report = check_float_spin("7/2")
    print(f"   spin 7/2 (numeric): S^2 = {report.casimir_value:.4f}, passed = {report.passed}")


async def main():
    """Run all examples"""
    print("🌌 Kinematical Deformation Engine - Usage Examples\n")

    result = await example_basic_deformation()
    await example_routing_strategies()
    example_catalog_checks()
    await example_curved_casimirs()
    example_observables(result)
    example_representations()

    print("\n✨ All examples completed!")


if __name__ == "__main__":
    asyncio.run(main())
