# Command-line interface: check, deform, rep and catalog
import argparse
import logging
import sys
from typing import List, Optional, Sequence

from .algebras import catalog_export, catalog_list, check_all, check_contraction, load_algebra
from .algebras.catalog import CONTRACTIONS
from .chains import get_chain, with_kappa_sign
from .config import TOOL_NAME, TOOL_VERSION, ReportFormat, RootDetermination, RoutingStrategy, Settings, Status, configure_logging
from .errors import AlgebraParseError, CatalogError, DeformationError, RepresentationError, ScalarError
from .observables import build_observables, evaluate_deformed_casimirs, run_observable_suite
from .representations import REALIZATIONS
from .services import Report, ReportBuilder, ReportRenderer, verify_representation
from .steps import run_deformation

logger = logging.getLogger(__name__)

USAGE_ERRORS = (AlgebraParseError, CatalogError, DeformationError, RepresentationError, ScalarError, OSError)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TEXT.value)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="Deformations of kinematical Lie algebras")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="structural checks of an algebra")
    check.add_argument("algebra", help="catalog name or path to an .alg file")
    check.add_argument("--contractions", action="store_true", help="also check the contraction limits")

    deform = commands.add_parser("deform", parents=[common], help="deform a source algebra into a target")
    deform.add_argument("source")
    deform.add_argument("target")
    deform.add_argument("--root-determination", choices=[r.value for r in RootDetermination],
                        default=RootDetermination.NONE.value)
    deform.add_argument("--kappa-sign", choices=["+", "-"])
    deform.add_argument("--scale", help="comma-separated nonzero factors for the target Casimirs")
    deform.add_argument("--observables", action="store_true", help="relativistic observables (galilei -> poincare)")
    deform.add_argument("--casimirs", action="store_true", help="evaluate the target Casimirs on the new generators")
    deform.add_argument("--parallel", action="store_true", help="verify brackets on worker threads")

    rep = commands.add_parser("rep", parents=[common], help="verify a momentum-space representation")
    rep.add_argument("name", choices=sorted(REALIZATIONS))
    rep.add_argument("--spin", default="0")
    rep.add_argument("--seed", type=int)
    rep.add_argument("--points", type=int, help="sample points per spot-checked bracket")
    rep.add_argument("--kappa-sign", choices=["+", "-"])
    rep.add_argument("--float-spin", action="store_true", help="numeric spin matrices for any spin")

    catalog = commands.add_parser("catalog", help="list or export catalog algebras")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    catalog_commands.add_parser("list", parents=[common])
    export = catalog_commands.add_parser("export", parents=[common])
    export.add_argument("name")
    export.add_argument("--source", action="store_true", help="print the definition as written, before derivation")
    return parser


def _check(args: argparse.Namespace, builder: ReportBuilder) -> Report:
    defn = load_algebra(args.algebra)
    reports = check_all(defn)
    contractions: List = []
    if args.contractions:
        for deformed, contracted, kappa in CONTRACTIONS:
            if defn.name in (deformed, contracted):
                contractions.append(check_contraction(load_algebra(deformed), load_algebra(contracted), kappa))
    return builder.check(defn, reports, contractions)


def _deform(args: argparse.Namespace, builder: ReportBuilder) -> Report:
    spec = get_chain(args.source, with_kappa_sign(args.target, args.kappa_sign))
    if args.scale:
        spec = spec.scaled(*(factor.strip() for factor in args.scale.split(",")))
    root_determination = RootDetermination(args.root_determination)
    if args.observables and root_determination is RootDetermination.NONE:
        logger.info("observables need the positive roots; switching root determination on")
        root_determination = RootDetermination.POSITIVE
    routing = RoutingStrategy.PARALLEL if args.parallel else RoutingStrategy.SEQUENTIAL
    result = run_deformation(spec, Settings.with_overrides(routing=routing), root_determination)
    observables = run_observable_suite(build_observables(result)) if args.observables else None
    casimirs = evaluate_deformed_casimirs(result) if args.casimirs else None
    return builder.deformation(result, observables, casimirs)


def _rep(args: argparse.Namespace, builder: ReportBuilder) -> Report:
    settings = Settings.with_overrides(seed=args.seed, spot_points=args.points)
    report = verify_representation(args.name, args.spin, args.kappa_sign, settings, args.float_spin)
    return builder.representation(report)


def _catalog(args: argparse.Namespace, builder: ReportBuilder) -> Report:
    if args.catalog_command == "list":
        return builder.catalog(catalog_list())
    text = catalog_export(args.name, expanded=not args.source)
    return Report("catalog", f"export {args.name}", Status.CLOSED, {"export": {"name": args.name, "text": text}})


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    handlers = {
        "check": _check,
        "deform": _deform,
        "rep": _rep,
        "catalog": _catalog,
    }
    builder = ReportBuilder()
    try:
        report = handlers[args.command](args, builder)
    except USAGE_ERRORS as error:
        print(f"{TOOL_NAME}: error: {error}", file=sys.stderr)
        return 2
    fmt = ReportFormat(args.format)
    if args.command == "catalog" and args.catalog_command == "export" and fmt is ReportFormat.TEXT:
        print(report.sections["export"]["text"])
    else:
        print(ReportRenderer().render(report, fmt))
    return report.exit_code
