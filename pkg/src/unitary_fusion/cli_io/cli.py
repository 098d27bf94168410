"""
unitary-fusion command line.

Exit codes: 0 success, 1 a check or certificate failed (or a pipeline
precondition did not hold), 2 usage, input or dataset errors.
"""

import argparse
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence

import numpy as np

from ..braided.factorize import factorize_braided_equivalence, unitarize_braided_equivalence
from ..braided.rsymbols import gauge_rsymbols
from ..config import Settings, UNITARITY_FACTOR, configure_logging
from ..errors import InputError, UnitaryFusionError
from ..fusion_core.gauge import gauge_unitarity_residual, relabel_gauge
from ..fusion_core.pentagon import verify_pentagon
from ..fusion_core.sampling import coboundary_twisted_gauge, random_gauge
from ..group_cohomology.cochain import (
    polar_split_cocycle,
    random_positive_coboundary,
    trivialize_positive_cocycle,
    unitarize_cocycle,
    verify_cocycle,
)
from ..group_cohomology.group import verify_group_axioms
from ..group_cohomology.vecg import build_vecG_category
from ..interface import ErrorCode, make_certificate, make_check
from ..module_cats.equivalence import ModuleEquivalenceData, unitarize_module_equivalence
from ..module_cats.module import (
    apply_module_gauge,
    coboundary_twisted_module_gauge,
    connected_components,
    verify_module_pentagon,
    verify_module_unitary,
)
from ..polar_engine.polar import polar_decompose_gauge
from ..unitarizer.equivalence import gauged_equivalence
from ..unitarizer.factorize import factorize_equivalence, unitarize_equivalence
from ..unitarizer.search import search_unitary_gauge
from .dataset import Dataset, emit_dataset, encode_blocks, encode_values
from .library import (
    CHECK_NAMES,
    EXAMPLES,
    builtin_dataset,
    default_checks,
    load_dataset,
    run_checks,
)
from .report import Reporter, report_text, write_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_INPUT_CODES = {
    ErrorCode.INPUT_ERROR,
    ErrorCode.NUMERICAL_ERROR,
    ErrorCode.DOMAIN_ERROR,
    ErrorCode.DATASET_SYNTAX,
    ErrorCode.DATASET_SEMANTIC,
}


def exit_code_for(exc: UnitaryFusionError) -> int:
    return EXIT_USAGE if exc.code in _INPUT_CODES else EXIT_FAILED


@dataclass
class _Run:
    """State handed to every command handler"""

    args: argparse.Namespace
    settings: Settings
    reporter: Reporter
    dataset: Optional[Dataset] = None

    @property
    def tol(self) -> float:
        if self.dataset is None:
            return self.settings.tol
        return self.dataset.effective_tol(self.args.tol, self.settings.tol)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.args.seed)

    def require(self, *sections: str) -> Dataset:
        for section in sections:
            if getattr(self.dataset, section) is None:
                raise InputError(f"{self.reporter.command} needs a {section} section")
        return self.dataset

    @contextmanager
    def timed(self, stage: str) -> Iterator[None]:
        start = time.perf_counter()
        yield
        self.reporter.timing(stage, round((time.perf_counter() - start) * 1000.0, 3))


def _complex_text(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _values_text(values) -> str:
    return "[" + ", ".join(_complex_text(z) for z in np.asarray(values).reshape(-1)) + "]"


def _split_document(unitary_part: list, positive_part: list) -> str:
    return report_text({"positive_part": positive_part, "unitary_part": unitary_part})


# ---------------------------------------------------------------------------
# Fusion commands


def _verify(run: _Run) -> Optional[str]:
    ds = run.dataset
    names = run.args.check or default_checks(ds)
    run.reporter.section(f"checks: {', '.join(names)}")
    with run.timed("checks"):
        for report in run_checks(ds, names, run.tol):
            run.reporter.check(report)
    return emit_dataset(ds)


def _equivalence(run: _Run):
    """Dataset equivalence, or a seeded gauge of F onto itself when none is given."""
    ds = run.require("f_symbols")
    if ds.equivalence is not None:
        return ds.equivalence, ds.target_r_symbols
    run.reporter.info(
        "no equivalence section: gauging the F-symbols by a random tensorator "
        f"(seed {run.args.seed})"
    )
    f = coboundary_twisted_gauge(ds.ring, run.rng())
    R_tgt = gauge_rsymbols(ds.r_symbols, f) if ds.r_symbols is not None else None
    return gauged_equivalence(ds.f_symbols, f), R_tgt


def _braided(run: _Run, R_tgt) -> bool:
    return run.dataset.r_symbols is not None and R_tgt is not None


def _unitarize(run: _Run) -> Optional[str]:
    E, R_tgt = _equivalence(run)
    ds = run.dataset
    braided = _braided(run, R_tgt)
    run.reporter.section("braided unitarization" if braided else "unitarization")
    with run.timed("unitarize"):
        if braided:
            result = unitarize_braided_equivalence(E, ds.r_symbols, R_tgt)
        else:
            result = unitarize_equivalence(E)
    for certificate in result.certificates:
        run.reporter.certificate(certificate)
    run.reporter.info(f"positive scalars mu = {_values_text(result.positive_scalars.components)}")
    run.reporter.info(f"natural isomorphism eta = {_values_text(result.nat_iso.components)}")
    return emit_dataset(
        ds.with_sections(
            equivalence=result.equivalence, target_r_symbols=R_tgt, nat_iso=result.nat_iso
        )
    )


def _factorize(run: _Run) -> Optional[str]:
    E, R_tgt = _equivalence(run)
    ds = run.dataset
    braided = _braided(run, R_tgt)
    run.reporter.section("braided factorization" if braided else "factorization")
    with run.timed("factorize"):
        if braided:
            result = factorize_braided_equivalence(E, ds.r_symbols, R_tgt)
        else:
            result = factorize_equivalence(E)
    for certificate in result.certificates:
        run.reporter.certificate(certificate)
    positive = relabel_gauge(result.positive_part, E.simple_map, E.source.ring)
    return emit_dataset(
        ds.with_sections(
            equivalence=result.unitary_equivalence, target_r_symbols=R_tgt, gauge=positive
        )
    )


def _polar(run: _Run) -> Optional[str]:
    ds = run.require("ring")
    g = ds.gauge
    if g is None:
        run.reporter.info(f"no gauge section: decomposing a random gauge (seed {run.args.seed})")
        g = random_gauge(ds.ring, run.rng(), "general")
    run.reporter.section("polar decomposition g = p u")
    with run.timed("polar"):
        pair = polar_decompose_gauge(g)
    budget = UNITARITY_FACTOR * run.tol
    run.reporter.certificate(make_certificate("reconstruction", pair.residual, budget))
    run.reporter.certificate(
        make_certificate("unitary-part", gauge_unitarity_residual(pair.unitary_part), budget)
    )
    run.reporter.info(f"worst block condition number {pair.condition:.3e}")
    return _split_document(
        encode_blocks(pair.unitary_part.blocks), encode_blocks(pair.positive_part.blocks)
    )


def _gauge_search(run: _Run) -> Optional[str]:
    ds = run.require("f_symbols")
    run.reporter.section("unitary gauge search")
    with run.timed("gauge-search"):
        search = search_unitary_gauge(
            ds.f_symbols,
            max_iters=run.args.max_iters,
            seed=run.args.seed,
            restarts=run.args.restarts,
            tol=run.tol,
        )
    run.reporter.info(f"{search.iterations} iterations, converged: {search.converged}")
    run.reporter.check(
        make_check(
            "gauge-search",
            search.residual,
            run.tol,
            f"no unitary gauge found within {run.args.max_iters} iterations (heuristic)",
        )
    )
    return emit_dataset(ds.with_sections(gauge=search.gauge))


# ---------------------------------------------------------------------------
# Cohomology commands


def _cocycle_verify(run: _Run) -> Optional[str]:
    ds = run.require("group", "cochain")
    run.reporter.section("group and cocycle")
    run.reporter.check(verify_group_axioms(ds.group))
    run.reporter.check(verify_cocycle(ds.cochain, run.tol))
    return None


def _cocycle_split(run: _Run) -> Optional[str]:
    ds = run.require("group", "cochain")
    run.reporter.section("polar split omega = u |omega|")
    with run.timed("split"):
        pair = polar_split_cocycle(ds.cochain, run.tol)
    run.reporter.certificate(make_certificate("reconstruction", pair.residual, run.tol))
    run.reporter.check(verify_cocycle(pair.unitary_part, run.tol))
    run.reporter.check(verify_cocycle(pair.positive_part, run.tol))
    run.reporter.info(f"max |omega| / min |omega| = {pair.condition:.6g}")
    return _split_document(
        encode_values(pair.unitary_part.flat()), encode_values(pair.positive_part.flat())
    )


def _cocycle_trivialize(run: _Run) -> Optional[str]:
    ds = run.require("group")
    r = ds.cochain
    if r is None:
        run.reporter.info(
            f"no cochain section: random positive {run.args.degree}-coboundary "
            f"(seed {run.args.seed})"
        )
        r = random_positive_coboundary(ds.group, run.args.degree, run.rng())
    run.reporter.section(f"trivializing a positive {r.degree}-cocycle")
    with run.timed("trivialize"):
        result = trivialize_positive_cocycle(r, run.tol)
    for certificate in result.certificates:
        run.reporter.certificate(certificate)
    run.reporter.info(f"least-squares residual {result.residual:.3e}")
    run.reporter.info(f"eta = {_values_text(result.cochain.flat())}")
    return emit_dataset(ds.with_sections(cochain=result.cochain))


def _cocycle_unitarize(run: _Run) -> Optional[str]:
    ds = run.require("group", "cochain")
    run.reporter.section("cocycle unitarization")
    with run.timed("unitarize"):
        result = unitarize_cocycle(ds.cochain, run.tol)
    for certificate in result.certificates:
        run.reporter.certificate(certificate)
    run.reporter.info(f"unitary cocycle = {_values_text(result.cocycle.flat())}")
    return emit_dataset(ds.with_sections(cochain=result.cocycle))


def _cocycle_build_vecg(run: _Run) -> Optional[str]:
    ds = run.require("group", "cochain")
    run.reporter.section("Vec_G^omega")
    with run.timed("build"):
        ring, F = build_vecG_category(ds.group, ds.cochain, run.tol)
    run.reporter.check(verify_pentagon(F, run.tol))
    return emit_dataset(ds.with_sections(ring=ring, f_symbols=F))


# ---------------------------------------------------------------------------
# Module commands


def _module_verify(run: _Run) -> Optional[str]:
    ds = run.require("f_symbols", "module")
    run.reporter.section("module data")
    run.reporter.check(verify_module_pentagon(ds.module, ds.f_symbols, run.tol))
    run.reporter.check(verify_module_unitary(ds.module, run.tol))
    run.reporter.info(f"connected components: {connected_components(ds.module)}")
    return None


def _module_unitarize(run: _Run) -> Optional[str]:
    ds = run.require("module")
    E = ds.module_equivalence
    if E is None:
        run.reporter.info(
            f"no module_equivalence section: random module tensorator (seed {run.args.seed})"
        )
        M = ds.module
        f = coboundary_twisted_module_gauge(M.action, run.rng())
        E = ModuleEquivalenceData(
            M, apply_module_gauge(M, f), tuple(range(M.module_rank)), f
        )
    run.reporter.section("module unitarization")
    with run.timed("unitarize"):
        result = unitarize_module_equivalence(E)
    for certificate in result.certificates:
        run.reporter.certificate(certificate)
    run.reporter.info(f"positive scalars mu = {_values_text(result.positive_scalars.components)}")
    return emit_dataset(ds.with_sections(module_equivalence=result.equivalence))


# ---------------------------------------------------------------------------
# Examples


def _examples_list(run: _Run) -> Optional[str]:
    for example in EXAMPLES.values():
        run.reporter.info(f"{example.name:<24} {example.description}")
    return None


def _examples_emit(run: _Run) -> Optional[str]:
    text = emit_dataset(builtin_dataset(run.args.name))
    if run.args.out is None:
        run.reporter.stream.write(text)
    return text


_Handler = Callable[[_Run], Optional[str]]

HANDLERS: Dict[str, _Handler] = {
    "verify": _verify,
    "unitarize": _unitarize,
    "factorize": _factorize,
    "polar": _polar,
    "gauge-search": _gauge_search,
    "cocycle verify": _cocycle_verify,
    "cocycle split": _cocycle_split,
    "cocycle trivialize": _cocycle_trivialize,
    "cocycle unitarize": _cocycle_unitarize,
    "cocycle build-vecg": _cocycle_build_vecg,
    "module verify": _module_verify,
    "module unitarize": _module_unitarize,
    "examples list": _examples_list,
    "examples emit": _examples_emit,
}


# ---------------------------------------------------------------------------
# Parser


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the command's output document here")
    common.add_argument("--report", help="write the JSON machine report here")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    common.add_argument("--timings", action="store_true", help="record wall time per stage")
    return common


def _dataset_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False, parents=[_common_flags()])
    parent.add_argument("dataset", help="dataset file, or the name of a built-in example")
    parent.add_argument("--tol", type=float, help="tolerance (overrides dataset and environment)")
    parent.add_argument("--seed", type=int, default=None, help="seed for random gauges")
    parent.add_argument("--max-iters", type=int, default=None, help="gauge-search iteration budget")
    parent.add_argument(
        "--lenient", action="store_true", help="drop invalid dataset sections with a warning"
    )
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitary-fusion",
        description="Verify and unitarize skeletal fusion, braided and module category data.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    dataset = _dataset_flags()

    verify = commands.add_parser("verify", parents=[dataset], help="run consistency checks")
    verify.add_argument("--check", action="append", choices=CHECK_NAMES, help="repeatable")
    commands.add_parser("unitarize", parents=[dataset], help="unitarize an equivalence")
    commands.add_parser("factorize", parents=[dataset], help="polar-factorize an equivalence")
    commands.add_parser("polar", parents=[dataset], help="polar decomposition of a gauge")
    search = commands.add_parser("gauge-search", parents=[dataset], help="look for a unitary gauge")
    search.add_argument("--restarts", type=int, default=0)

    cocycle = commands.add_parser("cocycle", help="group cohomology").add_subparsers(
        dest="subcommand", required=True
    )
    for name, text in (
        ("verify", "check the cocycle condition"),
        ("split", "polar split of a cocycle"),
        ("unitarize", "cohomologous U(1) cocycle"),
        ("build-vecg", "F-symbols of Vec_G^omega"),
    ):
        cocycle.add_parser(name, parents=[dataset], help=text)
    trivialize = cocycle.add_parser(
        "trivialize", parents=[dataset], help="write a positive cocycle as a coboundary"
    )
    trivialize.add_argument("--degree", type=int, default=2, choices=(1, 2, 3))

    module = commands.add_parser("module", help="module categories").add_subparsers(
        dest="subcommand", required=True
    )
    module.add_parser("verify", parents=[dataset], help="module pentagon and unitarity")
    module.add_parser("unitarize", parents=[dataset], help="unitarize a module equivalence")

    examples = commands.add_parser("examples", help="built-in datasets").add_subparsers(
        dest="subcommand", required=True
    )
    examples.add_parser("list", parents=[_common_flags()], help="list built-in examples")
    emit = examples.add_parser("emit", parents=[_common_flags()], help="print a built-in dataset")
    emit.add_argument("name")
    return parser


def _command_name(args: argparse.Namespace) -> str:
    sub = getattr(args, "subcommand", None)
    return f"{args.command} {sub}" if sub else args.command


def run_command(argv: Sequence[str], stream=None) -> int:
    """
    Parse argv, run one command and write the requested outputs.

    Returns:
        Exit code (0 success, 1 failed check or pipeline precondition, 2 usage or input error)
    """
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        settings = Settings.from_env()
    except UnitaryFusionError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(
        {0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    )

    command = _command_name(args)
    reporter = Reporter(command, getattr(args, "dataset", "-"), stream)
    run = _Run(args=args, settings=settings, reporter=reporter)
    code = EXIT_OK
    try:
        if hasattr(args, "dataset"):
            settings = settings.with_tol(args.tol)
            if args.seed is None:
                args.seed = settings.seed
            if args.max_iters is None:
                args.max_iters = settings.max_iters
            run.settings = settings
            run.dataset = load_dataset(
                args.dataset, tol=args.tol, strict=not args.lenient, default_tol=settings.tol
            )
            reporter.banner()
            for section in run.dataset.skipped:
                reporter.warning(f"dropped invalid section {section}")
        output = HANDLERS[command](run)
        if output is not None and args.out:
            write_text(args.out, output)
    except UnitaryFusionError as exc:
        logger.debug("command aborted", exc_info=True)
        reporter.error(exc)
        code = exit_code_for(exc)

    if code == EXIT_OK and not reporter.passed:
        code = EXIT_FAILED
    if not command.startswith("examples"):
        reporter.summary()
    if args.timings:
        for stage, ms in reporter.timings_ms.items():
            reporter.info(f"{stage}: {ms:.1f} ms")
    if args.report:
        try:
            write_text(args.report, report_text(reporter.to_report(args.timings)))
        except UnitaryFusionError as exc:
            print(f"error: {exc.message}", file=sys.stderr)
            return EXIT_USAGE
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
