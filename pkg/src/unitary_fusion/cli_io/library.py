"""
Built-in example datasets and the check dispatcher shared by `verify` and
scripts/check_examples.py.

Every builtin declares the checks it is expected to pass; blocks that touch
the unit are generated as identities and unlisted 1x1 blocks default to 1.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from ..braided.hexagon import verify_braiding_unitary, verify_hexagon
from ..braided.rsymbols import RSymbolSet
from ..config import DEFAULT_TOL
from ..errors import InputError
from ..fusion_core.fsymbols import FSymbolSet, dimension_report, verify_unitary
from ..fusion_core.pentagon import verify_pentagon
from ..fusion_core.ring import (
    FusionRing,
    fibonacci_ring,
    ising_ring,
    multiplicity_ring,
    verify_ring_axioms,
)
from ..group_cohomology.cochain import Cochain, random_positive_coboundary, verify_cocycle
from ..group_cohomology.group import (
    FiniteGroup,
    cyclic_group,
    direct_product,
    symmetric_group,
    verify_group_axioms,
)
from ..interface import CheckReport
from ..module_cats.module import regular_module, verify_module_pentagon, verify_module_unitary
from .dataset import Dataset, emit_dataset, parse_dataset

logger = logging.getLogger(__name__)

PHI = (1 + np.sqrt(5)) / 2

CHECK_NAMES = (
    "ring",
    "pentagon",
    "unitary",
    "dimensions",
    "hexagon",
    "braiding-unitary",
    "module",
    "group",
    "cocycle",
)


def _fill_fsymbols(ring: FusionRing, given: Mapping[tuple, np.ndarray]) -> FSymbolSet:
    action = ring.regular_action
    blocks = {}
    for key in action.admissible():
        dim = action.block_dim(*key)
        if key in given:
            blocks[key] = np.asarray(given[key], dtype=complex)
        elif 0 in key[:3] or dim == 1:
            blocks[key] = np.eye(dim, dtype=complex)
        else:
            raise InputError(f"no default for the {dim}x{dim} F block {key}")
    return FSymbolSet(ring=ring, blocks=blocks)


def _fill_rsymbols(ring: FusionRing, given: Mapping[tuple, complex]) -> RSymbolSet:
    blocks = {v: np.array([[given.get(v, 1.0)]], dtype=complex) for v in ring.vertices()}
    return RSymbolSet(ring=ring, blocks=blocks)


def _z2_ring() -> FusionRing:
    return cyclic_group(2).ring()


# ---------------------------------------------------------------------------
# Fusion data


def fibonacci_fsymbols() -> FSymbolSet:
    tau = 1
    block = np.array([[1 / PHI, 1 / np.sqrt(PHI)], [1 / np.sqrt(PHI), -1 / PHI]])
    return _fill_fsymbols(fibonacci_ring(), {(tau, tau, tau, tau): block})


def yang_lee_fsymbols() -> FSymbolSet:
    """The Galois conjugate of Fibonacci: satisfies the pentagon, admits no unitary gauge."""
    tau = 1
    off = 1j * np.sqrt(PHI)
    return _fill_fsymbols(fibonacci_ring(), {(tau, tau, tau, tau): [[-PHI, off], [off, PHI]]})


def fibonacci_rsymbols() -> RSymbolSet:
    return _fill_rsymbols(
        fibonacci_ring(), {(1, 1, 0): np.exp(-4j * np.pi / 5), (1, 1, 1): np.exp(3j * np.pi / 5)}
    )


def ising_fsymbols() -> FSymbolSet:
    sigma, psi = 1, 2
    hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    return _fill_fsymbols(
        ising_ring(),
        {
            (sigma, sigma, sigma, sigma): hadamard,
            (psi, sigma, psi, sigma): [[-1]],
            (sigma, psi, sigma, psi): [[-1]],
        },
    )


def ising_rsymbols() -> RSymbolSet:
    one, sigma, psi = 0, 1, 2
    return _fill_rsymbols(
        ising_ring(),
        {
            (sigma, sigma, one): np.exp(-1j * np.pi / 8),
            (sigma, sigma, psi): np.exp(3j * np.pi / 8),
            (sigma, psi, sigma): -1j,
            (psi, sigma, sigma): -1j,
            (psi, psi, one): -1.0,
        },
    )


def semion_fsymbols() -> FSymbolSet:
    return _fill_fsymbols(_z2_ring(), {(1, 1, 1, 1): [[-1]]})


def semion_cocycle() -> Cochain:
    G = cyclic_group(2)
    values = np.ones((2, 2, 2), dtype=complex)
    values[1, 1, 1] = -1
    return Cochain(G, 3, values)


# ---------------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class Example:
    name: str
    description: str
    build: Callable[[], Dataset]


def _fusion(name: str, F: FSymbolSet, checks: Tuple[str, ...], **sections) -> Dataset:
    return Dataset(name=name, checks=checks, ring=F.ring, f_symbols=F, **sections)


def _group(name: str, G: FiniteGroup, cochain: Optional[Cochain] = None) -> Dataset:
    checks = ("group", "cocycle") if cochain is not None else ("group",)
    return Dataset(name=name, checks=checks, group=G, cochain=cochain)


def _regular(name: str, F: FSymbolSet) -> Dataset:
    return _fusion(name, F, ("ring", "pentagon", "module"), module=regular_module(F))


_UNITARY = ("ring", "pentagon", "unitary", "dimensions")
_BRAIDED = _UNITARY + ("hexagon", "braiding-unitary")

_EXAMPLES = (
    Example(
        "fibonacci",
        "Fibonacci category, tau x tau = 1 + tau",
        lambda: _fusion("fibonacci", fibonacci_fsymbols(), _UNITARY),
    ),
    Example(
        "yang-lee",
        "Yang-Lee category: Fibonacci fusion rules, non-unitary associator",
        lambda: _fusion("yang-lee", yang_lee_fsymbols(), ("ring", "pentagon")),
    ),
    Example(
        "ising",
        "Ising category with its braiding, sigma x sigma = 1 + psi",
        lambda: _fusion("ising", ising_fsymbols(), _BRAIDED, r_symbols=ising_rsymbols()),
    ),
    Example(
        "fib-braided",
        "Fibonacci category with its braiding",
        lambda: _fusion(
            "fib-braided", fibonacci_fsymbols(), _BRAIDED, r_symbols=fibonacci_rsymbols()
        ),
    ),
    Example(
        "vec-z2-trivial",
        "Vec_Z2 with trivial associator and symmetric braiding",
        lambda: _fusion(
            "vec-z2-trivial",
            _fill_fsymbols(_z2_ring(), {}),
            _BRAIDED,
            r_symbols=_fill_rsymbols(_z2_ring(), {}),
        ),
    ),
    Example(
        "vec-z2-semion",
        "Vec_Z2 twisted by the nontrivial 3-cocycle, with the semion braiding",
        lambda: _fusion(
            "vec-z2-semion",
            semion_fsymbols(),
            _BRAIDED,
            r_symbols=_fill_rsymbols(_z2_ring(), {(1, 1, 0): 1j}),
        ),
    ),
    Example(
        "vec-z3",
        "Vec_Z3 with trivial associator",
        lambda: _fusion("vec-z3", _fill_fsymbols(cyclic_group(3).ring(), {}), _UNITARY),
    ),
    Example(
        "multiplicity-ring",
        "Fusion rules x x x = 1 + 2x (ring data only)",
        lambda: Dataset(name="multiplicity-ring", checks=("ring",), ring=multiplicity_ring()),
    ),
    Example("z2", "Cyclic group of order 2", lambda: _group("z2", cyclic_group(2))),
    Example("z3", "Cyclic group of order 3", lambda: _group("z3", cyclic_group(3))),
    Example(
        "z2xz2",
        "Klein four-group",
        lambda: _group("z2xz2", direct_product(cyclic_group(2), cyclic_group(2))),
    ),
    Example("s3", "Symmetric group on three letters", lambda: _group("s3", symmetric_group(3))),
    Example(
        "semion-cocycle",
        "The nontrivial U(1) 3-cocycle on Z2",
        lambda: _group("semion-cocycle", cyclic_group(2), semion_cocycle()),
    ),
    Example(
        "scaled-semion-cocycle",
        "Semion cocycle times a positive coboundary (seed 7)",
        lambda: _group(
            "scaled-semion-cocycle",
            cyclic_group(2),
            semion_cocycle()
            * random_positive_coboundary(
                cyclic_group(2), 3, np.random.default_rng(7), normalized=False
            ),
        ),
    ),
    Example(
        "regular-z2",
        "Vec_Z2 acting on itself",
        lambda: _regular("regular-z2", _fill_fsymbols(_z2_ring(), {})),
    ),
    Example(
        "regular-fibonacci",
        "Fibonacci category acting on itself",
        lambda: _regular("regular-fibonacci", fibonacci_fsymbols()),
    ),
)

EXAMPLES: Dict[str, Example] = {example.name: example for example in _EXAMPLES}


def example_names() -> List[str]:
    return list(EXAMPLES)


@lru_cache(maxsize=None)
def builtin_dataset(name: str) -> Dataset:
    """
    Raises:
        InputError: If no builtin has this name (".json" suffix ignored)
    """
    key = name[: -len(".json")] if name.endswith(".json") else name
    try:
        example = EXAMPLES[key]
    except KeyError:
        raise InputError(
            f"unknown example {name!r}; available: {', '.join(example_names())}"
        ) from None
    return example.build().with_sections(description=example.description)


# ---------------------------------------------------------------------------
# Checks


def default_checks(ds: Dataset) -> Tuple[str, ...]:
    """Declared checks, or every check the present sections support."""
    if ds.checks:
        return ds.checks
    checks = []
    if ds.ring is not None:
        checks.append("ring")
    if ds.f_symbols is not None:
        checks += ["pentagon", "unitary", "dimensions"]
    if ds.r_symbols is not None and ds.f_symbols is not None:
        checks.append("hexagon")
    if ds.module is not None and ds.f_symbols is not None:
        checks.append("module")
    if ds.group is not None:
        checks.append("group")
    if ds.cochain is not None:
        checks.append("cocycle")
    return tuple(checks)


def _require(ds: Dataset, check: str, *sections: str):
    for section in sections:
        if getattr(ds, section) is None:
            raise InputError(f"check {check!r} needs the {section} section")


def run_checks(ds: Dataset, names: Iterable[str], tol: float) -> List[CheckReport]:
    """
    Run the named checks in order.

    Raises:
        InputError: Unknown check or a section the check needs is absent
        PreconditionError: From "braiding-unitary" on inconsistent braided data
    """
    reports: List[CheckReport] = []
    for name in names:
        if name == "ring":
            _require(ds, name, "ring")
            reports.append(verify_ring_axioms(ds.ring))
        elif name == "pentagon":
            _require(ds, name, "f_symbols")
            reports.append(verify_pentagon(ds.f_symbols, tol))
        elif name == "unitary":
            _require(ds, name, "f_symbols")
            reports.append(verify_unitary(ds.f_symbols, tol))
            if ds.module is not None:
                reports.append(verify_module_unitary(ds.module, tol))
        elif name == "dimensions":
            _require(ds, name, "f_symbols")
            reports.append(dimension_report(ds.f_symbols, tol))
        elif name == "hexagon":
            _require(ds, name, "f_symbols", "r_symbols")
            reports.append(verify_hexagon(ds.f_symbols, ds.r_symbols, tol))
        elif name == "braiding-unitary":
            _require(ds, name, "f_symbols", "r_symbols")
            reports.append(verify_braiding_unitary(ds.f_symbols, ds.r_symbols, tol))
        elif name == "module":
            _require(ds, name, "f_symbols", "module")
            reports.append(verify_module_pentagon(ds.module, ds.f_symbols, tol))
        elif name == "group":
            _require(ds, name, "group")
            reports.append(verify_group_axioms(ds.group))
        elif name == "cocycle":
            _require(ds, name, "cochain")
            reports.append(verify_cocycle(ds.cochain, tol))
        else:
            raise InputError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")
    return reports


def load_dataset(
    source: str,
    tol: Optional[float] = None,
    strict: bool = True,
    default_tol: float = DEFAULT_TOL,
) -> Dataset:
    """
    Parse a dataset file, falling back to the builtin of that name.

    Builtins go through emit/parse as well, so tolerance overrides reach them.

    Raises:
        InputError: If the path is unreadable and names no builtin
        DatasetSyntaxError, DatasetSemanticError: From parse_dataset
    """
    path = Path(source)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
        logger.info("loading dataset file %s", path)
    else:
        text = emit_dataset(builtin_dataset(path.name))
        logger.info("loading builtin example %s", path.name)
    return parse_dataset(text, tol=tol, strict=strict, default_tol=default_tol)
