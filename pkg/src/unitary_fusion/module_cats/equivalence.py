"""
Module equivalences (F, f) between module categories over one fusion category,
and their unitarization.

f^{a,m}_{m'} acts on Hom(F m', a |> F m). Coherence is the module analogue of
the monoidal one: the target L-symbols are the source L-symbols gauged by f,
with the ring factor of every frame fixed to the identity. A positive
coherent f is a coboundary (mu_m / mu_{m'}) I, solved one connected component
of the action graph at a time.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import COHERENCE_FACTOR, DEFAULT_TOL, UNITARITY_FACTOR
from ..errors import DecompositionError, InconsistencyError, InputError, PreconditionError
from ..fusion_core.fsymbols import tree_positions
from ..fusion_core.gauge import (
    compose_gauges,
    frame_coherence,
    frame_matrices,
    gauge_distance,
    gauge_unitarity_residual,
)
from ..interface import CertificateReport, CheckReport, make_certificate, make_check
from ..polar_engine.polar import is_positive_gauge, polar_decompose_gauge, transport_check
from ..polar_engine.roots import absolute_value
from ..unitarizer.trivialize import scalar_of, solve_log_system
from .module import (
    ModuleData,
    ModuleGauge,
    ModuleNatIso,
    action_components,
    identity_module_gauge,
    module_coboundary_gauge,
    verify_module_unitary,
)

logger = logging.getLogger(__name__)


def is_module_isomorphism(
    source: ModuleData, target: ModuleData, simple_map: Sequence[int]
) -> bool:
    """True iff `simple_map` is a bijection of module simples preserving the action."""
    pi = np.asarray(simple_map, dtype=np.int64)
    if source.ring != target.ring or source.module_rank != target.module_rank:
        return False
    if pi.shape != (source.module_rank,) or sorted(pi.tolist()) != list(range(len(pi))):
        return False
    return bool(np.array_equal(target.n[:, pi][:, :, pi], source.n))


def relabel_module(M: ModuleData, simple_map: Sequence[int], source: ModuleData) -> ModuleData:
    """L-symbols of M expressed over the module simples of `source` along `simple_map`."""
    pi = [int(x) for x in simple_map]
    if pi == list(range(len(pi))):
        return M
    blocks = {}
    for key in source.action.admissible():
        a, b, m, m_out = key
        target_key = (a, b, pi[m], pi[m_out])
        rows, cols = tree_positions(M.action, target_key)
        row_order = [rows[tree] for tree in source.action.row_basis(*key)]
        col_order = [cols[(pi[k], x, y)] for k, x, y in source.action.col_basis(*key)]
        blocks[key] = M.block(*target_key)[np.ix_(row_order, col_order)]
    return source.with_blocks(blocks)


def relabel_module_gauge(
    g: ModuleGauge, simple_map: Sequence[int], source: ModuleData
) -> ModuleGauge:
    pi = [int(x) for x in simple_map]
    keys = identity_module_gauge(source.action).vertex_keys()
    return ModuleGauge(
        action=source.action,
        blocks={(a, m, k): g.block(a, pi[m], pi[k]) for a, m, k in keys},
    )


@dataclass(frozen=True, eq=False)
class ModuleEquivalenceData:
    """(F, f): source -> target, module simple m sent to simple_map[m]"""

    source: ModuleData
    target: ModuleData
    simple_map: Tuple[int, ...]
    tensorator: ModuleGauge  # over target module labels

    def __post_init__(self):
        simple_map = tuple(int(x) for x in self.simple_map)
        if not is_module_isomorphism(self.source, self.target, simple_map):
            raise InputError(
                f"simple map {list(simple_map)} does not preserve the module action"
            )
        if not np.array_equal(self.tensorator.action.mult, self.target.n):
            raise InputError("tensorator must live on the target module action")
        object.__setattr__(self, "simple_map", simple_map)

    @property
    def tol(self) -> float:
        return self.source.tol

    def pulled_back(self) -> Tuple[ModuleData, ModuleGauge]:
        return (
            relabel_module(self.target, self.simple_map, self.source),
            relabel_module_gauge(self.tensorator, self.simple_map, self.source),
        )

    def with_tensorator(self, tensorator: ModuleGauge) -> "ModuleEquivalenceData":
        return ModuleEquivalenceData(self.source, self.target, self.simple_map, tensorator)


def identity_module_equivalence(M: ModuleData) -> ModuleEquivalenceData:
    return ModuleEquivalenceData(
        M, M, tuple(range(M.module_rank)), identity_module_gauge(M.action)
    )


def module_coherence_residual(
    E: ModuleEquivalenceData, tol: Optional[float] = None
) -> CheckReport:
    """
    Coherence residual of a module equivalence.

    Returns:
        CheckReport named "module-coherence"
    """
    tol = E.tol if tol is None else tol
    target, f = E.pulled_back()
    source = E.source
    worst, first_bad = 0.0, ""
    for key in source.action.admissible():
        frames = frame_matrices(source.action, key, None, f.block)
        residual = frame_coherence(source.block(*key), target.block(*key), frames)
        if residual > tol and not first_bad:
            first_bad = f"module coherence fails at block {key}"
        worst = max(worst, residual)
    logger.debug("module coherence residual %.3e", worst)
    return make_check("module-coherence", worst, tol, first_bad)


@dataclass(frozen=True)
class ModuleFactorization:
    unitary_equivalence: ModuleEquivalenceData
    positive_part: ModuleGauge  # over target module labels
    certificates: List[CertificateReport] = field(default_factory=list)


@dataclass(frozen=True)
class ModuleTrivialization:
    nat_iso: ModuleNatIso  # mu_m, first simple of every component fixed to 1
    residual: float
    certificates: List[CertificateReport] = field(default_factory=list)


@dataclass(frozen=True)
class ModuleUnitarization:
    equivalence: ModuleEquivalenceData
    nat_iso: ModuleNatIso  # input => output, indexed by source module simples
    positive_scalars: ModuleNatIso
    certificates: List[CertificateReport] = field(default_factory=list)


def _transport_residual(E: ModuleEquivalenceData, tol: float) -> float:
    target, f = E.pulled_back()
    worst = 0.0
    for key in E.source.action.admissible():
        left, right = frame_matrices(E.source.action, key, None, f.block)
        report = transport_check(
            right, left, E.source.block(*key).T, target.block(*key).T, COHERENCE_FACTOR * tol
        )
        worst = max(worst, report["residual"])
    return worst


def factorize_module_equivalence(E: ModuleEquivalenceData) -> ModuleFactorization:
    """
    Split f = p u into a unitary module tensorator and a positive part.

    Raises:
        PreconditionError: If E is not coherent
        DecompositionError: If a certificate exceeds 100 * tol
    """
    tol = E.tol
    coherence = module_coherence_residual(E)
    if not coherence["passed"]:
        raise PreconditionError(
            f"module equivalence is not coherent (residual {coherence['residual']:.3e})"
        )
    u, p = polar_decompose_gauge(E.tensorator)
    unitary_E = E.with_tensorator(u)
    positive_E = ModuleEquivalenceData(
        E.target, E.target, tuple(range(E.target.module_rank)), p
    )
    absolute = E.tensorator.with_blocks(
        {key: absolute_value(m) for key, m in E.tensorator.blocks.items()}
    )
    budget = COHERENCE_FACTOR * tol
    residuals = {
        "recomposition": gauge_distance(compose_gauges(p, u), E.tensorator),
        "unitary-factor-coherence": module_coherence_residual(unitary_E)["residual"],
        "positive-part-coherence": module_coherence_residual(positive_E)["residual"],
        "square-root": gauge_distance(p, absolute),
        "transport": _transport_residual(E, tol),
    }
    certificates = [make_certificate(name, r, budget) for name, r in residuals.items()]
    failed = [c for c in certificates if not c["passed"]]
    if failed:
        raise DecompositionError(
            f"{failed[0]['name']} certificate {failed[0]['residual']:.3e} exceeds {budget:.1e}; "
            "input is not a module equivalence between unitary presentations"
        )
    logger.info("factorized module equivalence, worst certificate %.3e", max(residuals.values()))
    return ModuleFactorization(
        unitary_equivalence=unitary_E, positive_part=p, certificates=certificates
    )


def trivialize_positive_module(
    p: ModuleGauge, M: Optional[ModuleData] = None, tol: Optional[float] = None
) -> ModuleTrivialization:
    """
    Recover mu with module_coboundary_gauge(mu) == p.

    Solves x_m - x_{m'} = log lambda^{a,m}_{m'} by least squares with the
    smallest simple of each connected component pinned to x = 0.

    Args:
        p: Positive module gauge
        M: Module data p is a module structure for; when given, coherence of
            (id, p) is checked first
        tol: Threshold (defaults to M.tol, else the package default)

    Raises:
        PreconditionError: If p is not positive, or (id, p) is not coherent for M
        InconsistencyError: If a block is not scalar or the system is inconsistent
    """
    if tol is None:
        tol = M.tol if M is not None else DEFAULT_TOL
    if not is_positive_gauge(p, tol):
        raise PreconditionError("module gauge is not positive")
    action = p.action
    certificates = []
    if M is not None:
        identity_map = tuple(range(M.module_rank))
        coherence = module_coherence_residual(
            ModuleEquivalenceData(M, M, identity_map, p), COHERENCE_FACTOR * tol
        )
        if not coherence["passed"]:
            raise PreconditionError(
                f"positive module part is not coherent (residual {coherence['residual']:.3e})"
            )
        certificates.append(
            make_certificate("positive-coherence", coherence["residual"], COHERENCE_FACTOR * tol)
        )
    components = action_components(action)
    if p.unit_defect() > tol:
        raise InconsistencyError("positive module part is not unit-normalized")

    pinned = {group[0] for group in components}
    free = [m for m in range(action.rank) if m not in pinned]
    column = {m: j for j, m in enumerate(free)}
    rows, rhs = [], []
    for a, m, k in p.vertex_keys():
        if a == 0:
            continue
        row = np.zeros(len(free))
        if m in column:
            row[column[m]] += 1.0
        if k in column:
            row[column[k]] -= 1.0
        rows.append(row)
        rhs.append(np.log(scalar_of(p.block(a, m, k), (a, m, k), tol)))
    matrix = np.array(rows).reshape(len(rows), len(free))
    x, residual = solve_log_system(matrix, np.array(rhs))
    if residual > tol:
        raise InconsistencyError(
            f"log-linear module coboundary system is inconsistent (residual {residual:.3e})"
        )
    logs = np.zeros(action.rank)
    logs[free] = x
    mu = ModuleNatIso(module_rank=action.rank, components=np.exp(logs))
    reproduction = gauge_distance(module_coboundary_gauge(action, mu), p)
    certificates.append(make_certificate("coboundary", reproduction, COHERENCE_FACTOR * tol))
    logger.info("trivialized positive module part over %d component(s)", len(components))
    return ModuleTrivialization(nat_iso=mu, residual=residual, certificates=certificates)


def module_nat_iso_residual(
    eta: ModuleNatIso,
    E1: ModuleEquivalenceData,
    E2: ModuleEquivalenceData,
    tol: Optional[float] = None,
) -> CheckReport:
    """
    Residual of g^{a,m}_{m'} eta_{m'} == eta_m f^{a,m}_{m'} over all action vertices.

    Raises:
        InputError: If the equivalences do not share source and simple map
    """
    tol = E1.tol if tol is None else tol
    if E1.simple_map != E2.simple_map or E1.source.module_rank != E2.source.module_rank:
        raise InputError("module natural isomorphisms need one underlying functor")
    if eta.module_rank != E1.source.module_rank:
        raise InputError("natural isomorphism does not match the module rank")
    _, f = E1.pulled_back()
    _, g = E2.pulled_back()
    x = eta.components
    worst, first_bad = 0.0, ""
    for a, m, k in f.vertex_keys():
        lhs = g.block(a, m, k) * x[k]
        rhs = x[m] * f.block(a, m, k)
        scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
        residual = float(np.linalg.norm(lhs - rhs) / scale)
        if residual > tol and not first_bad:
            first_bad = f"module naturality fails at vertex {(a, m, k)}"
        worst = max(worst, residual)
    return make_check("module-nat-iso", worst, tol, first_bad)


def polar_split_module_nat_iso(eta: ModuleNatIso) -> Tuple[ModuleNatIso, ModuleNatIso]:
    """
    (eta / |eta|, |eta|).

    Positive module natural isomorphisms need not be trivial (2 * id on an
    indecomposable module is one), so the positive part is returned as is.
    """
    rho = np.abs(eta.components)
    return (
        ModuleNatIso(module_rank=eta.module_rank, components=eta.components / rho),
        ModuleNatIso(module_rank=eta.module_rank, components=rho),
    )


def unitarize_module_equivalence(E: ModuleEquivalenceData) -> ModuleUnitarization:
    """
    Module equivalence with unitary tensorator, module-naturally isomorphic to E.

    Raises:
        PreconditionError: If an L-symbol set is not unitary or E is not coherent
        DecompositionError, InconsistencyError: Propagated from the stages
    """
    tol = E.tol
    for side, M in (("source", E.source), ("target", E.target)):
        report = verify_module_unitary(M, UNITARITY_FACTOR * tol)
        if not report["passed"]:
            raise PreconditionError(
                f"{side} L-symbols are not unitary ({report['residual']:.3e})"
            )
    factorization = factorize_module_equivalence(E)
    trivial = trivialize_positive_module(factorization.positive_part, E.target, tol)
    output = factorization.unitary_equivalence
    mu = trivial.nat_iso.components
    eta = ModuleNatIso(
        module_rank=E.source.module_rank, components=[1.0 / mu[m] for m in E.simple_map]
    )
    budget = COHERENCE_FACTOR * tol
    certificates = list(factorization.certificates) + list(trivial.certificates)
    certificates += [
        make_certificate(
            "output-unitarity", gauge_unitarity_residual(output.tensorator), UNITARITY_FACTOR * tol
        ),
        make_certificate(
            "output-coherence", module_coherence_residual(output)["residual"], budget
        ),
        make_certificate(
            "module-nat-iso", module_nat_iso_residual(eta, E, output, budget)["residual"], budget
        ),
    ]
    failed = [c for c in certificates if not c["passed"]]
    if failed:
        raise DecompositionError(
            f"{failed[0]['name']} certificate {failed[0]['residual']:.3e} failed"
        )
    logger.info("unitarized module equivalence: mu = %s", np.round(mu.real, 12).tolist())
    return ModuleUnitarization(
        equivalence=output, nat_iso=eta, positive_scalars=trivial.nat_iso, certificates=certificates
    )
