"""
Dataset files: JSON documents holding any combination of fusion, braided,
module and group-cohomology data.

Complex numbers are written as [re, im] pairs (a bare number is read as a
real). Emission sorts keys and indents by two spaces, so emitting a parsed
dataset is idempotent. The field-by-field layout is in docs/DATASET_FORMAT.md.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import jsonschema
import numpy as np

from ..braided.rsymbols import RSymbolSet, gauge_rsymbols
from ..config import DEFAULT_TOL
from ..errors import DatasetSemanticError, DatasetSyntaxError, UnitaryFusionError
from ..fusion_core.fsymbols import FSymbolSet, singular_blocks, unit_normalization_defects
from ..fusion_core.gauge import Gauge, NatIso, apply_gauge
from ..fusion_core.ring import FusionRing, relabel_ring, verify_ring_axioms
from ..group_cohomology.cochain import Cochain
from ..group_cohomology.group import FiniteGroup
from ..module_cats.equivalence import ModuleEquivalenceData
from ..module_cats.module import ModuleData, ModuleGauge, apply_module_gauge
from ..unitarizer.equivalence import EquivalenceData

logger = logging.getLogger(__name__)

FORMAT_VERSION = "1.0"


@dataclass(frozen=True)
class Dataset:
    """Parsed sections; absent sections are None"""

    name: str = ""
    format_version: str = FORMAT_VERSION
    description: str = ""
    tolerance: Optional[float] = None  # as written in the file
    checks: Tuple[str, ...] = ()
    ring: Optional[FusionRing] = None
    f_symbols: Optional[FSymbolSet] = None
    r_symbols: Optional[RSymbolSet] = None
    gauge: Optional[Gauge] = None
    nat_iso: Optional[NatIso] = None
    equivalence: Optional[EquivalenceData] = None
    target_r_symbols: Optional[RSymbolSet] = None
    module: Optional[ModuleData] = None
    module_equivalence: Optional[ModuleEquivalenceData] = None
    group: Optional[FiniteGroup] = None
    cochain: Optional[Cochain] = None
    skipped: List[str] = field(default_factory=list, compare=False)

    def effective_tol(self, override: Optional[float] = None, default: float = DEFAULT_TOL):
        if override is not None:
            return override
        return self.tolerance if self.tolerance is not None else default

    def with_sections(self, **sections) -> "Dataset":
        return replace(self, **sections)


@lru_cache(maxsize=1)
def dataset_schema() -> Dict[str, Any]:
    text = resources.files(__package__).joinpath("dataset.schema.json").read_text("utf-8")
    return json.loads(text)


# ---------------------------------------------------------------------------
# Decoding


def _complex(value) -> complex:
    if isinstance(value, list):
        return complex(float(value[0]), float(value[1]))
    return complex(float(value), 0.0)


def _matrix(rows) -> np.ndarray:
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise DatasetSemanticError("block", "ragged matrix rows")
    return np.array([[_complex(x) for x in row] for row in rows], dtype=complex)


def _blocks(entries) -> Dict[tuple, np.ndarray]:
    blocks = {}
    for entry in entries:
        key = tuple(int(i) for i in entry["key"])
        if key in blocks:
            raise DatasetSemanticError("block", f"duplicate block {key}")
        blocks[key] = _matrix(entry["block"])
    return blocks


def _multiplicities(rules, shape) -> np.ndarray:
    table = np.zeros(shape, dtype=np.int64)
    for a, b, c, mult in rules:
        if not (a < shape[0] and b < shape[1] and c < shape[2]):
            raise DatasetSemanticError("rules", f"rule {[a, b, c, mult]} is out of range")
        table[a, b, c] = mult
    return table


def _permuted_action(n: np.ndarray, simple_map: Sequence[int]) -> np.ndarray:
    target = np.zeros_like(n)
    for a, m, k in zip(*np.nonzero(n)):
        target[a, simple_map[m], simple_map[k]] = n[a, m, k]
    return target


# parsed object -> JSON section it comes from
_SOURCE_SECTIONS = {"ring": "fusion_ring", "module": "module_data"}


def _check_invertible(section: str, blocks, what: str):
    singular = singular_blocks(blocks)
    if singular:
        raise DatasetSemanticError(section, f"{what} block {singular[0]} is singular")


def _check_fsymbols(section: str, F: FSymbolSet):
    _check_invertible(section, F.blocks, "F-symbol")
    defects = unit_normalization_defects(F)
    if defects:
        raise DatasetSemanticError(
            section, f"F-symbol block {defects[0]} touches the unit but is not the identity"
        )


def _check_gauge(section: str, g: Gauge, tol: float):
    _check_invertible(section, g.blocks, "gauge")
    defect = g.unit_defect()
    if defect > tol:
        raise DatasetSemanticError(
            section, f"unit-touching gauge blocks differ from the identity by {defect:.3e}"
        )


class _Parser:
    def __init__(self, data: Dict[str, Any], tol: float, strict: bool):
        self.data = data
        self.tol = tol
        self.strict = strict
        self.sections: Dict[str, Any] = {}
        self.skipped: List[str] = []

    def section(self, name: str, build: Callable[[Any], Dict[str, Any]], *needs: str):
        if name not in self.data:
            return
        missing = [need for need in needs if self.sections.get(need) is None]
        try:
            if missing:
                needed = ", ".join(_SOURCE_SECTIONS.get(m, m) for m in missing)
                raise DatasetSemanticError(name, f"requires section(s) {needed}")
            self.sections.update(build(self.data[name]))
        except DatasetSemanticError as exc:
            if exc.section != name:
                exc = DatasetSemanticError(name, exc.message)
            self._fail(name, exc)
        except UnitaryFusionError as exc:
            self._fail(name, DatasetSemanticError(name, exc.message))

    def _fail(self, name: str, exc: DatasetSemanticError):
        if self.strict:
            raise exc
        logger.warning("skipping section %s: %s", name, exc.message)
        self.skipped.append(name)

    def ring(self, raw) -> Dict[str, Any]:
        rank = raw["rank"]
        N = _multiplicities(raw["rules"], (rank, rank, rank))
        labels = tuple(raw.get("labels", ()))
        ring = FusionRing(N=N, dual=tuple(raw["dual"]), labels=labels)
        report = verify_ring_axioms(ring)
        if not report["passed"]:
            raise DatasetSemanticError("fusion_ring", report["detail"])
        return {"ring": ring}

    def f_symbols(self, raw) -> Dict[str, Any]:
        F = FSymbolSet(ring=self.sections["ring"], blocks=_blocks(raw), tol=self.tol)
        missing = F.missing_blocks()
        if missing:
            raise DatasetSemanticError("f_symbols", f"missing blocks, first {missing[0]}")
        _check_fsymbols("f_symbols", F)
        return {"f_symbols": F}

    def r_symbols(self, raw) -> Dict[str, Any]:
        R = RSymbolSet(self.sections["ring"], _blocks(raw), self.tol)
        _check_invertible("r_symbols", R.blocks, "R-symbol")
        return {"r_symbols": R}

    def gauge(self, raw) -> Dict[str, Any]:
        g = Gauge(ring=self.sections["ring"], blocks=_blocks(raw))
        _check_gauge("gauge", g, self.tol)
        return {"gauge": g}

    def nat_iso(self, raw) -> Dict[str, Any]:
        return {"nat_iso": NatIso(self.sections["ring"], [_complex(x) for x in raw])}

    def equivalence(self, raw) -> Dict[str, Any]:
        F: FSymbolSet = self.sections["f_symbols"]
        simple_map = tuple(raw["simple_map"])
        if sorted(simple_map) != list(range(F.ring.rank)):
            raise DatasetSemanticError("equivalence", "simple_map is not a permutation")
        target_ring = relabel_ring(F.ring, simple_map)
        tensorator = Gauge(ring=target_ring, blocks=_blocks(raw["tensorator"]))
        _check_gauge("equivalence", tensorator, self.tol)
        if "target_f_symbols" in raw:
            target = FSymbolSet(target_ring, _blocks(raw["target_f_symbols"]), self.tol)
            _check_fsymbols("equivalence", target)
        elif simple_map == tuple(range(F.ring.rank)):
            target = apply_gauge(F, tensorator)
        else:
            raise DatasetSemanticError(
                "equivalence", "target_f_symbols is required when simple_map permutes simples"
            )
        sections: Dict[str, Any] = {
            "equivalence": EquivalenceData(F, target, simple_map, tensorator)
        }
        R = self.sections.get("r_symbols")
        if "target_r_symbols" in raw:
            sections["target_r_symbols"] = RSymbolSet(
                target_ring, _blocks(raw["target_r_symbols"]), self.tol
            )
        elif R is not None and simple_map == tuple(range(F.ring.rank)):
            sections["target_r_symbols"] = gauge_rsymbols(R, tensorator)
        return sections

    def module(self, raw) -> Dict[str, Any]:
        ring: FusionRing = self.sections["ring"]
        rank = raw["rank"]
        n = _multiplicities(raw["action"], (ring.rank, rank, rank))
        module = ModuleData(
            ring=ring,
            module_rank=rank,
            n=n,
            blocks=_blocks(raw["l_symbols"]),
            labels=tuple(raw.get("labels", ())),
            tol=self.tol,
        )
        missing = module.missing_blocks()
        if missing:
            raise DatasetSemanticError("module_data", f"missing blocks, first {missing[0]}")
        return {"module": module}

    def module_equivalence(self, raw) -> Dict[str, Any]:
        M: ModuleData = self.sections["module"]
        simple_map = tuple(raw["simple_map"])
        if sorted(simple_map) != list(range(M.module_rank)):
            raise DatasetSemanticError("module_equivalence", "simple_map is not a permutation")
        n_target = _permuted_action(M.n, simple_map)
        if "target_l_symbols" in raw:
            target = ModuleData(
                M.ring, M.module_rank, n_target, _blocks(raw["target_l_symbols"]), tol=self.tol
            )
        elif simple_map == tuple(range(M.module_rank)):
            target = M
        else:
            raise DatasetSemanticError(
                "module_equivalence", "target_l_symbols is required when simple_map permutes"
            )
        tensorator = ModuleGauge(action=target.action, blocks=_blocks(raw["tensorator"]))
        if "target_l_symbols" not in raw:
            target = apply_module_gauge(M, tensorator)
        return {"module_equivalence": ModuleEquivalenceData(M, target, simple_map, tensorator)}

    def group(self, raw) -> Dict[str, Any]:
        return {
            "group": FiniteGroup(
                cayley=np.array(raw["cayley"]),
                labels=tuple(raw.get("labels", ())),
                name=raw.get("name", ""),
            )
        }

    def cochain(self, raw) -> Dict[str, Any]:
        values = [_complex(x) for x in raw["values"]]
        return {"cochain": Cochain(self.sections["group"], raw["degree"], values)}


def parse_dataset(
    text: str,
    tol: Optional[float] = None,
    strict: bool = True,
    default_tol: float = DEFAULT_TOL,
) -> Dataset:
    """
    Parse and validate a dataset document.

    Args:
        text: JSON text
        tol: Tolerance override for the built objects (else the file's
            `tolerance`, else default_tol)
        strict: Raise on the first invalid section; when False, invalid
            sections are logged, dropped and listed in `skipped`

    Returns:
        Dataset

    Raises:
        DatasetSyntaxError: Malformed JSON, with line and column
        DatasetSemanticError: Schema violation or a section failing its invariants
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    try:
        jsonschema.validate(data, dataset_schema())
    except jsonschema.ValidationError as exc:
        path = [str(p) for p in exc.absolute_path]
        raise DatasetSemanticError(path[0] if path else "dataset", exc.message) from None

    parser = _Parser(data, tol if tol is not None else data.get("tolerance", default_tol), strict)
    parser.section("fusion_ring", parser.ring)
    parser.section("f_symbols", parser.f_symbols, "ring")
    parser.section("r_symbols", parser.r_symbols, "ring")
    parser.section("gauge", parser.gauge, "ring")
    parser.section("nat_iso", parser.nat_iso, "ring")
    parser.section("equivalence", parser.equivalence, "f_symbols")
    parser.section("module_data", parser.module, "ring")
    parser.section("module_equivalence", parser.module_equivalence, "module")
    parser.section("group", parser.group)
    parser.section("cochain", parser.cochain, "group")
    return Dataset(
        name=data.get("name", ""),
        format_version=data["format_version"],
        description=data.get("description", ""),
        tolerance=data.get("tolerance"),
        checks=tuple(data.get("checks", ())),
        skipped=parser.skipped,
        **parser.sections,
    )


# ---------------------------------------------------------------------------
# Encoding


def _encode_complex(z: complex) -> List[float]:
    """[re, im]; json writes each part as its shortest round-trip repr, which is exact."""
    return [float(z.real), float(z.imag)]


def _encode_matrix(matrix: np.ndarray) -> List[List[List[float]]]:
    return [[_encode_complex(z) for z in row] for row in np.asarray(matrix)]


def encode_values(values) -> List[List[float]]:
    return [_encode_complex(z) for z in np.asarray(values).reshape(-1)]


def encode_blocks(blocks) -> List[Dict[str, Any]]:
    return [
        {"key": [int(i) for i in key], "block": _encode_matrix(blocks[key])}
        for key in sorted(blocks)
    ]


def _encode_rules(table: np.ndarray) -> List[List[int]]:
    return [[int(i) for i in idx] + [int(table[idx])] for idx in zip(*np.nonzero(table))]


def dataset_to_dict(ds: Dataset) -> Dict[str, Any]:
    data: Dict[str, Any] = {"format_version": ds.format_version}
    if ds.name:
        data["name"] = ds.name
    if ds.description:
        data["description"] = ds.description
    if ds.tolerance is not None:
        data["tolerance"] = float(ds.tolerance)
    if ds.checks:
        data["checks"] = list(ds.checks)
    if ds.ring is not None:
        data["fusion_ring"] = {
            "rank": ds.ring.rank,
            "labels": list(ds.ring.labels),
            "dual": list(ds.ring.dual),
            "rules": _encode_rules(ds.ring.N),
        }
    if ds.f_symbols is not None:
        data["f_symbols"] = encode_blocks(ds.f_symbols.blocks)
    if ds.r_symbols is not None:
        data["r_symbols"] = encode_blocks(ds.r_symbols.blocks)
    if ds.gauge is not None:
        data["gauge"] = encode_blocks(ds.gauge.blocks)
    if ds.nat_iso is not None:
        data["nat_iso"] = encode_values(ds.nat_iso.components)
    if ds.equivalence is not None:
        E = ds.equivalence
        section = {
            "simple_map": list(E.simple_map),
            "tensorator": encode_blocks(E.tensorator.blocks),
            "target_f_symbols": encode_blocks(E.target.blocks),
        }
        if ds.target_r_symbols is not None:
            section["target_r_symbols"] = encode_blocks(ds.target_r_symbols.blocks)
        data["equivalence"] = section
    if ds.module is not None:
        data["module_data"] = {
            "rank": ds.module.module_rank,
            "labels": list(ds.module.labels),
            "action": _encode_rules(ds.module.n),
            "l_symbols": encode_blocks(ds.module.blocks),
        }
    if ds.module_equivalence is not None:
        E = ds.module_equivalence
        data["module_equivalence"] = {
            "simple_map": list(E.simple_map),
            "tensorator": encode_blocks(E.tensorator.blocks),
            "target_l_symbols": encode_blocks(E.target.blocks),
        }
    if ds.group is not None:
        data["group"] = {
            "cayley": ds.group.cayley.tolist(),
            "labels": list(ds.group.labels),
        }
        if ds.group.name:
            data["group"]["name"] = ds.group.name
    if ds.cochain is not None:
        data["cochain"] = {
            "degree": ds.cochain.degree,
            "values": encode_values(ds.cochain.flat()),
        }
    return data


def emit_dataset(ds: Dataset) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(dataset_to_dict(ds), sort_keys=True, indent=2) + "\n"
