"""JSON shapes shared by the CLI and catalog rows.  Integers only, no floats."""

from __future__ import annotations

from typing import Optional

from .certificates import EliminationCertificate
from .criteria import (
    Cycle,
    Disconnected,
    GenusNonzero,
    LoVerdict,
    MultiIncidence,
    NonRationalComponent,
    NotTree,
    SloVerdict,
    SubdivisorGenusPositive,
    TreeVerdict,
)
from .lattice import CurveConfiguration, Divisor


def divisor_json(d: Divisor) -> dict:
    return d.nonzero_items()


def tree_failure_json(tree: TreeVerdict) -> dict:
    reason = tree.failure_reason
    if isinstance(reason, NonRationalComponent):
        return {"reason": "non_rational_component", "component": reason.component, "genus": reason.genus}
    if isinstance(reason, MultiIncidence):
        return {"reason": "multi_incidence", "pair": list(reason.pair), "count": reason.count}
    if isinstance(reason, Cycle):
        return {"reason": "cycle", "components": list(reason.components)}
    if isinstance(reason, Disconnected):
        return {"reason": "disconnected", "parts": [list(p) for p in reason.parts]}
    raise TypeError(f"not a tree failure: {reason!r}")


def witness_json(slo: SloVerdict) -> Optional[dict]:
    """Witness of the first failed condition, LO before SLO; ``None`` when SLO holds."""
    w = slo.lo.witness
    if isinstance(w, NotTree):
        return {"kind": "not_tree", **tree_failure_json(w.tree)}
    if isinstance(w, GenusNonzero):
        return {"kind": "genus_nonzero", "p_a": w.p_a}
    if isinstance(w, SubdivisorGenusPositive):
        return {"kind": "subdivisor_genus_positive", "subdivisor": divisor_json(w.subdivisor), "p_a": w.p_a}
    if slo.witness is not None:
        w = slo.witness
        return {"kind": "slo_inequality", "subdivisor": divisor_json(w.subdivisor), "p_a": w.p_a, "dd": w.dd}
    return None


def lo_witness_json(lo: LoVerdict) -> Optional[dict]:
    return witness_json(SloVerdict(False, lo)) if not lo.is_lo else None


def certificate_json(cert: Optional[EliminationCertificate]) -> Optional[list]:
    return None if cert is None else cert.to_json()


def input_document(config: CurveConfiguration, d: Divisor) -> dict:
    """Render a configuration and divisor in the CLI input schema."""
    comps = []
    for cid, r, g, k in zip(config.ids, config.self_intersections, config.genera, d.multiplicities):
        entry = {"id": cid, "self_intersection": r}
        if g:
            entry["genus"] = g
        entry["multiplicity"] = k
        comps.append(entry)
    return {"components": comps, "edges": [list(p) for p in config.incidence_pairs()]}


def record_json(record) -> dict:
    """One catalog row; the first two keys are a valid input document."""
    doc = input_document(record.config, record.divisor)
    row = {
        "components": doc["components"],
        "edges": doc["edges"],
        "lo": record.lo.is_lo,
        "slo": record.slo.is_slo,
    }
    w = witness_json(record.slo)
    if w is not None:
        row["witness"] = w
    row["hodge_admissible"] = record.hodge
    row["structure_violations"] = list(record.structure.violations)
    return row
