"""Versioned JSON shapes for every result type.

Vertex ids are 1-indexed in JSON, matching the text graph format. Every
document carries ``"schema": "1"`` at the top level. Certificates appear as
objects with a ``"cycle"``, ``"path"`` or ``"matching"`` key plus a
``"color"``, which is what ``check`` walks for when re-verifying a file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .finders import FinderOutcome, HallResult, Matching
from .graph import Color, CycleCertificate, GraphError, PathCertificate
from .spectrum import ArrowsResult, SpectrumReport, TheoremVerdict
from .stability import PipelineResult, SparseResult, StabilityCase, V0Result
from .witness import ConnectedMatchingWitness, PartitionWitness, SparseSetWitness, WitnessReport

SCHEMA = "1"


def dumps(doc: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True) + "\n"


def one_based(vs) -> list[int]:
    return [v + 1 for v in vs]


def _zero(vs) -> tuple[int, ...]:
    return tuple(int(v) - 1 for v in vs)


def color_json(c: Color | None) -> str | None:
    return None if c is None else c.label


def cycle_json(cert: CycleCertificate) -> dict:
    return {"len": cert.length, "color": color_json(cert.color), "cycle": one_based(cert.vertices)}


def path_json(cert: PathCertificate) -> dict:
    return {"len": cert.length, "color": color_json(cert.color), "path": one_based(cert.vertices)}


def matching_json(m: Matching) -> dict:
    return {"size": m.size, "color": color_json(m.color), "matching": [one_based(e) for e in m.edges]}


def certificate_json(cert) -> dict:
    if isinstance(cert, CycleCertificate):
        return cycle_json(cert)
    if isinstance(cert, PathCertificate):
        return path_json(cert)
    if isinstance(cert, Matching):
        return matching_json(cert)
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def _cert_list(certs: dict[int, Any]) -> list[dict]:
    return [certificate_json(certs[k]) for k in sorted(certs)]


def verdict_json(v: TheoremVerdict) -> dict:
    return {"n": v.n, "t": v.t, "r": v.r, "holds": v.holds, "branch": str(v.branch), "missing": list(v.missing)}


def spectrum_json(rep: SpectrumReport) -> dict:
    circ = rep.circumference
    return {
        "n": rep.n,
        "exact": rep.exact,
        "red": sorted(rep.red),
        "blue": sorted(rep.blue),
        "certificates": {"red": _cert_list(rep.red), "blue": _cert_list(rep.blue)},
        "circumference": None if circ is None else cycle_json(circ),
        "verdict": None if rep.verdict is None else verdict_json(rep.verdict),
    }


def arrows_json(res: ArrowsResult) -> dict:
    doc = {"status": res.status, "length": res.length, "colorings_checked": res.colorings_checked}
    if res.counterexample is not None:
        g = res.counterexample
        doc["counterexample"] = {
            "red": [one_based(e) for e in monochrome_edges(g, Color.RED)],
            "blue": [one_based(e) for e in monochrome_edges(g, Color.BLUE)],
        }
    return doc


def monochrome_edges(g, color: Color) -> list[tuple[int, int]]:
    return [(u, v) for u, v, cs in g.edges() if color in cs]


def _precondition_json(pre) -> dict | None:
    # detail strings are diagnostics and keep the in-memory 0-based ids
    if pre is None:
        return None
    return {"holds": bool(pre), "detail": pre.detail}


def outcome_json(out: FinderOutcome) -> dict:
    return {
        "status": out.status.value,
        "certificates": _cert_list(out.certificates),
        "precondition": _precondition_json(out.precondition),
        "detail": out.detail,
    }


def hall_json(res: HallResult) -> dict:
    doc = {"saturating": res.saturating, "matching": matching_json(res.matching)}
    doc["violator"] = None if res.violator is None else one_based(res.violator)
    return doc


# -- witnesses -------------------------------------------------------------------------------


def _delta_str(d: Fraction) -> str:
    return f"{d.numerator}/{d.denominator}"


def witness_json(w) -> dict:
    if isinstance(w, PartitionWitness):
        doc = {k: one_based(getattr(w, k)) for k in ("U1", "U2", "U3", "U4", "V0", "XR", "XB")}
        doc.update(type="partition", delta=_delta_str(w.delta), processed=w.processed)
        return doc
    if isinstance(w, SparseSetWitness):
        return {"type": "sparse", "L": one_based(w.L), "sparse_color": w.sparse_color.label, "delta": _delta_str(w.delta)}
    if isinstance(w, ConnectedMatchingWitness):
        return {
            "type": "connected_matching",
            "color": w.color.label,
            "component": one_based(w.component),
            "matching": [one_based(e) for e in w.matching],
        }
    raise TypeError(f"not a witness: {type(w).__name__}")


def witness_from_json(doc: dict):
    """Inverse of :func:`witness_json`; a sidecar with a ``"witness"`` key is unwrapped."""
    if "witness" in doc and isinstance(doc["witness"], dict):
        doc = doc["witness"]
    kind = doc.get("type") or ("partition" if "U1" in doc else "sparse" if "L" in doc else None)
    try:
        if kind == "partition":
            sets = {k: _zero(doc.get(k, [])) for k in ("U1", "U2", "U3", "U4", "V0", "XR", "XB")}
            return PartitionWitness(**sets, delta=Fraction(doc.get("delta", "1/1024")), processed=bool(doc.get("processed", False)))
        if kind == "sparse":
            return SparseSetWitness(
                _zero(doc["L"]), Color.parse(doc.get("sparse_color", "R")), Fraction(doc.get("delta", "1/1024"))
            )
        if kind == "connected_matching":
            return ConnectedMatchingWitness(
                Color.parse(doc["color"]), _zero(doc["component"]), tuple(_zero(e) for e in doc["matching"])
            )
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"malformed witness: {exc}") from None
    raise GraphError("witness JSON has no recognizable type")


def report_json(rep: WitnessReport | None) -> dict | None:
    if rep is None:
        return None
    return {"ok": rep.ok, "checks": [str(c) for c in rep.checks]}


def case_json(case: StabilityCase) -> dict:
    return {
        "kind": case.kind,
        "delta": _delta_str(case.delta),
        "witness": None if case.witness is None else witness_json(case.witness),
        "report": report_json(case.report),
        "notes": list(case.notes),
    }


def v0_json(res: V0Result) -> dict:
    return {
        "witness": witness_json(res.witness),
        "cover_moved": one_based(res.cover_moved),
        "unassigned": one_based(res.unassigned),
        "cross_edges": res.cross_edges,
        "steps": [
            {"vertex": s.vertex + 1, "rule": s.rule, "destination": s.destination, "counts": s.counts, "accounted": s.accounted}
            for s in res.steps
        ],
    }


def pipeline_json(res: PipelineResult) -> dict:
    color = res.color
    return {
        "procedure": "four_part",
        "n": res.n,
        "t": res.t,
        "r": res.r,
        "target": res.target,
        "color": color.label,
        "lengths": res.lengths(color),
        "missing": res.missing,
        "certificates": {c.label.lower(): _cert_list(res.certificates[c]) for c in res.certificates},
        "routes": {c.label.lower(): {str(k): v for k, v in sorted(res.routes[c].items())} for c in res.routes},
        "infeasible": {str(k): v for k, v in res.infeasible.items()},
        "notes": res.notes,
        "witness": witness_json(res.witness),
        "v0": None if res.v0 is None else v0_json(res.v0),
    }


def sparse_json(res: SparseResult) -> dict:
    return {
        "procedure": "sparse_set",
        "n": res.n,
        "t": res.t,
        "r": res.r,
        "case": res.case,
        "color": res.color.label,
        "target": res.target,
        "lengths": sorted(res.certificates),
        "missing": res.missing,
        "extension": one_based(res.extension),
        "certificates": _cert_list(res.certificates),
        "routes": {str(k): v for k, v in sorted(res.routes.items())},
        "infeasible": {str(k): v for k, v in sorted(res.infeasible.items())},
        "notes": res.notes,
    }


# -- reading certificates back -------------------------------------------------------------------


def iter_certificates(doc: Any):
    """Yield every certificate object found anywhere in a JSON document, in document order."""
    if isinstance(doc, dict):
        if "cycle" in doc or "path" in doc or ("matching" in doc and "color" in doc and "size" in doc):
            yield doc
            return
        for k in sorted(doc):
            yield from iter_certificates(doc[k])
    elif isinstance(doc, list):
        for item in doc:
            yield from iter_certificates(item)


def certificate_from_json(doc: dict):
    color = None if doc.get("color") is None else Color.parse(doc["color"])
    if "cycle" in doc:
        return CycleCertificate(_zero(doc["cycle"]), color)
    if "path" in doc:
        return PathCertificate(_zero(doc["path"]), color)
    return Matching(tuple(_zero(e) for e in doc["matching"]), color)
