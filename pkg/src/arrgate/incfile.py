"""Incidence file format: parsing, validation, serialization.

An incidence file is a JSON document with integer key ``degree`` and a
``points`` list of integer lists, plus optional ``name`` and ``expect``
("pass"/"fail", used by fixture self-tests). Parse failures carry the
line/column of the offending token; semantic failures carry a JSON-path
style location. The writer emits a fixed layout so canonical structures
round-trip byte-identically.

Enumeration certificates reuse the same structure entries under a
``structures`` key next to a deterministic stats header.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .enumeration import EnumerationCertificate, SearchStats
from .errors import IncidenceFileError
from .lattice import IncidenceStructure

EXPECT_VALUES = ("pass", "fail")


def _json_or_error(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        token = text[exc.pos:exc.pos + 12].split()[0] if exc.pos < len(text) else "end of input"
        raise IncidenceFileError(f"{exc.msg} near {token!r}", line=exc.lineno,
                                 column=exc.colno) from exc


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise IncidenceFileError(f"expected an integer, got {value!r}", where=where)
    return value


def parse_incidence(text: str) -> tuple[IncidenceStructure, str | None, str | None]:
    """Parse one incidence document into (structure, name, expect)."""
    doc = _json_or_error(text)
    structure, name, expect = _incidence_from_obj(doc, where="$")
    return structure, name, expect


def _incidence_from_obj(doc: Any, where: str) -> tuple[IncidenceStructure, str | None, str | None]:
    if not isinstance(doc, dict):
        raise IncidenceFileError("top-level value must be an object", where=where)
    unknown = set(doc) - {"degree", "points", "name", "expect", "lemma_residue", "verdict"}
    if unknown:
        raise IncidenceFileError(f"unknown keys {sorted(unknown)}", where=where)
    if "degree" not in doc:
        raise IncidenceFileError("missing required key 'degree'", where=where)
    if "points" not in doc:
        raise IncidenceFileError("missing required key 'points'", where=where)
    degree = _require_int(doc["degree"], f"{where}.degree")
    raw_points = doc["points"]
    if not isinstance(raw_points, list):
        raise IncidenceFileError("'points' must be a list of integer lists",
                                 where=f"{where}.points")
    points = []
    for i, entry in enumerate(raw_points):
        if not isinstance(entry, list):
            raise IncidenceFileError("each point must be a list of line indices",
                                     where=f"{where}.points[{i}]")
        points.append([_require_int(x, f"{where}.points[{i}][{j}]")
                       for j, x in enumerate(entry)])
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise IncidenceFileError("'name' must be a string", where=f"{where}.name")
    expect = doc.get("expect")
    if expect is not None and expect not in EXPECT_VALUES:
        raise IncidenceFileError(f"'expect' must be one of {EXPECT_VALUES}",
                                 where=f"{where}.expect")
    try:
        structure = IncidenceStructure(degree, points)
    except (ValueError, TypeError) as exc:
        raise IncidenceFileError(str(exc), where=f"{where}.points") from exc
    return structure, name, expect


def _structure_obj(inc: IncidenceStructure, name: str | None = None,
                   expect: str | None = None, extra: dict[str, Any] | None = None) -> dict:
    obj: dict[str, Any] = {}
    if name is not None:
        obj["name"] = name
    obj["degree"] = inc.degree
    obj["points"] = [list(p) for p in inc.points]
    if expect is not None:
        obj["expect"] = expect
    if extra:
        obj.update(extra)
    return obj


def dump_incidence(inc: IncidenceStructure, name: str | None = None,
                   expect: str | None = None) -> str:
    """Serialize one structure; fixed key order and layout, so writing a
    parsed canonical file reproduces it byte for byte."""
    return json.dumps(_structure_obj(inc, name, expect), indent=2) + "\n"


def content_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def dump_certificate(cert: EnumerationCertificate, verify: dict[int, dict[str, Any]] | None = None) -> str:
    """Serialize a certificate with its stats header.

    Wall time deliberately stays out of the document: certificates are
    primary outputs and must be byte-identical across runs and worker
    counts. ``verify`` maps structure index to extra keys (lemma residue
    and verdict) appended per entry.
    """
    entries = []
    for i, inc in enumerate(cert.structures):
        extra = verify.get(i) if verify else None
        entries.append(_structure_obj(inc, name=f"d{cert.degree}_class_{i}", extra=extra))
    doc = {
        "degree": cert.degree,
        "reason": cert.reason,
        "stats": {
            "nodes": cert.stats.nodes,
            "complete_candidates": cert.stats.complete_candidates,
            "classes": len(cert.structures),
        },
        "structures": entries,
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_certificate(text: str) -> EnumerationCertificate:
    """Read a certificate document back; wall time is reported as zero
    since it is not serialized."""
    doc = _json_or_error(text)
    if not isinstance(doc, dict):
        raise IncidenceFileError("certificate must be an object", where="$")
    for key in ("degree", "stats", "structures"):
        if key not in doc:
            raise IncidenceFileError(f"missing required key {key!r}", where="$")
    degree = _require_int(doc["degree"], "$.degree")
    stats_obj = doc["stats"]
    if not isinstance(stats_obj, dict):
        raise IncidenceFileError("'stats' must be an object", where="$.stats")
    stats = SearchStats(
        nodes=_require_int(stats_obj.get("nodes", 0), "$.stats.nodes"),
        complete_candidates=_require_int(stats_obj.get("complete_candidates", 0),
                                         "$.stats.complete_candidates"),
        wall_time=0.0,
    )
    structures = []
    for i, entry in enumerate(doc["structures"]):
        inc, _, _ = _incidence_from_obj(entry, where=f"$.structures[{i}]")
        if inc.degree != degree:
            raise IncidenceFileError(f"structure degree {inc.degree} != certificate degree {degree}",
                                     where=f"$.structures[{i}].degree")
        structures.append(inc)
    reason = doc.get("reason")
    if reason is not None and not isinstance(reason, str):
        raise IncidenceFileError("'reason' must be a string or null", where="$.reason")
    return EnumerationCertificate(degree, tuple(structures), stats, reason=reason)
