"""JSON documents for every structure the library handles.

A document is ``{"kind": ..., "payload": ..., "names": [...], "claims": [...]}``
where ``names`` (display labels) and ``claims`` (properties the document
asserts, e.g. ``"rack"``) are optional.  Emission is canonical: sorted keys and
fixed separators, so equal documents serialise to equal bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import jsonschema

from .averaging import AveragingPair, GroupEndoMap
from .digroup import GDigroup
from .diskew import DiSkewBrace, verify_diskew
from .hemi import HemiPair
from .selfdist import Shelf, make_shelf
from .solution import SolutionTable, Twist
from .tables import AxiomError, BinOpTable, Failure, GroupTable, make_group

KINDS = ("group", "shelf", "digroup", "diskew", "solution", "hemipair", "avgmap")

CLAIMS = {
    "group": ("abelian",),
    "shelf": ("rack", "quandle"),
    "digroup": ("abelian",),
    "diskew": ("skew-brace", "di-brace"),
    "solution": ("bijective", "left-nondegenerate", "right-nondegenerate"),
    "hemipair": (),
    "avgmap": ("left-averaging", "right-averaging", "compatible"),
}


class MalformedDocument(ValueError):
    """Input that is not a well-formed structure document."""


_INT = {"type": "integer", "minimum": 0}
_ROW = {"type": "array", "items": _INT}
_TABLE = {"type": "array", "items": _ROW, "minItems": 1}
_N = {"type": "integer", "minimum": 1}


def _obj(props: dict, required: Sequence[str]) -> dict:
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


_GROUP = _obj({"n": _N, "table": _TABLE, "identity": _INT}, ["n", "table", "identity"])
_SHELF = _obj({"n": _N, "tri": _TABLE}, ["n", "tri"])
_DIGROUP = _obj({"n": _N, "vdash": _TABLE, "dashv": _TABLE}, ["n", "vdash", "dashv"])

SCHEMAS: dict[str, dict] = {
    "group": _GROUP,
    "shelf": _SHELF,
    "digroup": _DIGROUP,
    "diskew": _obj({"digroup": _DIGROUP, "circ": _TABLE, "zero": _INT}, ["digroup", "circ", "zero"]),
    "solution": _obj({"n": _N, "lambda": _TABLE, "rho": _TABLE}, ["n", "lambda", "rho"]),
    "hemipair": _obj(
        {"shelf": _SHELF, "twist": _TABLE, "E": _N, "psi": _TABLE, "sigma": _TABLE},
        ["shelf", "twist", "E", "psi", "sigma"],
    ),
    "avgmap": _obj(
        {"group": _GROUP, "map": _ROW, "g": _ROW, "h": _ROW, "side": {"enum": ["left", "right"]}},
        ["group", "map"],
    ),
}

ENVELOPE = _obj(
    {
        "kind": {"enum": list(KINDS)},
        "payload": {"type": "object"},
        "names": {"type": "array", "items": {"type": "string"}},
        "claims": {"type": "array", "items": {"type": "string"}},
    },
    ["kind", "payload"],
)


@dataclass(frozen=True)
class StructureDocument:
    kind: str
    payload: dict = field(hash=False)
    names: Optional[tuple[str, ...]] = None
    claims: tuple[str, ...] = ()

    def as_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "payload": self.payload}
        if self.names is not None:
            out["names"] = list(self.names)
        if self.claims:
            out["claims"] = list(self.claims)
        return out


# -- parse / emit --------------------------------------------------------------

def _square(table: list, n: int, where: str) -> None:
    if len(table) != n or any(len(row) != n for row in table):
        raise MalformedDocument(f"{where}: expected a {n}x{n} table")
    if any(x >= n for row in table for x in row):
        raise MalformedDocument(f"{where}: entry out of range 0..{n - 1}")


def _maps(maps: list, count: int, size: int, where: str) -> None:
    if len(maps) != count or any(len(m) != size for m in maps):
        raise MalformedDocument(f"{where}: expected {count} maps on {size} points")
    if any(x >= size for m in maps for x in m):
        raise MalformedDocument(f"{where}: entry out of range 0..{size - 1}")


def _check_group(p: dict, where: str) -> int:
    _square(p["table"], p["n"], f"{where}.table")
    if p["identity"] >= p["n"]:
        raise MalformedDocument(f"{where}.identity out of range")
    return p["n"]


def _check_shapes(kind: str, p: dict) -> int:
    """Dimension checks the schema cannot express; returns the carrier size."""
    if kind == "group":
        return _check_group(p, "payload")
    if kind == "shelf":
        _square(p["tri"], p["n"], "payload.tri")
        return p["n"]
    if kind == "digroup":
        for key in ("vdash", "dashv"):
            _square(p[key], p["n"], f"payload.{key}")
        return p["n"]
    if kind == "diskew":
        n = _check_shapes("digroup", p["digroup"])
        _square(p["circ"], n, "payload.circ")
        if p["zero"] >= n:
            raise MalformedDocument("payload.zero out of range")
        return n
    if kind == "solution":
        for key in ("lambda", "rho"):
            _square(p[key], p["n"], f"payload.{key}")
        return p["n"]
    if kind == "hemipair":
        n = _check_shapes("shelf", p["shelf"])
        _square(p["twist"], n, "payload.twist")
        _maps(p["psi"], n, p["E"], "payload.psi")
        _maps(p["sigma"], n, p["E"], "payload.sigma")
        return n * p["E"]
    if kind == "avgmap":
        n = _check_group(p["group"], "payload.group")
        for key in ("map", "g", "h"):
            if key in p:
                _maps([p[key]], 1, n, f"payload.{key}")
        return n
    raise MalformedDocument(f"unknown kind {kind!r}")


def validate(data: Any) -> StructureDocument:
    """Schema plus dimension validation of already-decoded JSON."""
    try:
        jsonschema.validate(data, ENVELOPE)
        jsonschema.validate(data["payload"], SCHEMAS[data["kind"]])
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise MalformedDocument(f"{path or '<root>'}: {exc.message}") from None
    kind, payload = data["kind"], data["payload"]
    size = _check_shapes(kind, payload)
    names = data.get("names")
    if names is not None and len(names) != size:
        raise MalformedDocument(f"names: expected {size} labels, got {len(names)}")
    claims = tuple(data.get("claims", ()))
    unknown = set(claims) - set(CLAIMS[kind])
    if unknown:
        raise MalformedDocument(f"claims not applicable to {kind}: {sorted(unknown)}")
    return StructureDocument(kind, payload, tuple(names) if names is not None else None, claims)


def parse(text: str) -> StructureDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None
    return validate(data)


def emit(doc: StructureDocument) -> str:
    return json.dumps(doc.as_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load(path: str) -> StructureDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from None


# -- documents <-> library objects ---------------------------------------------

@dataclass(frozen=True)
class AveragingData:
    """Averaging maps on one group: ``f`` alone, a pair ``(f, g)``, or a triple with ``h``."""

    group: GroupTable
    f: GroupEndoMap
    g: Optional[GroupEndoMap] = None
    h: Optional[GroupEndoMap] = None
    side: str = "left"


def _table(rows: list) -> BinOpTable:
    return BinOpTable(tuple(tuple(r) for r in rows))


def _rows(op: BinOpTable) -> list[list[int]]:
    return [list(r) for r in op.table]


def _group_from(p: dict, names: Optional[Sequence[str]] = None) -> GroupTable:
    G = make_group(_table(p["table"]), names)
    if G.identity != p["identity"]:
        raise AxiomError(Failure("identity", (p["identity"],), f"stated identity is not the identity {G.identity}"))
    return G


def _group_payload(G: GroupTable) -> dict:
    return {"n": G.n, "table": _rows(G.op), "identity": G.identity}


def _digroup_payload(D: GDigroup) -> dict:
    return {"n": D.n, "vdash": _rows(D.vdash), "dashv": _rows(D.dashv)}


def _shelf_payload(S: Shelf) -> dict:
    return {"n": S.n, "tri": _rows(S.tri)}


def decode(doc: StructureDocument):
    """Library object for a document; verifying constructors raise ``AxiomError``."""
    p, kind = doc.payload, doc.kind
    if kind == "group":
        return _group_from(p, doc.names)
    if kind == "shelf":
        return make_shelf(_table(p["tri"]))
    if kind == "digroup":
        return GDigroup.verify(_table(p["vdash"]), _table(p["dashv"]))
    if kind == "diskew":
        d = p["digroup"]
        D = GDigroup.verify(_table(d["vdash"]), _table(d["dashv"]))
        return verify_diskew(D, _table(p["circ"]), p["zero"])
    if kind == "solution":
        return SolutionTable(p["lambda"], p["rho"])
    if kind == "hemipair":
        S = make_shelf(_table(p["shelf"]["tri"]))
        return HemiPair(Twist(S, tuple(tuple(r) for r in p["twist"])), p["psi"], p["sigma"])
    if kind == "avgmap":
        G = _group_from(p["group"])
        opt = lambda key: GroupEndoMap(G, p[key]) if key in p else None
        return AveragingData(G, GroupEndoMap(G, p["map"]), opt("g"), opt("h"), p.get("side", "left"))
    raise MalformedDocument(f"unknown kind {kind!r}")


def encode(obj, names: Optional[Sequence[str]] = None, claims: Sequence[str] = ()) -> StructureDocument:
    if isinstance(obj, GroupTable):
        kind, payload = "group", _group_payload(obj)
        names = names if names is not None else obj.names
    elif isinstance(obj, Shelf):
        kind, payload = "shelf", _shelf_payload(obj)
    elif isinstance(obj, GDigroup):
        kind, payload = "digroup", _digroup_payload(obj)
    elif isinstance(obj, DiSkewBrace):
        kind = "diskew"
        payload = {"digroup": _digroup_payload(obj.digroup), "circ": _rows(obj.circ), "zero": obj.zero}
    elif isinstance(obj, SolutionTable):
        kind = "solution"
        payload = {"n": obj.n, "lambda": [list(r) for r in obj.lam], "rho": [list(r) for r in obj.rho]}
    elif isinstance(obj, HemiPair):
        kind, payload = "hemipair", obj.to_json()
    elif isinstance(obj, (AveragingData, AveragingPair, GroupEndoMap)):
        if isinstance(obj, GroupEndoMap):
            obj = AveragingData(obj.group, obj)
        elif isinstance(obj, AveragingPair):
            obj = AveragingData(obj.group, obj.f, obj.g)
        kind = "avgmap"
        payload = {"group": _group_payload(obj.group), "map": list(obj.f.images)}
        if obj.g is not None:
            payload["g"] = list(obj.g.images)
        if obj.h is not None:
            payload["h"] = list(obj.h.images)
            payload["side"] = obj.side
        names = names if names is not None else obj.group.names
    else:
        raise TypeError(f"cannot encode {type(obj).__name__}")
    return validate(StructureDocument(kind, payload, tuple(names) if names is not None else None, tuple(claims)).as_json())
