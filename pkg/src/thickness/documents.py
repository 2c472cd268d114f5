"""JSON set descriptions: parsing and serialization.

Every rational is written as a string ``"p/q"`` (or an integer) and parsed
exactly. Supported kinds::

    {"kind": "middle_cantor", "epsilon": "1/3"}
    {"kind": "cutout", "hull": ["0", "4"], "gaps": [["1", "3"]]}
    {"kind": "ifs", "hull": ["0", "1"],
     "maps": [{"ratio": "1/3", "offset": "0"}, {"ratio": "1/3", "offset": "2/3"}]}
    {"kind": "corner_cantor", "d": 2, "n": 10, "ell": "7/50"}
    {"kind": "cube_tree", "root": {"center": ["0"], "radius": "1"}, "children": [...]}
    {"kind": "fy_cutout", "hull": [["0", "1"], ["0", "1"]], "gaps": [[["1/3", "2/3"], ["1/3", "2/3"]]]}

``cube_tree`` children have the same shape as the document minus ``kind``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core1d import CutOutSet1D, ExplicitCutout, HomotheticIFS, MiddleCantor
from .errors import ParseError, ThicknessError
from .exact import Interval, Q, fmt
from .setsrd import CornerCantor, CubeRd, CubeSystem, ExplicitTree, FYCutOutSpec

ONE_DIM = ("middle_cantor", "cutout", "ifs")


@dataclass
class SetDocument:
    kind: str
    value: object
    source: str | None = None

    @property
    def dimension(self) -> int:
        if self.kind in ONE_DIM:
            return 1
        if self.kind == "fy_cutout":
            return len(self.value.hull)
        return self.value.d

    def to_json(self) -> dict:
        return dump(self.value)


def _q(x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"rational must be a string or integer, got {x!r}")
    return Q(x)


def _pair(v) -> Interval:
    if not isinstance(v, list) or len(v) != 2:
        raise ParseError(f"expected [left, right], got {v!r}")
    return Interval(_q(v[0]), _q(v[1]))


def _int(v, name):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{name} must be an integer")
    return v


def _cube(d) -> CubeRd:
    return CubeRd(tuple(_q(c) for c in d["center"]), _q(d["radius"]))


def _tree(d):
    return (_cube(d["root"]), [_tree(k) for k in d.get("children", [])])


def build(doc: dict):
    """The set object described by ``doc``."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("document must be an object with a 'kind'")
    kind = doc["kind"]
    try:
        if kind == "middle_cantor":
            return MiddleCantor(_q(doc["epsilon"]))
        if kind == "cutout":
            return ExplicitCutout(_pair(doc["hull"]), [_pair(g) for g in doc.get("gaps", [])])
        if kind == "ifs":
            return HomotheticIFS(_pair(doc["hull"]),
                                 [(_q(m["ratio"]), _q(m["offset"])) for m in doc["maps"]])
        if kind == "corner_cantor":
            root = _cube(doc["root"]) if "root" in doc else None
            return CornerCantor(_int(doc["d"], "d"), _int(doc["n"], "n"), _q(doc["ell"]), root)
        if kind == "cube_tree":
            return ExplicitTree(_tree(doc))
        if kind == "fy_cutout":
            return FYCutOutSpec(tuple(_pair(h) for h in doc["hull"]),
                                tuple(tuple(_pair(s) for s in g) for g in doc.get("gaps", [])))
    except ParseError:
        raise
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"bad {kind} document: {exc!r}") from exc
    except (ThicknessError, ValueError) as exc:
        raise ParseError(f"invalid {kind} document: {exc}") from exc
    raise ParseError(f"unknown kind {kind!r}")


def parse(text: str, source: str | None = None) -> SetDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not JSON: {exc}") from exc
    return SetDocument(doc.get("kind") if isinstance(doc, dict) else None, build(doc), source)


def load(path: str) -> SetDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse(text, path)


def _iv(iv: Interval):
    return [fmt(iv.left), fmt(iv.right)]


def _cube_json(c: CubeRd):
    return {"center": [fmt(x) for x in c.center], "radius": fmt(c.radius)}


def dump(obj) -> dict:
    """Inverse of :func:`build`."""
    if isinstance(obj, MiddleCantor):
        return {"kind": "middle_cantor", "epsilon": fmt(obj.epsilon)}
    if isinstance(obj, HomotheticIFS):
        return {"kind": "ifs", "hull": _iv(obj.hull),
                "maps": [{"ratio": fmt(r), "offset": fmt(b)} for r, b in obj.maps]}
    if isinstance(obj, ExplicitCutout):
        gaps = sorted(g.interval for g in obj.enumerate_gaps(len(obj._canon), strict=False)) \
            if obj._canon else []
        return {"kind": "cutout", "hull": _iv(obj.hull), "gaps": [_iv(g) for g in gaps]}
    if isinstance(obj, CornerCantor):
        out = {"kind": "corner_cantor", "d": obj.d, "n": obj.n, "ell": fmt(obj.ell)}
        if obj.root != CubeRd((0,) * obj.d, 1):
            out["root"] = _cube_json(obj.root)
        return out
    if isinstance(obj, ExplicitTree):
        def node(t):
            return {"root": _cube_json(t[0]), "children": [node(k) for k in t[1]]}
        return {"kind": "cube_tree", **node(obj.to_nested())}
    if isinstance(obj, FYCutOutSpec):
        return {"kind": "fy_cutout", "hull": [_iv(h) for h in obj.hull],
                "gaps": [[_iv(s) for s in g.sides] for g in obj.gaps]}
    raise ParseError(f"cannot serialize {obj!r}")


def dumps(obj) -> str:
    return json.dumps(dump(obj), sort_keys=True)


def is_one_dim(obj) -> bool:
    return isinstance(obj, CutOutSet1D)


def is_cube_system(obj) -> bool:
    return isinstance(obj, CubeSystem)
