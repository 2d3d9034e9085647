"""Structure files and Graphviz export.

A structure file is JSON::

    {
      "spaces": [{"id": "S_a", "states": ["a", "¬a"]}, ...],
      "order": [["S_c", "S_a"], ...],          # [more expressive, less expressive]
      "projections": [{"from": "S_c", "to": "S_a", "map": {"c1": "a", ...}}, ...]
    }

``S∅`` may be omitted and is adjoined automatically; maps for composite pairs
may be omitted and are derived by composition.  A ``map`` may also be given as
a list of ``[state, image]`` pairs.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .events import EventLattice
from .poset import FinitePreorder, hasse_reduction
from .reduction import ReducedPoset
from .structure import EMPTY_SPACE, Structure, build_structure, make_structure


class StructureFormatError(ValueError):
    pass


def _require(cond, msg):
    if not cond:
        raise StructureFormatError(msg)


def parse_structure(text: str, validate: bool = True) -> Structure:
    """Parse a structure file; with ``validate=False`` the raw candidate is returned."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    _require(isinstance(doc, dict), "top level must be an object")
    unknown = set(doc) - {"spaces", "order", "projections"}
    _require(not unknown, f"unknown keys: {sorted(unknown)}")
    _require(isinstance(doc.get("spaces"), list), "'spaces' must be a list")

    spaces: dict[str, list[str]] = {}
    for i, entry in enumerate(doc["spaces"]):
        _require(isinstance(entry, dict) and isinstance(entry.get("id"), str), f"spaces[{i}] needs a string id")
        states = entry.get("states", [])
        _require(isinstance(states, list) and all(isinstance(s, str) for s in states),
                 f"spaces[{i}].states must be a list of strings")
        _require(entry["id"] not in spaces, f"duplicate space id {entry['id']!r}")
        _require(len(set(states)) == len(states), f"duplicate state in space {entry['id']!r}")
        spaces[entry["id"]] = states

    order = []
    for i, pair in enumerate(doc.get("order", [])):
        _require(isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair),
                 f"order[{i}] must be a [more, less] pair of ids")
        for sid in pair:
            _require(sid in spaces or sid == EMPTY_SPACE, f"order[{i}] mentions unknown space {sid!r}")
        order.append(tuple(pair))

    maps: dict[tuple[str, str], dict[str, str]] = {}
    for i, proj in enumerate(doc.get("projections", [])):
        _require(isinstance(proj, dict) and {"from", "to", "map"} <= set(proj),
                 f"projections[{i}] needs 'from', 'to' and 'map'")
        raw = proj["map"]
        if isinstance(raw, list):
            _require(all(isinstance(p, list) and len(p) == 2 for p in raw),
                     f"projections[{i}].map pairs must have two entries")
            raw = dict(raw)
        _require(isinstance(raw, dict), f"projections[{i}].map must be an object or pair list")
        key = (proj["from"], proj["to"])
        _require(key not in maps, f"duplicate projection {key}")
        maps[key] = {str(k): str(v) for k, v in raw.items()}
    if not validate:
        return build_structure(spaces, order, maps)
    return make_structure(spaces, order, maps)


def load_structure(path, validate: bool = True) -> Structure:
    return parse_structure(Path(path).read_text(encoding="utf-8"), validate)


def running_example() -> Structure:
    """Two binary spaces under a three-state top space, shipped as package data."""
    return parse_structure(resources.files("infolattice").joinpath("data/example_fig1.json").read_text("utf-8"))


def structure_document(structure: Structure) -> dict:
    covers = sorted(
        (hi, lo) for lo, hi in hasse_reduction(structure.order) if lo != EMPTY_SPACE
    )
    return {
        "spaces": [
            {"id": sid, "states": sorted(structure.states(sid))}
            for sid in sorted(structure.lattice.spaces)
            if sid != EMPTY_SPACE
        ],
        "order": [[hi, lo] for hi, lo in covers],
        "projections": [
            {"from": hi, "to": lo, "map": dict(sorted(structure.projections.maps[(hi, lo)].items()))}
            for hi, lo in covers
        ],
    }


def serialize_structure(structure: Structure) -> str:
    """Byte-stable JSON: covering pairs and their maps only."""
    return json.dumps(structure_document(structure), indent=2, ensure_ascii=False) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot(name: str, labels: dict, order: FinitePreorder) -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for node in sorted(labels, key=lambda n: labels[n]):
        lines.append(f"  {_quote(labels[node])};")
    edges = sorted((labels[a], labels[b]) for a, b in hasse_reduction(order))
    for a, b in edges:
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    for a, b in sorted((labels[a], labels[b]) for a, b in order.equivalent_pairs()):
        lines.append(f"  {_quote(a)} -> {_quote(b)} [dir=none, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj, name: str | None = None) -> str:
    """Hasse diagram as DOT, drawn bottom to top.

    ``obj`` is a :class:`Structure` (its space lattice), an
    :class:`EventLattice` or a :class:`ReducedPoset`.  Equivalent elements of a
    preorder are linked by a dashed undirected edge.
    """
    if isinstance(obj, Structure):
        order = obj.order
        return _dot(name or "spaces", {s: s for s in order.elements}, order)
    if isinstance(obj, EventLattice):
        return _dot(name or "events", {e: str(e) for e in obj.events}, obj.order)
    if isinstance(obj, ReducedPoset):
        return _dot(name or "reduced", {e: str(e) for e in obj.events}, obj.relation)
    raise TypeError(f"cannot export {type(obj).__name__}")
