"""Canonical JSON encoding for all structures plus the named workspace.

Serialization is deterministic (sorted keys, fixed separators, mul triples
in lexicographic order), so re-serializing a round-tripped structure is
byte-identical. Structures revalidate when a workspace is loaded.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import InvalidInput, MalformedStructure, UnknownName
from .groups import FiniteGroup, validate_group
from .groupoid import FiniteGroupoid, validate_groupoid
from .group_groupoid import GroupGroupoid, validate_def24
from .morphisms import GroupoidMorphism, validate_groupoid_morphism

DEFAULT_WORKSPACE = "groupoids.json"
WORKSPACE_ENV = "GROUPOID_WS"


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# --- groups -----------------------------------------------------------------

def group_to_jsonable(g: FiniteGroup) -> dict:
    return {
        "order": g.order,
        "table": g.table.tolist(),
        "identity": g.identity,
        "inverse": g.inverse.tolist(),
    }


def group_from_jsonable(d: dict) -> FiniteGroup:
    try:
        g = FiniteGroup.from_table(d["table"])
    except KeyError as exc:
        raise InvalidInput(f"group JSON is missing field {exc}") from None
    if "order" in d and d["order"] != g.order:
        raise InvalidInput(f"declared order {d['order']} != table size {g.order}")
    if "identity" in d and d["identity"] != g.identity:
        raise InvalidInput(
            f"declared identity {d['identity']} but the table's identity "
            f"is {g.identity}")
    if "inverse" in d and not np.array_equal(
            np.asarray(d["inverse"], dtype=np.int64), g.inverse):
        raise InvalidInput("declared inverse table contradicts the Cayley table")
    return g


# --- groupoids --------------------------------------------------------------

def groupoid_to_jsonable(g: FiniteGroupoid) -> dict:
    return {
        "arrows": g.arrows,
        "base": g.base,
        "alpha": g.alpha.tolist(),
        "beta": g.beta.tolist(),
        "eps": g.eps.tolist(),
        "inv": g.inv.tolist(),
        "mul": g.canonical_mul_triples().tolist(),
    }


def groupoid_from_jsonable(d: dict) -> FiniteGroupoid:
    try:
        mul = np.asarray(d["mul"], dtype=np.int64)
        if mul.size == 0:
            mul = mul.reshape(0, 3)
        if mul.ndim != 2 or mul.shape[1] != 3:
            raise InvalidInput("mul must be a list of [x, y, xy] triples")
        return FiniteGroupoid(
            arrows=d["arrows"], base=d["base"], alpha=d["alpha"],
            beta=d["beta"], eps=d["eps"], inv=d["inv"],
            mul_x=mul[:, 0], mul_y=mul[:, 1], mul_z=mul[:, 2])
    except KeyError as exc:
        raise InvalidInput(f"groupoid JSON is missing field {exc}") from None


# --- group-groupoids and morphisms ------------------------------------------

def gg_to_jsonable(c: GroupGroupoid) -> dict:
    d = groupoid_to_jsonable(c.groupoid)
    d["arrow_group"] = group_to_jsonable(c.arrow_group)
    d["base_group"] = group_to_jsonable(c.base_group)
    return d


def gg_from_jsonable(d: dict) -> GroupGroupoid:
    try:
        arrow_group = group_from_jsonable(d["arrow_group"])
        base_group = group_from_jsonable(d["base_group"])
    except KeyError as exc:
        raise InvalidInput(f"group-groupoid JSON is missing field {exc}") from None
    return GroupGroupoid(groupoid=groupoid_from_jsonable(d),
                         arrow_group=arrow_group, base_group=base_group)


def morphism_to_jsonable(m: GroupoidMorphism, source: str, target: str) -> dict:
    return {"f": m.f.tolist(), "f0": m.f0.tolist(),
            "source": source, "target": target}


def to_jsonable(obj) -> dict:
    """Tagged encoding used by the workspace."""
    if isinstance(obj, GroupGroupoid):
        return {"kind": "group-groupoid", **gg_to_jsonable(obj)}
    if isinstance(obj, FiniteGroupoid):
        return {"kind": "groupoid", **groupoid_to_jsonable(obj)}
    if isinstance(obj, FiniteGroup):
        return {"kind": "group", **group_to_jsonable(obj)}
    raise InvalidInput(f"cannot serialize {type(obj).__name__}")


def from_jsonable(d: dict):
    kind = d.get("kind")
    if kind == "group-groupoid":
        return gg_from_jsonable(d)
    if kind == "groupoid":
        return groupoid_from_jsonable(d)
    if kind == "group":
        return group_from_jsonable(d)
    raise InvalidInput(f"unknown structure kind {kind!r}")


def _revalidate(name: str, obj) -> None:
    if isinstance(obj, FiniteGroup):
        rep = validate_group(obj)
    elif isinstance(obj, FiniteGroupoid):
        rep = validate_groupoid(obj)
    else:
        rep = validate_groupoid(obj.groupoid)
        if rep.ok:
            rep = validate_def24(obj)
    if not rep.ok:
        raise MalformedStructure(
            f"stored structure {name!r} fails validation:\n" + rep.summary())


# --- workspace ---------------------------------------------------------------

class Workspace:
    """A named collection of structures in one JSON file."""

    def __init__(self, path: str | None = None, revalidate: bool = True):
        self.path = path or os.environ.get(WORKSPACE_ENV) or DEFAULT_WORKSPACE
        self.structures: dict[str, object] = {}
        self.morphisms: dict[str, dict] = {}
        if os.path.exists(self.path):
            self._load(revalidate)

    def _load(self, revalidate: bool) -> None:
        with open(self.path, encoding="utf-8") as fh:
            doc = json.load(fh)
        for name, entry in doc.get("structures", {}).items():
            if entry.get("kind") == "morphism":
                self.morphisms[name] = entry
                continue
            obj = from_jsonable(entry)
            if revalidate:
                _revalidate(name, obj)
            self.structures[name] = obj
        for name, entry in self.morphisms.items():
            if revalidate:
                m = self.resolve_morphism(name)
                rep = validate_groupoid_morphism(m)
                if not rep.ok:
                    raise MalformedStructure(
                        f"stored morphism {name!r} fails validation:\n"
                        + rep.summary())

    def save(self) -> None:
        doc = {"structures": {}}
        for name in sorted(self.structures):
            doc["structures"][name] = to_jsonable(self.structures[name])
        for name in sorted(self.morphisms):
            doc["structures"][name] = self.morphisms[name]
        with open(self.path, "w", encoding="utf-8") as fh:
            fh.write(dumps_canonical(doc))
            fh.write("\n")

    def put(self, name: str, obj) -> None:
        self.structures[name] = obj

    def put_morphism(self, name: str, m: GroupoidMorphism,
                     source: str, target: str) -> None:
        self.morphisms[name] = {"kind": "morphism",
                                **morphism_to_jsonable(m, source, target)}

    def get(self, name: str):
        if name not in self.structures:
            raise UnknownName(f"no structure named {name!r} in {self.path}")
        return self.structures[name]

    def resolve_morphism(self, name: str) -> GroupoidMorphism:
        if name not in self.morphisms:
            raise UnknownName(f"no morphism named {name!r} in {self.path}")
        entry = self.morphisms[name]

        def groupoid_of(ref):
            obj = self.get(ref)
            return obj.groupoid if isinstance(obj, GroupGroupoid) else obj

        return GroupoidMorphism(source=groupoid_of(entry["source"]),
                                target=groupoid_of(entry["target"]),
                                f=entry["f"], f0=entry["f0"], check=False)

    def names(self) -> list[str]:
        return sorted(set(self.structures) | set(self.morphisms))
