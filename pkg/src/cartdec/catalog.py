"""Bundled group data, re-verified every time it is loaded."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .group import PermGroup, intersect
from .perm import Perm


class CatalogError(ValueError):
    pass


@lru_cache(maxsize=1)
def _raw() -> dict:
    text = resources.files("cartdec").joinpath("data/catalog.json").read_text()
    data = json.loads(text)
    if data.get("format") != "cartdec-catalog/1":
        raise CatalogError("unknown catalog format")
    return data["entries"]


def names() -> list[str]:
    return sorted(_raw())


def entry(name: str) -> dict:
    try:
        return _raw()[name]
    except KeyError:
        raise CatalogError(f"no catalog entry {name!r}; available: {', '.join(names())}") from None


def _group(gens: list[list[int]], degree: int) -> PermGroup:
    return PermGroup([Perm(g) for g in gens], degree=degree)


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    """Groups of an entry keyed by role, after checking the recorded facts."""
    e = entry(name)
    n = e["degree"]
    if e["kind"] == "group":
        G = _group(e["generators"], n)
        if G.order() != e["order"]:
            raise CatalogError(f"{name}: order {G.order()} != recorded {e['order']}")
        return {"G": G}
    out = {k: _group(v, n) for k, v in e["groups"].items()}
    orders = e.get("orders", {})
    for k, H in out.items():
        if k in orders and H.order() != orders[k]:
            raise CatalogError(f"{name}.{k}: order {H.order()} != recorded {orders[k]}")
        if k != "T" and "T" in out and not H.is_subgroup_of(out["T"]):
            raise CatalogError(f"{name}.{k} is not inside T")
    if "A&B" in orders and intersect(out["A"], out["B"]).order() != orders["A&B"]:
        raise CatalogError(f"{name}: |A∩B| differs from the recorded value")
    if "theta" in e:
        theta = Perm(e["theta"])
        T = out["T"]
        if not all(g.conj(theta) in T for g in T.gens):
            raise CatalogError(f"{name}: theta does not normalize T")
        if not (out["A"].conjugate(theta).same_as(out["B"]) and out["B"].conjugate(theta).same_as(out["A"])):
            raise CatalogError(f"{name}: theta does not swap A and B")
        out["theta"] = theta
    return out


def resolve(ref: str):
    """``catalog:NAME`` or ``catalog:NAME.ROLE`` to a group or permutation."""
    if not ref.startswith("catalog:"):
        raise CatalogError(f"not a catalog reference: {ref!r}")
    name, _, role = ref[len("catalog:") :].partition(".")
    data = load(name)
    if not role:
        if "G" in data:
            return data["G"]
        return data["T"]
    if role not in data:
        raise CatalogError(f"{name} has no member {role!r}")
    return data[role]


def tags(name: str) -> dict:
    return dict(entry(name).get("tags", {}))
