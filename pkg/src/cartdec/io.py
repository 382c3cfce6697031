"""JSON file formats for groups, decompositions and embedding instances, and report emission.

Canonical text is JSON with sorted keys, two-space indentation and a
trailing newline, so emitting a parsed canonical file reproduces it byte for
byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import catalog
from .blocks import Partition
from .cartesian import CartesianDecomposition, Layout, Setting
from .constructions import Component, EmbeddingInstance
from .group import PermGroup
from .perm import Perm

GROUP_FORMAT = "cartdec-group/1"
DECOMPOSITION_FORMAT = "cartdec-decomposition/1"
INSTANCE_FORMAT = "cartdec-instance/1"
REPORT_FORMAT = "cartdec-report/1"


class FormatError(ValueError):
    """Malformed or invalid file contents."""


def canonical(obj: Any) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Perm):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed JSON: {e}") from None


def _int(v: Any, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{what} must be an integer")
    return v


def _perm(images: Any, degree: int, what: str) -> Perm:
    if not isinstance(images, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in images):
        raise FormatError(f"{what} must be a list of integers")
    if len(images) != degree:
        raise FormatError(f"{what} has {len(images)} images, expected {degree}")
    if any(x < 0 or x >= degree for x in images):
        raise FormatError(f"{what} has a point out of range")
    if len(set(images)) != degree:
        raise FormatError(f"{what} is not a bijection")
    return Perm(images, check=False)


def _range(v: Any, degree: int, what: str) -> tuple[int, int]:
    if not isinstance(v, list) or len(v) != 2:
        raise FormatError(f"{what} must be [start, size]")
    s, n = _int(v[0], what), _int(v[1], what)
    if s < 0 or n < 1 or s + n > degree:
        raise FormatError(f"{what} lies outside the domain")
    return s, n


# --- groups ----------------------------------------------------------------------


@dataclass
class GroupFile:
    """Generators on ``{0, …, degree-1}``.

    ``factors`` lists the point sets of the plinth's factor domains, which must
    be consecutive intervals covering a prefix ``[0, d)``. ``coords`` and
    ``omega`` locate the coordinate copies and the product set after it.
    """

    name: str
    degree: int
    generators: list[Perm]
    factors: list[list[int]] | None = None
    coords: list[tuple[int, int]] | None = None
    omega: tuple[int, int] | None = None
    provenance: str | None = None

    def group(self) -> PermGroup:
        return PermGroup(self.generators, degree=self.degree, name=self.name or None)

    def factor_ranges(self) -> list[tuple[int, int]]:
        return [(f[0], len(f)) for f in self.factors or []]

    def to_dict(self) -> dict:
        d: dict = {
            "format": GROUP_FORMAT,
            "name": self.name,
            "degree": self.degree,
            "points": "0-based",
            "generators": [g.tolist() for g in self.generators],
        }
        if self.factors is not None:
            d["factors"] = self.factors
        if self.coords is not None or self.omega is not None:
            d["layout"] = {
                "coords": [list(r) for r in self.coords or []],
                "omega": list(self.omega) if self.omega is not None else None,
            }
        if self.provenance is not None:
            d["provenance"] = self.provenance
        return d


def group_from_dict(d: Any) -> GroupFile:
    if not isinstance(d, dict):
        raise FormatError("a group file must be a JSON object")
    fmt = d.get("format", GROUP_FORMAT)
    if fmt != GROUP_FORMAT:
        raise FormatError(f"unexpected format {fmt!r}")
    degree = _int(d.get("degree"), "degree")
    if degree < 1:
        raise FormatError("degree must be positive")
    if d.get("points", "0-based") != "0-based":
        raise FormatError("points must be '0-based'")
    gens_raw = d.get("generators")
    if not isinstance(gens_raw, list):
        raise FormatError("generators must be a list")
    gens = [_perm(g, degree, f"generator {i}") for i, g in enumerate(gens_raw)]
    factors = d.get("factors")
    if factors is not None:
        factors = _check_factors(factors, degree)
    coords = omega = None
    lay = d.get("layout")
    if lay is not None:
        if not isinstance(lay, dict):
            raise FormatError("layout must be an object")
        coords = [_range(r, degree, "coordinate range") for r in lay.get("coords", [])]
        if lay.get("omega") is not None:
            omega = _range(lay["omega"], degree, "omega range")
    name = d.get("name", "")
    if not isinstance(name, str):
        raise FormatError("name must be a string")
    prov = d.get("provenance")
    if prov is not None and not isinstance(prov, str):
        raise FormatError("provenance must be a string")
    return GroupFile(name, degree, gens, factors, coords, omega, prov)


def _check_factors(factors: Any, degree: int) -> list[list[int]]:
    if not isinstance(factors, list) or not factors:
        raise FormatError("factors must be a nonempty list of index lists")
    out = []
    nxt = 0
    for i, f in enumerate(factors):
        if not isinstance(f, list) or not f or any(isinstance(x, bool) or not isinstance(x, int) for x in f):
            raise FormatError(f"factor {i} must be a nonempty list of integers")
        if f != list(range(nxt, nxt + len(f))):
            raise FormatError("factor domains must be consecutive intervals starting at 0")
        nxt += len(f)
        out.append(list(f))
    if nxt > degree:
        raise FormatError("factor domains exceed the degree")
    return out


def parse_group_file(text: str) -> GroupFile:
    return group_from_dict(_load(text))


def emit_group_file(gf: GroupFile) -> str:
    return canonical(gf.to_dict())


def group_file_from_group(G: PermGroup, name: str = "", provenance: str | None = None) -> GroupFile:
    return GroupFile(name, G.degree, list(G.gens), provenance=provenance)


def setting_from_files(
    G: GroupFile,
    M: GroupFile,
    base_point: int | Sequence[int] = 0,
    G_omega: Sequence[Perm] | None = None,
    trusted: bool = False,
) -> Setting:
    """A :class:`Setting` from a group file and a plinth file with factor domains.

    Each plinth generator must move points of exactly one factor domain; the
    generators are grouped into factors that way.
    """
    if M.factors is None:
        raise FormatError("the plinth file needs a factors field")
    if M.degree != G.degree:
        raise FormatError("group and plinth have different degrees")
    ranges = M.factor_ranges()
    d = sum(n for _, n in ranges)
    fgens: list[list[Perm]] = [[] for _ in ranges]
    for i, g in enumerate(M.generators):
        moved = [j for j, (s, n) in enumerate(ranges) if (g.a[s : s + n] != np.arange(s, s + n)).any()]
        if len(moved) != 1:
            raise FormatError(f"plinth generator {i} moves {len(moved)} factor domains, expected 1")
        fgens[moved[0]].append(g)
    if any(not f for f in fgens):
        raise FormatError("a factor has no generators")
    coords = tuple(G.coords or M.coords or ())
    omega = G.omega if G.omega is not None else M.omega
    if omega is None and not coords and G.degree > d:
        omega = (d, G.degree - d)
    if omega is not None:
        size = omega[1]
    else:
        size = int(np.prod([n for _, n in coords])) if coords else 0
    layout = Layout(G.degree, tuple(ranges), coords, omega, size)
    return Setting(layout, G.generators, fgens, omega=base_point, G_omega_gens=G_omega, name=G.name, trusted=trusted)


# --- decompositions --------------------------------------------------------------


def decomposition_to_dict(E: CartesianDecomposition) -> dict:
    d: dict = {"format": DECOMPOSITION_FORMAT, "omega_size": E.omega_size}
    if E.partitions is not None:
        d["partitions"] = [P.labels.tolist() for P in E.partitions]
    else:
        d["coords"] = [list(r) for r in E.coords]
    return d


def decomposition_from_dict(d: Any) -> CartesianDecomposition:
    if not isinstance(d, dict) or d.get("format", DECOMPOSITION_FORMAT) != DECOMPOSITION_FORMAT:
        raise FormatError("not a decomposition file")
    n = _int(d.get("omega_size"), "omega_size")
    if "partitions" in d:
        parts = []
        for i, lab in enumerate(d["partitions"]):
            if not isinstance(lab, list) or len(lab) != n or any(isinstance(x, bool) or not isinstance(x, int) for x in lab):
                raise FormatError(f"partition {i} must list one integer label per point")
            parts.append(Partition(n, np.array(lab, dtype=np.int64)))
        return CartesianDecomposition(n, tuple(parts))
    if "coords" in d:
        big = 1 << 62
        return CartesianDecomposition(n, coords=tuple(_range(r, big, "coordinate range") for r in d["coords"]))
    raise FormatError("a decomposition needs partitions or coords")


def parse_decomposition(text: str) -> CartesianDecomposition:
    return decomposition_from_dict(_load(text))


def emit_decomposition(E: CartesianDecomposition) -> str:
    return canonical(decomposition_to_dict(E))


# --- embedding instances -----------------------------------------------------------


def instance_to_dict(inst: EmbeddingInstance) -> dict:
    S = inst.setting
    lay = S.layout
    G = GroupFile(S.name, lay.degree, list(S.G.gens), coords=list(lay.coords), omega=lay.omega)
    factors = [list(range(s, s + n)) for s, n in lay.factor_domains]
    M = GroupFile("plinth", lay.degree, [g for f in S.factor_gens for g in f], factors=factors)
    base = list(S.omega) if isinstance(S.omega, tuple) else S.omega
    stab = [g.tolist() for g in S.G_omega.gens] if not lay.materialized else None
    return {
        "format": INSTANCE_FORMAT,
        "example": inst.example,
        "group": G.to_dict(),
        "plinth": M.to_dict(),
        "base_point": base,
        "base_point_stabilizer": stab,
        "H": inst.H.to_dict(),
        "U": inst.U.to_dict(),
        "tags": inst.tags,
        "certificates": inst.certificates,
        "trusted": S.trusted,
    }


def _component(d: Any) -> Component:
    if not isinstance(d, dict) or d.get("kind") not in ("alt", "sym", "group"):
        raise FormatError("component must have kind alt, sym or group")
    n = _int(d.get("degree"), "component degree")
    gens = [_perm(g, n, "component generator") for g in d.get("generators", [])] if d["kind"] == "group" else []
    return Component(d["kind"], n, gens, d.get("tag"))


def instance_from_dict(d: Any) -> EmbeddingInstance:
    if not isinstance(d, dict) or d.get("format") != INSTANCE_FORMAT:
        raise FormatError("not an instance file")
    G = group_from_dict(d["group"])
    M = group_from_dict(d["plinth"])
    base = d.get("base_point", 0)
    if isinstance(base, list):
        base = tuple(_int(x, "base point") for x in base)
    else:
        base = _int(base, "base point")
    stab = d.get("base_point_stabilizer")
    stab_gens = None
    if stab is not None:
        dd = sum(len(f) for f in M.factors or [])
        stab_gens = [_perm(g, dd, "stabilizer generator") for g in stab]
    S = setting_from_files(G, M, base, stab_gens, trusted=bool(d.get("trusted", False)))
    return EmbeddingInstance(S, _component(d["H"]), _component(d["U"]), dict(d.get("tags", {})), dict(d.get("certificates", {})), d.get("example", ""))


def parse_instance(text: str) -> EmbeddingInstance:
    return instance_from_dict(_load(text))


def emit_instance(inst: EmbeddingInstance) -> str:
    return canonical(instance_to_dict(inst))


# --- reports ---------------------------------------------------------------------


def sha256_text(text: str | bytes) -> str:
    data = text.encode() if isinstance(text, str) else text
    return hashlib.sha256(data).hexdigest()


def input_hash(ref: str) -> str:
    """Hash of a file's bytes, or of the canonical catalog entry for a ``catalog:`` reference."""
    if ref.startswith("catalog:"):
        name = ref[len("catalog:") :].partition(".")[0]
        return sha256_text(canonical(catalog.entry(name)))
    return sha256_text(Path(ref).read_bytes())


@dataclass
class Report:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    results: Any = None
    budget: dict | None = None
    truncated: bool = False
    timing: float | None = None

    def to_dict(self) -> dict:
        d = {
            "format": REPORT_FORMAT,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "budget": self.budget,
            "truncated": self.truncated,
        }
        if self.timing is not None:
            d["timing_seconds"] = round(self.timing, 3)
        return d


def emit_report(report: Report) -> str:
    return canonical(report.to_dict())


def parse_report(text: str) -> dict:
    d = _load(text)
    if not isinstance(d, dict) or d.get("format") != REPORT_FORMAT:
        raise FormatError("not a report")
    return d
